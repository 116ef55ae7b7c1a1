#include <random>

#include "doctest.h"
#include "newton_osc/newton.hpp"

using namespace newton_osc;
using namespace newton_osc::newton;

TEST_CASE("gamma part on the diagonal edge") {
  auto f = PowerData::polynomial(2, {{{4, 0}, Rat(1)}, {{0, 4}, Rat(1)}, {{3, 3}, Rat(5)}});
  auto P = newton_polyhedron(f);
  auto part = gamma_part(f, P, P.exposed_face({1, 1}));
  CHECK(part.data.terms.size() == 2);
  CHECK(part.data.terms.count({4, 0}) == 1);
  CHECK(part.data.terms.count({3, 3}) == 0);
}

TEST_CASE("convenience and the structural flag") {
  CHECK(is_convenient(PowerData::polynomial(2, {{{4, 0}, Rat(1)}, {{0, 4}, Rat(1)}})));
  CHECK_FALSE(is_convenient(PowerData::monomial({4, 0})));
  auto g = PowerData::monomial({2, 2});
  CHECK(hat_e_flag(g));
  g.add_flat({3, 3}, 0, Rat(1));
  CHECK(hat_e_flag(g));
  g.add_flat({1, 1}, 0, Rat(1));
  CHECK_FALSE(hat_e_flag(g));
  PowerData flat(2);
  flat.add_flat({0, 0}, 1, Rat(1));
  CHECK(is_flat(flat));
  CHECK_FALSE(hat_e_flag(flat));
}

TEST_CASE("nondegeneracy certificates") {
  // (x1^2 - x2^2)^2
  auto f = PowerData::polynomial(2, {{{4, 0}, Rat(1)}, {{2, 2}, Rat(-2)}, {{0, 4}, Rat(1)}});
  auto c = nondegeneracy_certificate(f);
  CHECK(c.verdict == NondegVerdict::Degenerate);
  CHECK(c.method == NondegMethod::Exact2D);
  CHECK(nondegeneracy_certificate(PowerData::polynomial(2, {{{4, 0}, Rat(1)}, {{0, 4}, Rat(1)}})).verdict ==
        NondegVerdict::Nondegenerate);
  // x1^2 - x2^2 has simple roots on the edge
  CHECK(nondegeneracy_certificate(PowerData::polynomial(2, {{{2, 0}, Rat(1)}, {{0, 2}, Rat(-1)}})).verdict ==
        NondegVerdict::Nondegenerate);
  auto three = nondegeneracy_certificate(PowerData::polynomial(3, {{{2, 0, 0}, Rat(1)}, {{0, 2, 0}, Rat(1)}, {{0, 0, 2}, Rat(1)}}));
  CHECK(three.method == NondegMethod::Sampling);
  CHECK(three.verdict != NondegVerdict::Degenerate);
}

TEST_CASE("Sturm root counting") {
  UPoly p{{Rat(-2), Rat(0), Rat(1)}};  // x^2 - 2
  CHECK(count_real_roots(p, std::nullopt, std::nullopt) == 2);
  CHECK(count_real_roots(p, Rat(0), std::nullopt) == 1);
  CHECK(count_real_roots(p, Rat(2), Rat(3)) == 0);
  auto roots = real_roots(p);
  REQUIRE(roots.size() == 2);
  CHECK(roots[1] == doctest::Approx(1.41421356237).epsilon(1e-9));
  UPoly sq{{Rat(1), Rat(-2), Rat(1)}};  // (x - 1)^2
  CHECK(poly_gcd(sq, sq.derivative()).degree() == 1);
}

TEST_CASE("sign predicates") {
  CHECK(one_signed(PowerData::polynomial(2, {{{2, 0}, Rat(1)}, {{0, 4}, Rat(3)}})) == Ternary::Holds);
  CHECK(one_signed(PowerData::monomial({1, 1})) == Ternary::Fails);
  CHECK(one_signed(PowerData::polynomial(2, {{{2, 0}, Rat(1)}, {{0, 2}, Rat(-1)}})) == Ternary::Fails);
  CHECK(nonvanishing_off_axes(PowerData::monomial({1, 1})) == Ternary::Holds);
  CHECK(nonvanishing_off_axes(PowerData::polynomial(2, {{{2, 0}, Rat(1)}, {{0, 2}, Rat(-1)}})) == Ternary::Fails);
  CHECK(nonvanishing_off_axes(PowerData::polynomial(2, {{{2, 0}, Rat(1)}, {{0, 2}, Rat(1)}})) == Ternary::Holds);
}

TEST_CASE("reflection and permutation act on coefficients and exponents") {
  auto f = PowerData::polynomial(2, {{{3, 0}, Rat(1)}, {{1, 2}, Rat(2)}});
  auto r = reflect(f, {-1, 1});
  CHECK(r.terms.at({3, 0}) == Rat(-1));
  CHECK(r.terms.at({1, 2}) == Rat(-2));
  auto p = permute(f, {1, 0});
  CHECK(p.terms.count({0, 3}) == 1);
  CHECK(p.terms.count({2, 1}) == 1);
  std::vector<double> x{0.3, -0.7};
  CHECK(p.eval({x[1], x[0]}) == doctest::Approx(f.eval(x)));
}

TEST_CASE("evaluation with flat markers stays below the marker-free value for small arguments") {
  auto g = PowerData::monomial({2, 2});
  g.add_flat({0, 0}, 1, Rat(1));
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x{u(rng), u(rng)};
    double with = g.eval(x), without = g.eval(x, false);
    CHECK(with >= without);
    CHECK(with - without <= std::exp(-1.0 / (0.09)) + 1e-300);
  }
}

TEST_CASE("fractional exponents") {
  PowerData f(2);
  f.denom = {2, 1};
  f.add({1, 2}, Rat(1));
  CHECK(f.has_fractional_exponents());
  CHECK(f.exponent({1, 2}) == QVec{Rat(1, 2), Rat(2)});
  auto xf = times_coordinate_monomial(f);
  CHECK(xf.terms.count({3, 3}) == 1);
}
