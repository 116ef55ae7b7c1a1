#include <random>

#include "doctest.h"
#include "newton_osc/pair.hpp"
#include "oracles.hpp"

using namespace newton_osc;
using namespace newton_osc::pair;
using newton::PowerData;

TEST_CASE("distance with a monomial weight against a one-sided phase") {
  for (int p = 1; p <= 3; ++p) {
    auto r = newton_multiplicity(PowerData::monomial({4, 0}), PowerData::monomial({2LL * p, 2LL * p}));
    CHECK(r.d == Rat(4, 2 * p + 1));
    CHECK(r.m == 1);
    REQUIRE(r.pairing.size() == 1);
    const auto& face = r.phase.faces()[r.pairing[0].faceF];
    CHECK(face.dim == 1);
    CHECK_FALSE(face.compact);
  }
}

TEST_CASE("three dimensional monomials") {
  auto r = newton_multiplicity(PowerData::monomial({4, 4, 4}), PowerData::monomial({4, 4, 2}));
  CHECK(r.d == Rat(4, 3));
  CHECK(r.m == 1);
  auto u = newton_multiplicity(PowerData::monomial({4, 4, 4}), PowerData::unit(3));
  CHECK(u.d == Rat(4));
  CHECK(u.m == 3);
}

TEST_CASE("unweighted metrics") {
  auto f = PowerData::monomial({2, 0});
  f.add_flat({0, 0}, 1, Rat(1));
  auto u = unweighted_metrics(f);
  CHECK(u.d == Rat(2));
  CHECK(u.m == 1);
  CHECK(u.principalPart.terms.size() == 1);
  CHECK(u.principalPart.terms.at({2, 0}) == Rat(1));
  CHECK(u.principalPart.flat.empty());
  CHECK(newton_distance(PowerData::monomial({1, 1}), PowerData::monomial({0, 2})) == Rat(1));
}

TEST_CASE("distance agrees with the linear programming oracle") {
  std::mt19937 rng(2024);
  for (int it = 0; it < 150; ++it) {
    int n = 2 + it % 2;
    auto f = oracle::random_polynomial(rng, n, 6, 8, false);
    auto g = oracle::random_polynomial(rng, n, 6, 8, true);
    CAPTURE(f.str());
    CAPTURE(g.str());
    CHECK(newton_distance(f, g) == oracle::distance(f, g));
  }
}

TEST_CASE("symmetry product and its equality case") {
  std::mt19937 rng(99);
  int equalities = 0;
  for (int it = 0; it < 100; ++it) {
    int n = 2 + it % 2;
    auto f = oracle::random_polynomial(rng, n, 4, 6, true);
    PowerData g(n);
    if (it % 4 == 0) {
      // x^1 g = k x^1 f on the level of polyhedra
      long long k = 2 + it % 3;
      for (const auto& [e, c] : f.terms) {
        ZVec s(n);
        for (int j = 0; j < n; ++j) s[j] = k * (e[j] + 1) - 1;
        g.add(s, c);
      }
    } else {
      g = oracle::random_polynomial(rng, n, 4, 6, true);
    }
    auto s = symmetry_check(f, g);
    CHECK(s.product >= Rat(1));
    auto Pf = newton::newton_polyhedron(newton::times_coordinate_monomial(f));
    auto Pg = newton::newton_polyhedron(newton::times_coordinate_monomial(g));
    bool scaled = scaled_copy(Pf, Pg);
    CHECK((s.product == Rat(1)) == scaled);
    CHECK(s.equalityCase == scaled);
    if (scaled) {
      ++equalities;
      CHECK(s.mfg == n);
    }
  }
  CHECK(equalities >= 25);
}

TEST_CASE("Puiseux reduction keeps the distance") {
  PowerData f(2);
  f.denom = {2, 3};
  f.add({3, 0}, Rat(1));
  f.add({0, 2}, Rat(1));
  auto r = puiseux_reduce(f);
  CHECK(r.weightExponent == ZVec{1, 2});
  CHECK(r.jacobian == 6);
  CHECK(newton_distance(f, PowerData::unit(2)) == newton_distance(r.reduced, r.weight));
}

TEST_CASE("contact image shifts by one and scales") {
  auto W = newton::newton_polyhedron(PowerData::monomial({1, 2}));
  auto C = contact_image(W, Rat(2));
  CHECK(C.vertices().size() == 1);
  CHECK(C.vertices()[0] == QVec{Rat(4), Rat(6)});
}
