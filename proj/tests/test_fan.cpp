#include <random>

#include "doctest.h"
#include "newton_osc/fan.hpp"
#include "oracles.hpp"

using namespace newton_osc;
using namespace newton_osc::fan;
using newton::PowerData;

TEST_CASE("normal fan of x1^4 + x2^4") {
  auto P = newton::newton_polyhedron(PowerData::polynomial(2, {{{4, 0}, Rat(1)}, {{0, 4}, Rat(1)}}));
  auto F = normal_fan(P);
  CHECK(F.cones.size() == 2);
  auto rays = F.rays();
  CHECK(std::find(rays.begin(), rays.end(), ZVec{1, 1}) != rays.end());
}

TEST_CASE("unimodular refinement of a cone with determinant 3") {
  Fan F;
  F.n = 2;
  F.cones = {make_cone({{1, 0}, {1, 3}}), make_cone({{1, 3}, {0, 1}})};
  CHECK(cone_det(F.cones[0]) == 3);
  auto U = simplicialize_unimodular(F);
  for (const auto& c : U.cones) CHECK(std::llabs(cone_det(c)) == 1);
  CHECK(check_fan(U, {F}, 2000, 5).ok());
}

TEST_CASE("chart exponents and Jacobian") {
  auto c = make_cone({{1, 1}, {1, 2}});
  auto ch = chart(c);
  // x_j = prod_k y_k^(a^k_j)
  CHECK(ch.exponentMatrix[0] == ZVec{1, 1});
  CHECK(ch.exponentMatrix[1] == ZVec{1, 2});
  CHECK(ch.jacobianExponents == ZVec{1, 2});
  CHECK(chart_collapses(c, 1u));
  CHECK(chart_collapses(c, 2u));
}

TEST_CASE("refined fans of random pairs are unimodular and cover the orthant") {
  std::mt19937 rng(17);
  for (int it = 0; it < 30; ++it) {
    int n = 2 + it % 2;
    auto f = oracle::random_polynomial(rng, n, 5, 6, false);
    auto g = oracle::random_polynomial(rng, n, 5, 6, true);
    auto Pf = newton::newton_polyhedron(f), Pg = newton::newton_polyhedron(g);
    auto Nf = normal_fan(Pf), Ng = normal_fan(Pg);
    auto R = common_refinement({Nf, Ng});
    auto U = simplicialize_unimodular(R);
    auto check = check_fan(U, {Nf, Ng}, 2000, static_cast<unsigned>(it));
    CAPTURE(f.str());
    CAPTURE(g.str());
    CHECK(check.ok());
    for (const auto& c : U.cones) {
      // the face selected by all rays of a cone is the one the cone's interior exposes
      ZVec inner(n, 0);
      for (const auto& r : c.rays)
        for (int j = 0; j < n; ++j) inner[j] += r[j];
      CHECK(gamma_of(Pf, c, (1u << c.rays.size()) - 1) == Pf.exposed_face(inner));
    }
  }
}

TEST_CASE("alternate ray orders give valid fans") {
  auto f = PowerData::polynomial(3, {{{4, 0, 0}, Rat(1)}, {{0, 3, 0}, Rat(1)}, {{0, 0, 5}, Rat(1)}, {{1, 1, 1}, Rat(1)}});
  auto Nf = normal_fan(newton::newton_polyhedron(f));
  for (auto order : {RayOrder::Lex, RayOrder::ReverseLex})
    for (auto rule : {PivotRule::Default, PivotRule::MinCoordSum, PivotRule::MinLastCoefficient}) {
      auto U = simplicialize_unimodular(Nf, order, rule);
      CHECK(check_fan(U, {Nf}, 3000, 1).ok());
    }
}
