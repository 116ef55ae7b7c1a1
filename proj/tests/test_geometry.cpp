#include <random>

#include "doctest.h"
#include "newton_osc/geometry.hpp"
#include "oracles.hpp"

using namespace newton_osc;
using namespace newton_osc::geometry;

namespace {
Polyhedron from_ints(const std::vector<ZVec>& pts) {
  std::vector<QVec> g;
  for (const auto& p : pts) g.push_back(to_q(p));
  return build_polyhedron(g);
}
}  // namespace

TEST_CASE("polyhedron of x1^4 + x2^4") {
  auto P = from_ints({{4, 0}, {0, 4}});
  CHECK(P.vertices().size() == 2);
  CHECK(P.facets().size() == 3);
  CHECK(P.support_value({1, 1}) == Rat(4));
  CHECK(P.support_value({1, 0}) == Rat(0));
  CHECK(P.contains({Rat(2), Rat(2)}));
  CHECK_FALSE(P.contains({Rat(1), Rat(2)}));
  int edge = P.exposed_face({1, 1});
  CHECK(P.faces()[edge].dim == 1);
  CHECK(P.faces()[edge].compact);
  CHECK(smallest_face(P, {Rat(2), Rat(2)}) == edge);
}

TEST_CASE("monomial polyhedron in three variables") {
  auto P = from_ints({{4, 4, 4}});
  CHECK(P.vertices().size() == 1);
  CHECK(P.facets().size() == 3);
  // faces: vertex, three edges, three 2-faces, P itself
  CHECK(P.faces().size() == 8);
}

TEST_CASE("extreme rays of the orthant and of a wedge") {
  auto rays = extreme_rays({{1, 0}, {0, 1}}, 2);
  CHECK(rays.size() == 2);
  auto wedge = extreme_rays({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}}, 3);
  CHECK(wedge.size() == 4);
}

TEST_CASE("support value agrees with a brute-force minimum") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> ex(0, 8), cnt(1, 6), w(0, 5);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + it % 2;
    std::vector<ZVec> pts(cnt(rng), ZVec(n));
    for (auto& p : pts)
      for (auto& x : p) x = ex(rng);
    auto P = from_ints(pts);
    ZVec a(n);
    for (auto& x : a) x = w(rng);
    Rat brute;
    bool first = true;
    for (const auto& p : pts) {
      Rat v(dot(a, p));
      if (first || v < brute) brute = v;
      first = false;
    }
    CHECK(P.support_value(a) == brute);
    for (const auto& p : pts) CHECK(P.contains(to_q(p)));
    for (const auto& v : P.vertices()) {
      for (const auto& F : P.facets()) CHECK(dot(F.a, v) >= F.l);
    }
  }
}

TEST_CASE("scale and translate moves facets") {
  auto P = from_ints({{2, 0}, {0, 2}});
  auto Q = scale_translate(P, Rat(2), {Rat(1), Rat(1)});
  CHECK(Q.support_value({1, 1}) == Rat(2) * (Rat(2) + Rat(2)));
}

TEST_CASE("relative interior intersection") {
  auto P = from_ints({{4, 0}, {0, 4}});
  int edge = P.exposed_face({1, 1});
  auto Q = from_ints({{2, 2}});
  CHECK(relint_intersects(P, edge, Q));
  auto R = from_ints({{4, 1}});
  CHECK_FALSE(relint_intersects(P, edge, R));
  CHECK_FALSE(relint_intersects(P, edge, nullptr));
}

TEST_CASE("exact feasibility with strict constraints") {
  // x > 0, y > 0, x + y = 1 is feasible; x > 1, x + y = 1, y >= 0 is not.
  std::vector<LinearConstraint> ok{{{Rat(1), Rat(0)}, Rat(0), true}, {{Rat(0), Rat(1)}, Rat(0), true}};
  CHECK(feasible(2, ok, {{{Rat(1), Rat(1)}, Rat(1)}}));
  std::vector<LinearConstraint> bad{{{Rat(1), Rat(0)}, Rat(1), true}, {{Rat(0), Rat(1)}, Rat(0), false}};
  CHECK_FALSE(feasible(2, bad, {{{Rat(1), Rat(1)}, Rat(1)}}));
}

TEST_CASE("dimension limit") { CHECK_THROWS_AS(from_ints({{1, 1, 1, 1, 1}}), Error); }
