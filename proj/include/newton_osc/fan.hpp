#pragma once

// Rational fans supported on the nonnegative orthant: normal fans, common
// refinement, simplicial and unimodular subdivision, and monomial charts.

#include <map>
#include <vector>

#include "newton_osc/geometry.hpp"
#include "newton_osc/newton.hpp"

namespace newton_osc::fan {

using geometry::Polyhedron;

// A cone given by its primitive generators, sorted lexicographically.
struct Cone {
  std::vector<ZVec> rays;
  int dim() const;
  friend bool operator==(const Cone&, const Cone&) = default;
  friend auto operator<=>(const Cone& a, const Cone& b) { return a.rays <=> b.rays; }
};

Cone make_cone(std::vector<ZVec> rays);

// A complete fan on R_+^n, stored through its maximal cones.
struct Fan {
  int n = 0;
  std::vector<Cone> cones;
  std::vector<ZVec> rays() const;
  // Every cone of the fan, maximal ones included.
  std::vector<Cone> all_cones() const;
  bool simplicial() const;
};

// Facet normals h of a full-dimensional cone, so that the cone is {x : <h, x> >= 0}.
std::vector<ZVec> cone_inequalities(const Cone& c, int n);
bool cone_contains(const std::vector<ZVec>& inequalities, const ZVec& x);

Fan orthant_fan(int n);
Fan normal_fan(const Polyhedron& P);
Fan common_refinement(const std::vector<Fan>& fans);

enum class RayOrder { Lex, ReverseLex };
// Pulling triangulation with a global ray order; adds no rays.
Fan simplicialize(const Fan& fan, RayOrder order = RayOrder::Lex);

enum class PivotRule { Default, MinCoordSum, MinLastCoefficient };
struct UnimodularResult {
  Fan fan;
  long long subdivisions = 0;
  bool unimodular = true;
};
// Stellar subdivision at parallelepiped points until every cone has |det| = 1.
UnimodularResult unimodularize(const Fan& simplicial, PivotRule rule = PivotRule::Default,
                               long long budget = 1000000);
// simplicialize followed by unimodularize; throws when the budget runs out.
Fan simplicialize_unimodular(const Fan& fan, RayOrder order = RayOrder::Lex,
                             PivotRule rule = PivotRule::Default);

long long cone_det(const Cone& c);

// min over the support of <a, alpha / p>.
Rat support_value(const newton::PowerData& f, const ZVec& a);

struct FaceConeMaps {
  // face index of P for the subset I, given as a bitmask over the cone rays
  std::map<unsigned, int> gammaOf;
  // subset I(face, cone) as a bitmask, for every face of P
  std::map<int, unsigned> IOf;
};
FaceConeMaps face_cone_maps(const Polyhedron& P, const Cone& sigma);
// Face of P cut out by the rays selected by mask.
int gamma_of(const Polyhedron& P, const Cone& sigma, unsigned mask);
unsigned i_of(const Polyhedron& P, const Cone& sigma, int face);

struct ChartMap {
  Cone cone;
  std::vector<ZVec> exponentMatrix;  // row j, column k: exponent of y_k in x_j
  ZVec jacobianExponents;            // |a^k| - 1
};
ChartMap chart(const Cone& sigma);

// The chart sends {y_k = 0, k in I} to the origin.
bool chart_collapses(const Cone& sigma, unsigned mask);
bool compactness_criterion(const Polyhedron& P, const Cone& sigma, unsigned mask);

struct FanCheck {
  int nonUnimodular = 0;
  int notRefining = 0;
  int uncovered = 0;
  int overlapping = 0;
  int badWalls = 0;
  bool ok() const { return nonUnimodular + notRefining + uncovered + overlapping + badWalls == 0; }
};
// Determinants, containment in the given coarser fans, random-ray covering and wall matching.
FanCheck check_fan(const Fan& fan, const std::vector<Fan>& coarser, int randomRays, unsigned seed);

}  // namespace newton_osc::fan
