#pragma once

// Unbounded lattice polyhedra P = conv(generators) + R_+^n for n <= 4, with
// irredundant facet lists and complete face lattices, all in exact arithmetic.

#include <memory>
#include <optional>
#include <vector>

#include "newton_osc/rational.hpp"

namespace newton_osc::geometry {

constexpr int kMaxDim = 4;

// Halfspace <a, x> >= l with a primitive and nonnegative.
struct ValidPair {
  ZVec a;
  Rat l;
  friend bool operator==(const ValidPair&, const ValidPair&) = default;
};

struct Face {
  std::vector<int> activeFacets;   // sorted facet indices whose hyperplane contains the face
  std::vector<int> vertices;       // indices into Polyhedron::vertices()
  std::vector<int> zeroWeightSet;  // coordinates j with e_j in the recession cone of the face
  int dim = 0;
  bool compact = false;
  // A valid pair defining exactly this face: the sum of the active facet pairs.
  ValidPair defining;
};

class Polyhedron {
 public:
  int n() const { return n_; }
  const std::vector<QVec>& generators() const { return generators_; }
  const std::vector<QVec>& vertices() const { return vertices_; }
  const std::vector<ValidPair>& facets() const { return facets_; }
  const std::vector<Face>& faces() const { return faces_; }
  int dim() const { return n_; }

  // Index of the face equal to P itself.
  int whole() const { return static_cast<int>(faces_.size()) - 1; }
  bool contains(const QVec& x) const;
  // min over P of <a, x>; always attained at a vertex since a >= 0.
  Rat support_value(const ZVec& a) const;
  // Face with the given vertex set and recession coordinates, if any.
  std::optional<int> find_face(const std::vector<int>& vertices, const std::vector<int>& rays) const;
  // The face P ∩ H(a, support_value(a)) for a >= 0.
  int exposed_face(const ZVec& a) const;
  bool point_in_face(const QVec& x, int face) const;

 private:
  friend Polyhedron build_polyhedron(const std::vector<QVec>&);
  friend Polyhedron scale_translate(const Polyhedron&, const Rat&, const QVec&);
  void enumerate_faces();

  int n_ = 0;
  std::vector<QVec> generators_;
  std::vector<QVec> vertices_;
  std::vector<ValidPair> facets_;
  std::vector<Face> faces_;
};

using PolyPtr = std::shared_ptr<const Polyhedron>;

// Extreme rays of the pointed cone {z : <row, z> >= 0 for all rows} in Z^dim,
// by the double description method. Rays are primitive.
std::vector<ZVec> extreme_rays(const std::vector<ZVec>& rows, int dim);

Polyhedron build_polyhedron(const std::vector<QVec>& generators);

// Index of tau_P(alpha), the smallest face containing a boundary point.
int smallest_face(const Polyhedron& P, const QVec& alpha);

// d * (P + b); facets map as l -> d (l + <a, b>).
Polyhedron scale_translate(const Polyhedron& P, const Rat& d, const QVec& b);

// Exact test of relint(face) ∩ Q ≠ ∅ by Fourier–Motzkin elimination.
bool relint_intersects(const Polyhedron& P, int face, const Polyhedron& Q);
// A null Q stands for the empty set.
bool relint_intersects(const Polyhedron& P, int face, const Polyhedron* Q);

// A linear constraint <c, x> >= b, or > b when strict.
struct LinearConstraint {
  QVec c;
  Rat b;
  bool strict = false;
};

// Feasibility of a system of equalities and (strict) inequalities over Q^n.
bool feasible(int n, const std::vector<LinearConstraint>& inequalities,
              const std::vector<std::pair<QVec, Rat>>& equalities);

}  // namespace newton_osc::geometry
