#pragma once

// Invariants of a phase/weight pair: distance, contact faces, multiplicity,
// principal faces and their pairing.

#include <vector>

#include "newton_osc/geometry.hpp"
#include "newton_osc/newton.hpp"

namespace newton_osc::pair {

using geometry::Polyhedron;
using newton::PowerData;

struct PrincipalPair {
  int faceF = 0;  // face of the phase polyhedron
  int faceG = 0;  // matching face of the weight polyhedron
};

struct PairReport {
  Rat d;
  int m = 0;
  Polyhedron phase;   // Newton polyhedron of f
  Polyhedron weight;  // Newton polyhedron of g
  std::vector<int> contactF;  // faces of f whose relative interior meets the scaled weight polyhedron
  std::vector<int> contactG;  // faces of g whose scaled relative interior touches the boundary of f
  std::vector<int> principalF;
  std::vector<int> principalG;
  std::vector<PrincipalPair> pairing;
};

// max over facets (a, l) with l != 0 of l / (l_g(a) + |a|).
Rat newton_distance(const Polyhedron& phase, const Polyhedron& weight);
Rat newton_distance(const PowerData& f, const PowerData& g);

// The map beta -> d (beta + 1) applied to the weight polyhedron.
Polyhedron contact_image(const Polyhedron& weight, const Rat& d);

struct ContactSets {
  std::vector<int> phaseFaces;
  std::vector<int> weightFaces;
};
ContactSets contact_sets(const Polyhedron& phase, const Polyhedron& weight, const Rat& d);

// The face of the weight polyhedron sent into the given phase face.
int paired_weight_face(const Polyhedron& phase, int phaseFace, const Polyhedron& weight, const Rat& d);

PairReport newton_multiplicity(const PowerData& f, const PowerData& g);

struct UnweightedMetrics {
  Rat d;
  int m = 0;
  int principalFace = 0;
  PowerData principalPart;
};
UnweightedMetrics unweighted_metrics(const PowerData& f);

struct SymmetryReport {
  Rat dfg;  // d(x^1 f, g)
  Rat dgf;  // d(x^1 g, f)
  Rat product;
  bool equalityCase = false;
  int mfg = 0;  // multiplicity of (x^1 f, g)
  int mgf = 0;
};
SymmetryReport symmetry_check(const PowerData& f, const PowerData& g);
// Exists d with P = d Q, compared facet by facet.
bool scaled_copy(const Polyhedron& P, const Polyhedron& Q);

struct PuiseuxReduction {
  PowerData reduced;      // exponents read on the cleared lattice
  ZVec weightExponent;    // p - 1
  PowerData weight;       // the monomial y^(p-1)
  long long jacobian = 1; // prod p_j
};
PuiseuxReduction puiseux_reduce(const PowerData& f);

}  // namespace newton_osc::pair
