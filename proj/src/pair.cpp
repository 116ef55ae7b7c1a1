#include "newton_osc/pair.hpp"

#include <algorithm>

namespace newton_osc::pair {

using geometry::LinearConstraint;

Rat newton_distance(const Polyhedron& phase, const Polyhedron& weight) {
  std::optional<Rat> best;
  for (const auto& facet : phase.facets()) {
    if (facet.l.is_zero()) continue;
    Rat denom = weight.support_value(facet.a) + Rat(sum_of(facet.a));
    Rat r = facet.l / denom;
    if (!best || r > *best) best = r;
  }
  if (!best) throw Error(ErrorCode::PhaseWithoutFiniteDistance, "phase does not vanish at the origin");
  return *best;
}

Rat newton_distance(const PowerData& f, const PowerData& g) {
  return newton_distance(newton::newton_polyhedron(f), newton::newton_polyhedron(g));
}

Polyhedron contact_image(const Polyhedron& weight, const Rat& d) {
  return geometry::scale_translate(weight, d, QVec(weight.n(), Rat(1)));
}

namespace {

// relint(face of P) together with equality on one facet hyperplane of Q and membership in Q.
bool relint_meets_boundary(const Polyhedron& P, int face, const Polyhedron& Q) {
  const auto& F = P.faces()[face];
  std::vector<LinearConstraint> ineq;
  std::vector<std::pair<QVec, Rat>> eq;
  for (size_t i = 0; i < P.facets().size(); ++i) {
    const auto& f = P.facets()[i];
    if (std::binary_search(F.activeFacets.begin(), F.activeFacets.end(), static_cast<int>(i)))
      eq.emplace_back(to_q(f.a), f.l);
    else
      ineq.push_back(LinearConstraint{to_q(f.a), f.l, true});
  }
  for (const auto& f : Q.facets()) ineq.push_back(LinearConstraint{to_q(f.a), f.l, false});
  for (const auto& f : Q.facets()) {
    auto eq2 = eq;
    eq2.emplace_back(to_q(f.a), f.l);
    if (geometry::feasible(P.n(), ineq, eq2)) return true;
  }
  return false;
}

}  // namespace

ContactSets contact_sets(const Polyhedron& phase, const Polyhedron& weight, const Rat& d) {
  ContactSets out;
  Polyhedron image = contact_image(weight, d);
  for (int i = 0; i < static_cast<int>(phase.faces().size()); ++i) {
    if (i == phase.whole()) continue;
    if (geometry::relint_intersects(phase, i, image)) out.phaseFaces.push_back(i);
  }
  // Faces are shared between weight and image, so test on the image.
  for (int i = 0; i < static_cast<int>(image.faces().size()); ++i)
    if (relint_meets_boundary(image, i, phase)) out.weightFaces.push_back(i);
  return out;
}

int paired_weight_face(const Polyhedron& phase, int phaseFace, const Polyhedron& weight, const Rat& d) {
  const auto& F = phase.faces().at(phaseFace);
  std::vector<int> verts, rays;
  for (size_t v = 0; v < weight.vertices().size(); ++v) {
    bool on = true;
    for (int i : F.activeFacets) {
      const auto& f = phase.facets()[i];
      Rat target = f.l / d - Rat(sum_of(f.a));
      if (dot(f.a, weight.vertices()[v]) != target) on = false;
    }
    if (on) verts.push_back(static_cast<int>(v));
  }
  for (int j = 0; j < weight.n(); ++j) {
    bool zero = true;
    for (int i : F.activeFacets)
      if (phase.facets()[i].a[j] != 0) zero = false;
    if (zero) rays.push_back(j);
  }
  if (verts.empty()) throw Error(ErrorCode::InvalidInput, "phase face is not a contact face");
  auto face = weight.find_face(verts, rays);
  if (!face) throw Error(ErrorCode::InvalidInput, "preimage is not a face of the weight polyhedron");
  return *face;
}

PairReport newton_multiplicity(const PowerData& f, const PowerData& g) {
  PairReport r;
  r.phase = newton::newton_polyhedron(f);
  r.weight = newton::newton_polyhedron(g);
  r.d = newton_distance(r.phase, r.weight);
  ContactSets cs = contact_sets(r.phase, r.weight, r.d);
  r.contactF = cs.phaseFaces;
  r.contactG = cs.weightFaces;
  const int n = r.phase.n();
  for (int i : r.contactF) r.m = std::max(r.m, n - r.phase.faces()[i].dim);
  for (int i : r.contactF) {
    if (n - r.phase.faces()[i].dim != r.m) continue;
    r.principalF.push_back(i);
    int gface = paired_weight_face(r.phase, i, r.weight, r.d);
    r.principalG.push_back(gface);
    r.pairing.push_back(PrincipalPair{i, gface});
  }
  return r;
}

UnweightedMetrics unweighted_metrics(const PowerData& f) {
  UnweightedMetrics u;
  Polyhedron P = newton::newton_polyhedron(f);
  std::optional<Rat> best;
  for (const auto& facet : P.facets()) {
    if (facet.l.is_zero()) continue;
    Rat r = facet.l / Rat(sum_of(facet.a));
    if (!best || r > *best) best = r;
  }
  if (!best) throw Error(ErrorCode::PhaseWithoutFiniteDistance, "phase does not vanish at the origin");
  u.d = *best;
  u.principalFace = geometry::smallest_face(P, QVec(f.n, u.d));
  u.m = f.n - P.faces()[u.principalFace].dim;
  u.principalPart = newton::gamma_part(f, P, u.principalFace).data;
  return u;
}

bool scaled_copy(const Polyhedron& P, const Polyhedron& Q) {
  if (P.facets().size() != Q.facets().size()) return false;
  std::optional<Rat> ratio;
  for (size_t i = 0; i < P.facets().size(); ++i) {
    const auto& a = P.facets()[i];
    const auto& b = Q.facets()[i];
    if (a.a != b.a) return false;
    if (a.l.is_zero() || b.l.is_zero()) {
      if (a.l != b.l) return false;
      continue;
    }
    Rat r = a.l / b.l;
    if (ratio && *ratio != r) return false;
    ratio = r;
  }
  return true;
}

SymmetryReport symmetry_check(const PowerData& f, const PowerData& g) {
  SymmetryReport s;
  PowerData F = newton::times_coordinate_monomial(f);
  PowerData G = newton::times_coordinate_monomial(g);
  PairReport fg = newton_multiplicity(F, g);
  PairReport gf = newton_multiplicity(G, f);
  s.dfg = fg.d;
  s.dgf = gf.d;
  s.mfg = fg.m;
  s.mgf = gf.m;
  s.product = s.dfg * s.dgf;
  s.equalityCase = scaled_copy(fg.phase, gf.phase);
  return s;
}

PuiseuxReduction puiseux_reduce(const PowerData& f) {
  PuiseuxReduction r;
  r.reduced = f;
  r.reduced.denom.assign(f.n, 1);
  r.weightExponent.resize(f.n);
  for (int j = 0; j < f.n; ++j) {
    r.weightExponent[j] = f.denom[j] - 1;
    r.jacobian = checked_mul(r.jacobian, f.denom[j]);
  }
  r.weight = PowerData::monomial(r.weightExponent);
  return r;
}

}  // namespace newton_osc::pair
