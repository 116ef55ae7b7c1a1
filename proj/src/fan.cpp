#include "newton_osc/fan.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>

namespace newton_osc::fan {

int Cone::dim() const {
  std::vector<QVec> rows;
  for (const auto& r : rays) rows.push_back(to_q(r));
  return rank_of(rows);
}

Cone make_cone(std::vector<ZVec> rays) {
  for (auto& r : rays) r = primitive(r);
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return Cone{std::move(rays)};
}

std::vector<ZVec> Fan::rays() const {
  std::set<ZVec> s;
  for (const auto& c : cones) s.insert(c.rays.begin(), c.rays.end());
  return {s.begin(), s.end()};
}

bool Fan::simplicial() const {
  return std::all_of(cones.begin(), cones.end(),
                     [&](const Cone& c) { return static_cast<int>(c.rays.size()) == n; });
}

std::vector<ZVec> cone_inequalities(const Cone& c, int n) { return geometry::extreme_rays(c.rays, n); }

bool cone_contains(const std::vector<ZVec>& inequalities, const ZVec& x) {
  for (const auto& h : inequalities)
    if (dot(h, x) < 0) return false;
  return true;
}

namespace {

// Face lattice of a full-dimensional cone as subsets of its rays.
std::vector<std::vector<ZVec>> cone_faces(const Cone& c, int n) {
  auto ineq = cone_inequalities(c, n);
  std::vector<std::vector<ZVec>> facets;
  for (const auto& h : ineq) {
    std::vector<ZVec> f;
    for (const auto& r : c.rays)
      if (dot(h, r) == 0) f.push_back(r);
    facets.push_back(std::move(f));
  }
  std::set<std::vector<ZVec>> found{c.rays};
  std::deque<std::vector<ZVec>> queue{c.rays};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (const auto& f : facets) {
      std::vector<ZVec> meet;
      std::set_intersection(cur.begin(), cur.end(), f.begin(), f.end(), std::back_inserter(meet));
      if (meet.empty() || found.count(meet)) continue;
      found.insert(meet);
      queue.push_back(meet);
    }
  }
  return {found.begin(), found.end()};
}

int rank_of_rays(const std::vector<ZVec>& rays) {
  std::vector<QVec> rows;
  for (const auto& r : rays) rows.push_back(to_q(r));
  return rank_of(rows);
}

}  // namespace

std::vector<Cone> Fan::all_cones() const {
  std::set<Cone> out;
  for (const auto& c : cones) {
    if (static_cast<int>(c.rays.size()) == n) {
      // Simplicial: every subset is a face.
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<ZVec> sub;
        for (int k = 0; k < n; ++k)
          if (mask & (1u << k)) sub.push_back(c.rays[k]);
        out.insert(Cone{sub});
      }
    } else {
      for (auto& f : cone_faces(c, n)) out.insert(Cone{f});
    }
  }
  return {out.begin(), out.end()};
}

Fan orthant_fan(int n) {
  std::vector<ZVec> rays;
  for (int j = 0; j < n; ++j) {
    ZVec e(n, 0);
    e[j] = 1;
    rays.push_back(e);
  }
  return Fan{n, {make_cone(rays)}};
}

Fan normal_fan(const Polyhedron& P) {
  const int n = P.n();
  Fan fan{n, {}};
  for (size_t v = 0; v < P.vertices().size(); ++v) {
    std::vector<ZVec> rows;
    for (int j = 0; j < n; ++j) {
      ZVec e(n, 0);
      e[j] = 1;
      rows.push_back(e);
    }
    for (size_t w = 0; w < P.vertices().size(); ++w) {
      if (w == v) continue;
      QVec diff(n);
      for (int j = 0; j < n; ++j) diff[j] = P.vertices()[w][j] - P.vertices()[v][j];
      long long D = common_denominator(diff);
      ZVec row(n);
      for (int j = 0; j < n; ++j) row[j] = (diff[j] * Rat(D)).num();
      rows.push_back(primitive(row));
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    fan.cones.push_back(make_cone(geometry::extreme_rays(rows, n)));
  }
  std::sort(fan.cones.begin(), fan.cones.end());
  return fan;
}

Fan common_refinement(const std::vector<Fan>& fans) {
  if (fans.empty()) throw Error(ErrorCode::EmptyInput, "no fans to refine");
  Fan acc = fans.front();
  for (size_t k = 1; k < fans.size(); ++k) {
    const int n = acc.n;
    std::set<Cone> out;
    std::vector<std::vector<ZVec>> rhs;
    for (const auto& b : fans[k].cones) rhs.push_back(cone_inequalities(b, n));
    for (const auto& a : acc.cones) {
      auto ia = cone_inequalities(a, n);
      for (size_t bi = 0; bi < fans[k].cones.size(); ++bi) {
        std::vector<ZVec> rows = ia;
        rows.insert(rows.end(), rhs[bi].begin(), rhs[bi].end());
        auto rays = geometry::extreme_rays(rows, n);
        if (rank_of_rays(rays) == n) out.insert(make_cone(rays));
      }
    }
    acc = Fan{n, {out.begin(), out.end()}};
  }
  return acc;
}

Fan simplicialize(const Fan& fan, RayOrder order) {
  const int n = fan.n;
  std::vector<ZVec> rays = fan.rays();
  std::map<ZVec, int> rank;
  for (size_t i = 0; i < rays.size(); ++i)
    rank[rays[i]] = order == RayOrder::Lex ? static_cast<int>(i) : static_cast<int>(rays.size() - 1 - i);

  // Facets of every face, gathered from the lattices of the maximal cones.
  std::map<std::vector<ZVec>, std::vector<std::vector<ZVec>>> facetsOf;
  std::map<std::vector<ZVec>, int> dimOf;
  for (const auto& c : fan.cones) {
    if (static_cast<int>(c.rays.size()) == n) continue;
    auto faces = cone_faces(c, n);
    for (const auto& f : faces) dimOf.emplace(f, rank_of_rays(f));
    for (const auto& f : faces) {
      if (facetsOf.count(f)) continue;
      std::vector<std::vector<ZVec>> sub;
      for (const auto& g : faces)
        if (dimOf[g] == dimOf[f] - 1 && std::includes(f.begin(), f.end(), g.begin(), g.end()))
          sub.push_back(g);
      facetsOf.emplace(f, std::move(sub));
    }
  }

  std::map<std::vector<ZVec>, std::vector<std::vector<ZVec>>> memo;
  std::function<const std::vector<std::vector<ZVec>>&(const std::vector<ZVec>&)> pull =
      [&](const std::vector<ZVec>& face) -> const std::vector<std::vector<ZVec>>& {
    auto it = memo.find(face);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<ZVec>> out;
    int d = dimOf.count(face) ? dimOf[face] : rank_of_rays(face);
    if (static_cast<int>(face.size()) == d) {
      out.push_back(face);
    } else {
      ZVec apex = *std::min_element(face.begin(), face.end(),
                                    [&](const ZVec& a, const ZVec& b) { return rank[a] < rank[b]; });
      for (const auto& g : facetsOf.at(face)) {
        if (std::find(g.begin(), g.end(), apex) != g.end()) continue;
        for (auto s : pull(g)) {
          s.push_back(apex);
          std::sort(s.begin(), s.end());
          out.push_back(std::move(s));
        }
      }
    }
    return memo.emplace(face, std::move(out)).first->second;
  };

  std::set<Cone> result;
  for (const auto& c : fan.cones) {
    if (static_cast<int>(c.rays.size()) == n) {
      result.insert(c);
      continue;
    }
    for (const auto& s : pull(c.rays)) result.insert(Cone{s});
  }
  return Fan{n, {result.begin(), result.end()}};
}

long long cone_det(const Cone& c) {
  long long d = det_int(c.rays);
  return d < 0 ? -d : d;
}

namespace {

// Coefficients lambda_i * det(R) of x in the basis given by the rays.
ZVec cramer(const std::vector<ZVec>& rays, const ZVec& x) {
  ZVec out(rays.size());
  for (size_t i = 0; i < rays.size(); ++i) {
    auto m = rays;
    m[i] = x;
    out[i] = det_int(m);
  }
  return out;
}

// Nonzero lattice points sum k_i r_i / D of the half-open parallelepiped, as k vectors.
std::vector<ZVec> parallelepiped(const std::vector<ZVec>& rays) {
  const size_t n = rays.size();
  long long det = det_int(rays);
  long long D = det < 0 ? -det : det;
  std::vector<ZVec> gens;
  for (size_t j = 0; j < n; ++j) {
    ZVec e(n, 0);
    e[j] = 1;
    ZVec k = cramer(rays, e);
    for (auto& x : k) {
      x = (det < 0 ? -x : x) % D;
      if (x < 0) x += D;
    }
    gens.push_back(k);
  }
  std::set<ZVec> seen{ZVec(n, 0)};
  std::deque<ZVec> queue{ZVec(n, 0)};
  while (!queue.empty()) {
    ZVec cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      ZVec nx(n);
      for (size_t i = 0; i < n; ++i) nx[i] = (cur[i] + g[i]) % D;
      if (seen.insert(nx).second) queue.push_back(nx);
    }
  }
  std::vector<ZVec> out;
  for (const auto& k : seen)
    if (std::any_of(k.begin(), k.end(), [](long long x) { return x != 0; })) out.push_back(k);
  return out;
}

ZVec point_of(const std::vector<ZVec>& rays, const ZVec& k) {
  const size_t n = rays.size();
  long long det = det_int(rays);
  long long D = det < 0 ? -det : det;
  ZVec p(n, 0);
  for (size_t j = 0; j < n; ++j) {
    __int128 s = 0;
    for (size_t i = 0; i < n; ++i) s += static_cast<__int128>(k[i]) * rays[i][j];
    p[j] = static_cast<long long>(s / D);
  }
  return p;
}

}  // namespace

UnimodularResult unimodularize(const Fan& simplicial, PivotRule rule, long long budget) {
  if (!simplicial.simplicial()) throw Error(ErrorCode::InvalidInput, "fan is not simplicial");
  const int n = simplicial.n;
  if (rule == PivotRule::Default) rule = n == 2 ? PivotRule::MinLastCoefficient : PivotRule::MinCoordSum;
  std::set<Cone> cones(simplicial.cones.begin(), simplicial.cones.end());
  UnimodularResult res;
  while (true) {
    auto bad = std::find_if(cones.begin(), cones.end(), [](const Cone& c) { return cone_det(c) != 1; });
    if (bad == cones.end()) break;
    if (res.subdivisions >= budget) {
      res.unimodular = false;
      break;
    }
    const auto& R = bad->rays;
    ZVec best_k, best_p;
    for (const auto& k : parallelepiped(R)) {
      ZVec p = point_of(R, k);
      bool better = false;
      if (best_p.empty()) {
        better = true;
      } else if (rule == PivotRule::MinLastCoefficient && k.back() != best_k.back()) {
        better = k.back() < best_k.back();
      } else {
        long long s1 = sum_of(p), s2 = sum_of(best_p);
        better = s1 < s2 || (s1 == s2 && p < best_p);
      }
      if (better) {
        best_k = k;
        best_p = p;
      }
    }
    ZVec p = primitive(best_p);
    std::set<Cone> next;
    for (const auto& c : cones) {
      ZVec lam = cramer(c.rays, p);
      long long det = det_int(c.rays);
      bool inside = std::all_of(lam.begin(), lam.end(), [&](long long x) { return (det > 0 ? x : -x) >= 0; });
      if (!inside) {
        next.insert(c);
        continue;
      }
      for (size_t i = 0; i < c.rays.size(); ++i) {
        if (lam[i] == 0) continue;
        auto rays = c.rays;
        rays[i] = p;
        next.insert(make_cone(rays));
      }
    }
    cones = std::move(next);
    ++res.subdivisions;
  }
  res.fan = Fan{n, {cones.begin(), cones.end()}};
  return res;
}

Fan simplicialize_unimodular(const Fan& fan, RayOrder order, PivotRule rule) {
  auto res = unimodularize(simplicialize(fan, order), rule);
  if (!res.unimodular)
    throw Error(ErrorCode::UnimodularizationBudgetExceeded,
                "stopped after " + std::to_string(res.subdivisions) + " subdivisions");
  return res.fan;
}

Rat support_value(const newton::PowerData& f, const ZVec& a) {
  if (f.terms.empty()) throw Error(ErrorCode::FlatFunction, "support value of a flat function");
  std::optional<Rat> best;
  for (const auto& [e, c] : f.terms) {
    Rat v = dot(a, f.exponent(e));
    if (!best || v < *best) best = v;
  }
  return *best;
}

int gamma_of(const Polyhedron& P, const Cone& sigma, unsigned mask) {
  ZVec a(P.n(), 0);
  for (size_t k = 0; k < sigma.rays.size(); ++k)
    if (mask & (1u << k))
      for (int j = 0; j < P.n(); ++j) a[j] = checked_add(a[j], sigma.rays[k][j]);
  return P.exposed_face(a);
}

unsigned i_of(const Polyhedron& P, const Cone& sigma, int face) {
  const auto& F = P.faces().at(face);
  unsigned mask = 0;
  for (size_t k = 0; k < sigma.rays.size(); ++k) {
    const ZVec& a = sigma.rays[k];
    Rat l = P.support_value(a);
    bool in = true;
    for (int v : F.vertices)
      if (dot(a, P.vertices()[v]) != l) in = false;
    for (int j : F.zeroWeightSet)
      if (a[j] != 0) in = false;
    if (in) mask |= 1u << k;
  }
  return mask;
}

FaceConeMaps face_cone_maps(const Polyhedron& P, const Cone& sigma) {
  bool compatible = false;
  for (const auto& v : P.vertices()) {
    bool all = true;
    for (const auto& a : sigma.rays)
      if (dot(a, v) != P.support_value(a)) all = false;
    if (all) compatible = true;
  }
  if (!compatible) throw Error(ErrorCode::ConeNotCompatible, "cone is not inside a normal cone");
  FaceConeMaps maps;
  for (unsigned mask = 0; mask < (1u << sigma.rays.size()); ++mask) maps.gammaOf[mask] = gamma_of(P, sigma, mask);
  for (int f = 0; f < static_cast<int>(P.faces().size()); ++f) maps.IOf[f] = i_of(P, sigma, f);
  return maps;
}

ChartMap chart(const Cone& sigma) {
  const size_t n = sigma.rays.size();
  if (n == 0 || sigma.rays[0].size() != n || cone_det(sigma) != 1)
    throw Error(ErrorCode::NotUnimodular, "chart needs a unimodular full-dimensional cone");
  ChartMap m;
  m.cone = sigma;
  m.exponentMatrix.assign(n, ZVec(n));
  m.jacobianExponents.resize(n);
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j < n; ++j) m.exponentMatrix[j][k] = sigma.rays[k][j];
    m.jacobianExponents[k] = sum_of(sigma.rays[k]) - 1;
  }
  return m;
}

bool chart_collapses(const Cone& sigma, unsigned mask) {
  const size_t n = sigma.rays.front().size();
  for (size_t j = 0; j < n; ++j) {
    bool hit = false;
    for (size_t k = 0; k < sigma.rays.size(); ++k)
      if ((mask & (1u << k)) && sigma.rays[k][j] > 0) hit = true;
    if (!hit) return false;
  }
  return true;
}

bool compactness_criterion(const Polyhedron& P, const Cone& sigma, unsigned mask) {
  return P.faces()[gamma_of(P, sigma, mask)].compact;
}

FanCheck check_fan(const Fan& fan, const std::vector<Fan>& coarser, int randomRays, unsigned seed) {
  const int n = fan.n;
  FanCheck chk;
  if (!fan.simplicial()) throw Error(ErrorCode::InvalidInput, "check_fan expects a simplicial fan");
  for (const auto& c : fan.cones)
    if (cone_det(c) != 1) ++chk.nonUnimodular;

  for (const auto& coarse : coarser) {
    std::vector<std::vector<ZVec>> ineqs;
    for (const auto& c : coarse.cones) ineqs.push_back(cone_inequalities(c, n));
    for (const auto& c : fan.cones) {
      bool inside = std::any_of(ineqs.begin(), ineqs.end(), [&](const auto& h) {
        return std::all_of(c.rays.begin(), c.rays.end(), [&](const ZVec& r) { return cone_contains(h, r); });
      });
      if (!inside) ++chk.notRefining;
    }
  }

  // Coordinates in the ray basis are linear in x: lam_i = <cof_i, x>.
  std::vector<long long> dets;
  std::vector<std::vector<ZVec>> cofactors;
  for (const auto& c : fan.cones) {
    dets.push_back(det_int(c.rays));
    std::vector<ZVec> cof(n, ZVec(n));
    for (int j = 0; j < n; ++j) {
      ZVec e(n, 0);
      e[j] = 1;
      ZVec col = cramer(c.rays, e);
      for (int i = 0; i < n; ++i) cof[i][j] = col[i];
    }
    cofactors.push_back(std::move(cof));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> coord(1, 1000000);
  for (int t = 0; t < randomRays; ++t) {
    ZVec x(n);
    for (auto& v : x) v = coord(rng);
    int containing = 0, interior = 0;
    for (size_t i = 0; i < fan.cones.size(); ++i) {
      const int s = dets[i] > 0 ? 1 : -1;
      bool in = true, strict = true;
      for (int k = 0; k < n && in; ++k) {
        __int128 v = 0;
        for (int j = 0; j < n; ++j) v += static_cast<__int128>(cofactors[i][k][j]) * x[j];
        v *= s;
        in = v >= 0;
        strict = strict && v > 0;
      }
      containing += in;
      interior += strict;
    }
    if (containing == 0) ++chk.uncovered;
    else if (interior > 1 || (interior == 1 && containing > 1)) ++chk.overlapping;
  }

  // Every interior wall is shared by exactly two cones lying on opposite sides.
  std::map<std::vector<ZVec>, std::vector<ZVec>> walls;  // wall -> opposite rays
  for (const auto& c : fan.cones) {
    for (int k = 0; k < n; ++k) {
      std::vector<ZVec> w;
      for (int i = 0; i < n; ++i)
        if (i != k) w.push_back(c.rays[i]);
      walls[w].push_back(c.rays[k]);
    }
  }
  for (const auto& [w, opp] : walls) {
    bool boundary = false;
    for (int j = 0; j < n; ++j)
      if (std::all_of(w.begin(), w.end(), [&](const ZVec& r) { return r[j] == 0; })) boundary = true;
    if (boundary) {
      if (opp.size() != 1) ++chk.badWalls;
      continue;
    }
    if (opp.size() != 2) {
      ++chk.badWalls;
      continue;
    }
    auto m1 = w, m2 = w;
    m1.push_back(opp[0]);
    m2.push_back(opp[1]);
    long long d1 = det_int(m1), d2 = det_int(m2);
    if (!((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0))) ++chk.badWalls;
  }
  return chk;
}

}  // namespace newton_osc::fan
