#include "newton_osc/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

namespace newton_osc::geometry {

namespace {

using Bits = std::vector<uint64_t>;

void set_bit(Bits& b, size_t i) { b[i / 64] |= (uint64_t{1} << (i % 64)); }

Bits bits_and(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

bool bits_subset(const Bits& a, const Bits& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if ((a[i] & ~b[i]) != 0) return false;
  return true;
}

int popcount(const Bits& a) {
  int c = 0;
  for (uint64_t w : a) c += std::popcount(w);
  return c;
}

struct DdRay {
  ZVec v;
  Bits zero;
};

// Solve B x = e_col over Q and scale to a primitive integer vector.
ZVec inverse_column(const std::vector<ZVec>& B, size_t col) {
  const size_t d = B.size();
  std::vector<QVec> m(d, QVec(d + 1));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) m[i][j] = Rat(B[i][j]);
    m[i][d] = Rat(i == col ? 1 : 0);
  }
  for (size_t c = 0; c < d; ++c) {
    size_t p = c;
    while (m[p][c].is_zero()) ++p;
    std::swap(m[p], m[c]);
    Rat inv = m[c][c].inverse();
    for (size_t k = c; k <= d; ++k) m[c][k] *= inv;
    for (size_t r = 0; r < d; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Rat f = m[r][c];
      for (size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  long long den = 1;
  for (size_t i = 0; i < d; ++i) den = lcm_ll(den, m[i][d].den());
  ZVec out(d);
  for (size_t i = 0; i < d; ++i) out[i] = (m[i][d] * Rat(den)).num();
  return primitive(out);
}

}  // namespace

std::vector<ZVec> extreme_rays(const std::vector<ZVec>& rows, int dim) {
  const size_t words = (rows.size() + 63) / 64 + 1;
  // Greedy choice of dim independent rows.
  std::vector<size_t> basis;
  std::vector<QVec> chosen;
  for (size_t i = 0; i < rows.size() && static_cast<int>(basis.size()) < dim; ++i) {
    auto trial = chosen;
    trial.push_back(to_q(rows[i]));
    if (rank_of(trial) == static_cast<int>(trial.size())) {
      chosen = std::move(trial);
      basis.push_back(i);
    }
  }
  if (static_cast<int>(basis.size()) < dim)
    throw Error(ErrorCode::InvalidInput, "cone is not pointed");

  std::vector<ZVec> B;
  for (size_t i : basis) B.push_back(rows[i]);
  std::vector<DdRay> rays;
  for (int c = 0; c < dim; ++c) {
    DdRay r{inverse_column(B, c), Bits(words, 0)};
    for (int k = 0; k < dim; ++k)
      if (k != c) set_bit(r.zero, basis[k]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> used(rows.size(), false);
  for (size_t i : basis) used[i] = true;
  for (size_t h = 0; h < rows.size(); ++h) {
    if (used[h]) continue;
    used[h] = true;
    std::vector<long long> val(rays.size());
    std::vector<size_t> pos, neg;
    std::vector<DdRay> next;
    for (size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(rows[h], rays[k].v);
      if (val[k] > 0) pos.push_back(k);
      if (val[k] < 0) neg.push_back(k);
      if (val[k] >= 0) {
        next.push_back(rays[k]);
        if (val[k] == 0) set_bit(next.back().zero, h);
      }
    }
    for (size_t p : pos) {
      for (size_t q : neg) {
        Bits common = bits_and(rays[p].zero, rays[q].zero);
        if (popcount(common) < dim - 2) continue;
        bool adjacent = true;
        for (size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          if (bits_subset(common, rays[k].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        ZVec v(dim);
        for (int j = 0; j < dim; ++j)
          v[j] = checked_add(checked_mul(val[p], rays[q].v[j]), checked_mul(-val[q], rays[p].v[j]));
        DdRay r{primitive(v), common};
        set_bit(r.zero, h);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
  }
  std::vector<ZVec> out;
  for (auto& r : rays) out.push_back(r.v);
  std::sort(out.begin(), out.end());
  return out;
}

bool Polyhedron::contains(const QVec& x) const {
  for (const auto& f : facets_)
    if (dot(f.a, x) < f.l) return false;
  return true;
}

Rat Polyhedron::support_value(const ZVec& a) const {
  Rat best = dot(a, vertices_.front());
  for (const auto& v : vertices_) best = std::min(best, dot(a, v));
  return best;
}

std::optional<int> Polyhedron::find_face(const std::vector<int>& vertices,
                                         const std::vector<int>& rays) const {
  for (size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].vertices == vertices && faces_[i].zeroWeightSet == rays) return static_cast<int>(i);
  return std::nullopt;
}

int Polyhedron::exposed_face(const ZVec& a) const {
  Rat l = support_value(a);
  std::vector<int> verts, rays;
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (dot(a, vertices_[i]) == l) verts.push_back(static_cast<int>(i));
  for (int j = 0; j < n_; ++j)
    if (a[j] == 0) rays.push_back(j);
  auto f = find_face(verts, rays);
  if (!f) throw Error(ErrorCode::InvalidInput, "exposed set is not a face");
  return *f;
}

bool Polyhedron::point_in_face(const QVec& x, int face) const {
  if (!contains(x)) return false;
  for (int i : faces_[face].activeFacets)
    if (dot(facets_[i].a, x) != facets_[i].l) return false;
  return true;
}

void Polyhedron::enumerate_faces() {
  struct Inc {
    std::vector<int> verts, rays;
  };
  std::vector<Inc> inc(facets_.size());
  for (size_t i = 0; i < facets_.size(); ++i) {
    for (size_t v = 0; v < vertices_.size(); ++v)
      if (dot(facets_[i].a, vertices_[v]) == facets_[i].l) inc[i].verts.push_back(static_cast<int>(v));
    for (int j = 0; j < n_; ++j)
      if (facets_[i].a[j] == 0) inc[i].rays.push_back(j);
  }
  auto intersect = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  };
  auto includes = [](const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };

  std::map<std::pair<std::vector<int>, std::vector<int>>, Face> found;
  std::deque<std::pair<std::vector<int>, std::vector<int>>> queue;
  auto add = [&](std::vector<int> verts, std::vector<int> rays) {
    auto key = std::make_pair(verts, rays);
    if (found.count(key)) return;
    Face f;
    f.vertices = verts;
    f.zeroWeightSet = rays;
    for (size_t i = 0; i < facets_.size(); ++i)
      if (includes(inc[i].verts, verts) && includes(inc[i].rays, rays)) f.activeFacets.push_back(static_cast<int>(i));
    std::vector<QVec> span;
    for (size_t k = 1; k < verts.size(); ++k) {
      QVec d(n_);
      for (int j = 0; j < n_; ++j) d[j] = vertices_[verts[k]][j] - vertices_[verts[0]][j];
      span.push_back(d);
    }
    for (int j : rays) {
      QVec e(n_, Rat(0));
      e[j] = Rat(1);
      span.push_back(e);
    }
    f.dim = rank_of(span);
    f.compact = rays.empty();
    ZVec a(n_, 0);
    Rat l;
    for (int i : f.activeFacets) {
      for (int j = 0; j < n_; ++j) a[j] = checked_add(a[j], facets_[i].a[j]);
      l += facets_[i].l;
    }
    long long g = gcd_of(a);
    if (g > 1) {
      for (auto& x : a) x /= g;
      l /= Rat(g);
    }
    f.defining = ValidPair{a, l};
    found.emplace(key, std::move(f));
    queue.push_back(key);
  };

  std::vector<int> allv(vertices_.size()), allr(n_);
  for (size_t i = 0; i < allv.size(); ++i) allv[i] = static_cast<int>(i);
  for (int j = 0; j < n_; ++j) allr[j] = j;
  add(allv, allr);
  while (!queue.empty()) {
    auto key = queue.front();
    queue.pop_front();
    const Face& f = found.at(key);
    std::vector<int> active = f.activeFacets;
    for (size_t i = 0; i < facets_.size(); ++i) {
      if (std::binary_search(active.begin(), active.end(), static_cast<int>(i))) continue;
      auto v = intersect(key.first, inc[i].verts);
      if (v.empty()) continue;
      add(v, intersect(key.second, inc[i].rays));
    }
  }
  faces_.clear();
  for (auto& [k, f] : found) faces_.push_back(std::move(f));
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.activeFacets < b.activeFacets;
  });
}

Polyhedron build_polyhedron(const std::vector<QVec>& generators) {
  if (generators.empty()) throw Error(ErrorCode::EmptyInput, "no generators");
  const int n = static_cast<int>(generators.front().size());
  if (n < 1 || n > kMaxDim) throw Error(ErrorCode::UnsupportedDimension, "n = " + std::to_string(n));
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != n) throw Error(ErrorCode::InvalidInput, "ragged generators");
    for (const auto& x : g)
      if (x.sign() < 0) throw Error(ErrorCode::InvalidInput, "negative generator coordinate");
  }
  Polyhedron P;
  P.n_ = n;
  std::set<QVec> uniq(generators.begin(), generators.end());
  P.generators_.assign(uniq.begin(), uniq.end());

  long long D = 1;
  for (const auto& g : P.generators_) D = lcm_ll(D, common_denominator(g));
  std::vector<ZVec> rows;
  for (int j = 0; j < n; ++j) {
    ZVec r(n + 1, 0);
    r[j] = 1;
    rows.push_back(r);
  }
  for (const auto& g : P.generators_) {
    ZVec r(n + 1);
    for (int j = 0; j < n; ++j) r[j] = (g[j] * Rat(D)).num();
    r[n] = -1;
    rows.push_back(r);
  }
  for (const auto& ray : extreme_rays(rows, n + 1)) {
    ZVec a(ray.begin(), ray.begin() + n);
    if (std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; })) continue;
    long long g = gcd_of(a);
    for (auto& x : a) x /= g;
    P.facets_.push_back(ValidPair{a, Rat(ray[n] / g, D)});
  }
  std::sort(P.facets_.begin(), P.facets_.end(),
            [](const ValidPair& x, const ValidPair& y) { return x.a < y.a; });

  for (const auto& g : P.generators_) {
    std::vector<QVec> normals;
    for (const auto& f : P.facets_)
      if (dot(f.a, g) == f.l) normals.push_back(to_q(f.a));
    if (rank_of(normals) == n) P.vertices_.push_back(g);
  }
  P.enumerate_faces();
  return P;
}

int smallest_face(const Polyhedron& P, const QVec& alpha) {
  if (!P.contains(alpha)) throw Error(ErrorCode::PointOutsidePolyhedron, vec_str(alpha));
  std::vector<int> verts, rays;
  bool any = false;
  for (size_t v = 0; v < P.vertices().size(); ++v) verts.push_back(static_cast<int>(v));
  for (int j = 0; j < P.n(); ++j) rays.push_back(j);
  for (const auto& f : P.facets()) {
    if (dot(f.a, alpha) != f.l) continue;
    any = true;
    std::vector<int> v2, r2;
    for (int v : verts)
      if (dot(f.a, P.vertices()[v]) == f.l) v2.push_back(v);
    for (int j : rays)
      if (f.a[j] == 0) r2.push_back(j);
    verts = std::move(v2);
    rays = std::move(r2);
  }
  if (!any) throw Error(ErrorCode::PointNotOnBoundary, vec_str(alpha));
  auto face = P.find_face(verts, rays);
  if (!face) throw Error(ErrorCode::InvalidInput, "face lookup failed");
  return *face;
}

Polyhedron scale_translate(const Polyhedron& P, const Rat& d, const QVec& b) {
  if (d.sign() <= 0) throw Error(ErrorCode::InvalidInput, "scale must be positive");
  Polyhedron R = P;
  auto map_point = [&](const QVec& v) {
    QVec w(v.size());
    for (size_t j = 0; j < v.size(); ++j) w[j] = d * (v[j] + b[j]);
    return w;
  };
  for (auto& g : R.generators_) g = map_point(g);
  for (auto& v : R.vertices_) v = map_point(v);
  for (auto& f : R.facets_) f.l = d * (f.l + dot(f.a, b));
  for (auto& f : R.faces_) f.defining.l = d * (f.defining.l + dot(f.defining.a, b));
  return R;
}

bool feasible(int n, const std::vector<LinearConstraint>& inequalities,
              const std::vector<std::pair<QVec, Rat>>& equalities) {
  std::vector<LinearConstraint> cons = inequalities;
  auto eqs = equalities;
  // Substitute out one variable per equality.
  for (size_t e = 0; e < eqs.size(); ++e) {
    auto [c, b] = eqs[e];
    int k = -1;
    for (int j = 0; j < n; ++j)
      if (!c[j].is_zero()) {
        k = j;
        break;
      }
    if (k < 0) {
      if (!b.is_zero()) return false;
      continue;
    }
    // x_k = (b - sum_{j != k} c_j x_j) / c_k
    auto substitute = [&](QVec& cc, Rat& bb) {
      if (cc[k].is_zero()) return;
      Rat f = cc[k] / c[k];
      for (int j = 0; j < n; ++j) cc[j] -= f * c[j];
      bb -= f * b;
    };
    for (size_t e2 = e + 1; e2 < eqs.size(); ++e2) substitute(eqs[e2].first, eqs[e2].second);
    for (auto& con : cons) substitute(con.c, con.b);
  }

  auto normalize = [&](std::vector<LinearConstraint>& in) -> bool {
    std::map<QVec, std::pair<Rat, bool>> best;
    for (auto& con : in) {
      int first = -1;
      for (int j = 0; j < n; ++j)
        if (!con.c[j].is_zero()) {
          first = j;
          break;
        }
      if (first < 0) {
        if (con.strict ? !(Rat(0) > con.b) : !(Rat(0) >= con.b)) return false;
        continue;
      }
      Rat s = con.c[first].abs();
      QVec c = con.c;
      for (auto& x : c) x /= s;
      Rat b = con.b / s;
      auto it = best.find(c);
      if (it == best.end()) {
        best.emplace(c, std::make_pair(b, con.strict));
      } else if (b > it->second.first) {
        it->second = {b, con.strict};
      } else if (b == it->second.first) {
        it->second.second = it->second.second || con.strict;
      }
    }
    in.clear();
    for (auto& [c, bs] : best) in.push_back(LinearConstraint{c, bs.first, bs.second});
    return true;
  };

  if (!normalize(cons)) return false;
  for (int k = 0; k < n; ++k) {
    std::vector<LinearConstraint> pos, neg, next;
    for (auto& con : cons) {
      int s = con.c[k].sign();
      if (s > 0) pos.push_back(con);
      else if (s < 0) neg.push_back(con);
      else next.push_back(con);
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Rat fp = p.c[k].inverse();
        Rat fq = (-q.c[k]).inverse();
        LinearConstraint r;
        r.c.resize(n);
        for (int j = 0; j < n; ++j) r.c[j] = p.c[j] * fp + q.c[j] * fq;
        r.c[k] = Rat(0);
        r.b = p.b * fp + q.b * fq;
        r.strict = p.strict || q.strict;
        next.push_back(std::move(r));
      }
    }
    cons = std::move(next);
    if (!normalize(cons)) return false;
  }
  return true;
}

bool relint_intersects(const Polyhedron& P, int face, const Polyhedron& Q) {
  const Face& F = P.faces().at(face);
  std::vector<LinearConstraint> ineq;
  std::vector<std::pair<QVec, Rat>> eq;
  for (size_t i = 0; i < P.facets().size(); ++i) {
    const auto& f = P.facets()[i];
    bool active = std::binary_search(F.activeFacets.begin(), F.activeFacets.end(), static_cast<int>(i));
    if (active) eq.emplace_back(to_q(f.a), f.l);
    else ineq.push_back(LinearConstraint{to_q(f.a), f.l, true});
  }
  for (const auto& f : Q.facets()) ineq.push_back(LinearConstraint{to_q(f.a), f.l, false});
  return feasible(P.n(), ineq, eq);
}

bool relint_intersects(const Polyhedron& P, int face, const Polyhedron* Q) {
  if (Q == nullptr) return false;
  return relint_intersects(P, face, *Q);
}

}  // namespace newton_osc::geometry
