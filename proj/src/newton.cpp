#include "newton_osc/newton.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <unsupported/Eigen/Polynomials>

namespace newton_osc::newton {

using geometry::Polyhedron;

const char* to_string(NondegVerdict v) {
  switch (v) {
    case NondegVerdict::Nondegenerate: return "Nondegenerate";
    case NondegVerdict::Degenerate: return "Degenerate";
    case NondegVerdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(NondegMethod m) { return m == NondegMethod::Exact2D ? "Exact2D" : "Sampling"; }

const char* to_string(Ternary t) {
  switch (t) {
    case Ternary::Holds: return "Holds";
    case Ternary::Fails: return "Fails";
    case Ternary::Unknown: return "Unknown";
  }
  return "?";
}

PowerData PowerData::unit(int n) {
  PowerData p(n);
  p.add(ZVec(n, 0), Rat(1));
  return p;
}

PowerData PowerData::monomial(const ZVec& exp, Rat coeff) {
  PowerData p(static_cast<int>(exp.size()));
  p.add(exp, coeff);
  return p;
}

PowerData PowerData::polynomial(int n, const std::vector<std::pair<ZVec, Rat>>& terms) {
  PowerData p(n);
  for (const auto& [e, c] : terms) p.add(e, c);
  return p;
}

PowerData& PowerData::add(const ZVec& exp, const Rat& coeff) {
  if (static_cast<int>(exp.size()) != n) throw Error(ErrorCode::InvalidInput, "exponent length mismatch");
  for (long long e : exp)
    if (e < 0) throw Error(ErrorCode::InvalidInput, "negative exponent");
  Rat c = terms.count(exp) ? terms[exp] + coeff : coeff;
  if (c.is_zero()) terms.erase(exp);
  else terms[exp] = c;
  return *this;
}

PowerData& PowerData::add_flat(const ZVec& exp, int axis, const Rat& scale) {
  if (static_cast<int>(exp.size()) != n || axis < 0 || axis >= n)
    throw Error(ErrorCode::InvalidInput, "bad flat marker");
  if (!scale.is_zero()) flat.push_back(FlatMarker{exp, axis, scale});
  return *this;
}

QVec PowerData::exponent(const ZVec& alpha) const {
  QVec q(n);
  for (int j = 0; j < n; ++j) q[j] = Rat(alpha[j], denom[j]);
  return q;
}

bool PowerData::has_fractional_exponents() const {
  return std::any_of(denom.begin(), denom.end(), [](long long p) { return p != 1; });
}

std::string PowerData::str() const {
  static const char* names[] = {"x1", "x2", "x3", "x4"};
  std::ostringstream os;
  bool first = true;
  auto mono = [&](const ZVec& e) {
    for (int j = 0; j < n; ++j) {
      if (e[j] == 0) continue;
      os << "*" << (j < 4 ? names[j] : "x?");
      Rat q(e[j], denom[j]);
      if (q != Rat(1)) os << "^" << (q.is_integer() ? q.str() : "(" + q.str() + ")");
    }
  };
  for (const auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    mono(e);
  }
  for (const auto& m : flat) {
    if (!first) os << " + ";
    first = false;
    os << "(" << m.scale << ")";
    mono(m.exp);
    os << "*exp(-1/" << names[m.axis] << "^2)";
  }
  if (first) os << "0";
  return os.str();
}

namespace {

double power(double x, long long num, long long den) {
  if (den == 1) {
    double r = 1.0;
    for (long long k = 0; k < num; ++k) r *= x;
    return r;
  }
  return std::pow(x, static_cast<double>(num) / static_cast<double>(den));
}

double monomial_value(const PowerData& f, const ZVec& e, const std::vector<double>& x) {
  double v = 1.0;
  for (int j = 0; j < f.n; ++j)
    if (e[j] != 0) v *= power(x[j], e[j], f.denom[j]);
  return v;
}

}  // namespace

double PowerData::eval(const std::vector<double>& x, bool include_flat) const {
  double s = 0.0;
  for (const auto& [e, c] : terms) s += c.to_double() * monomial_value(*this, e, x);
  if (include_flat) {
    for (const auto& m : flat) {
      double xa = x[m.axis];
      if (xa == 0.0) continue;
      s += m.scale.to_double() * monomial_value(*this, m.exp, x) * std::exp(-1.0 / (xa * xa));
    }
  }
  return s;
}

bool is_flat(const PowerData& f) { return f.terms.empty(); }

Polyhedron newton_polyhedron(const PowerData& f) {
  if (is_flat(f)) throw Error(ErrorCode::FlatFunction, "no non-flat terms; the Newton polyhedron is empty");
  std::vector<QVec> gens;
  for (const auto& [e, c] : f.terms) gens.push_back(f.exponent(e));
  return geometry::build_polyhedron(gens);
}

GammaPart gamma_part(const PowerData& f, const Polyhedron& P, int face) {
  if (face < 0 || face >= static_cast<int>(P.faces().size()))
    throw Error(ErrorCode::FaceNotOfThisPolyhedron, "face index out of range");
  Polyhedron own = newton_polyhedron(f);
  if (own.facets() != P.facets() || own.vertices() != P.vertices())
    throw Error(ErrorCode::FaceNotOfThisPolyhedron, "polyhedron does not belong to this function");
  GammaPart gp{face, PowerData(f.n)};
  gp.data.denom = f.denom;
  for (const auto& [e, c] : f.terms)
    if (P.point_in_face(f.exponent(e), face)) gp.data.terms.emplace(e, c);
  return gp;
}

bool is_convenient(const PowerData& f) {
  for (int j = 0; j < f.n; ++j) {
    bool hit = false;
    for (const auto& [e, c] : f.terms) {
      bool on_axis = true;
      for (int k = 0; k < f.n; ++k)
        if (k != j && e[k] != 0) on_axis = false;
      if (on_axis) hit = true;
    }
    if (!hit) return false;
  }
  return true;
}

bool hat_e_flag(const PowerData& f) {
  if (f.flat.empty()) return true;
  if (is_flat(f)) return false;
  Polyhedron P = newton_polyhedron(f);
  for (const auto& m : f.flat)
    if (!P.contains(f.exponent(m.exp))) return false;
  return true;
}

// ---------------------------------------------------------------- polynomials

void UPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int UPoly::degree() const { return static_cast<int>(c.size()) - 1; }

Rat UPoly::operator()(const Rat& x) const {
  Rat s;
  for (size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

double UPoly::eval(double x) const {
  double s = 0.0;
  for (size_t i = c.size(); i-- > 0;) s = s * x + c[i].to_double();
  return s;
}

UPoly UPoly::derivative() const {
  UPoly d;
  for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rat(static_cast<long long>(i)));
  d.trim();
  return d;
}

namespace {

UPoly poly_rem(UPoly a, const UPoly& b) {
  a.trim();
  while (a.degree() >= b.degree() && !a.c.empty()) {
    Rat f = a.c.back() / b.c.back();
    int shift = a.degree() - b.degree();
    for (int i = 0; i <= b.degree(); ++i) a.c[i + shift] -= f * b.c[i];
    a.c.pop_back();
    a.trim();
  }
  return a;
}

UPoly scaled_positive(UPoly p) {
  if (p.c.empty()) return p;
  Rat s = p.c.back().abs().inverse();
  for (auto& x : p.c) x *= s;
  return p;
}

int sign_at(const UPoly& p, std::optional<Rat> x, int infinity_sign) {
  if (p.c.empty()) return 0;
  if (x) return p(*x).sign();
  int s = p.c.back().sign();
  if (infinity_sign < 0 && p.degree() % 2 == 1) s = -s;
  return s;
}

}  // namespace

UPoly poly_gcd(UPoly a, UPoly b) {
  a.trim();
  b.trim();
  while (!b.c.empty()) {
    UPoly r = scaled_positive(poly_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return scaled_positive(a);
}

int count_real_roots(const UPoly& p0, std::optional<Rat> lo, std::optional<Rat> hi) {
  UPoly p = p0;
  p.trim();
  if (p.degree() <= 0) return 0;
  std::vector<UPoly> chain{scaled_positive(p), scaled_positive(p.derivative())};
  while (true) {
    UPoly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.c.empty()) break;
    for (auto& x : r.c) x = -x;
    chain.push_back(scaled_positive(r));
  }
  auto variations = [&](std::optional<Rat> x, int inf_sign) {
    int v = 0, last = 0;
    for (const auto& q : chain) {
      int s = sign_at(q, x, inf_sign);
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  };
  return variations(lo, -1) - variations(hi, +1);
}

std::vector<double> real_roots(const UPoly& p0) {
  UPoly p = p0;
  p.trim();
  std::vector<double> out;
  if (p.degree() <= 0) return out;
  UPoly sqf = p;
  UPoly g = poly_gcd(p, p.derivative());
  if (g.degree() > 0) {
    // p / g via long division
    UPoly q;
    UPoly a = p;
    q.c.assign(a.degree() - g.degree() + 1, Rat(0));
    while (a.degree() >= g.degree() && !a.c.empty()) {
      Rat f = a.c.back() / g.c.back();
      int shift = a.degree() - g.degree();
      q.c[shift] = f;
      for (int i = 0; i <= g.degree(); ++i) a.c[i + shift] -= f * g.c[i];
      a.c.pop_back();
      a.trim();
    }
    sqf = q;
  }
  sqf.trim();
  if (sqf.degree() == 1) {
    out.push_back((-sqf.c[0] / sqf.c[1]).to_double());
    return out;
  }
  Eigen::VectorXd coeffs(sqf.degree() + 1);
  for (int i = 0; i <= sqf.degree(); ++i) coeffs[i] = sqf.c[i].to_double();
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  for (const auto& z : solver.roots()) {
    if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) continue;
    double x = z.real();
    UPoly d = sqf.derivative();
    for (int it = 0; it < 8; ++it) {
      double fx = sqf.eval(x), dx = d.eval(x);
      if (dx == 0.0) break;
      x -= fx / dx;
    }
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- certificates

namespace {

struct IntTerm {
  ZVec e;
  double c;
};

std::vector<IntTerm> int_terms(const PowerData& f) {
  std::vector<IntTerm> out;
  for (const auto& [e, c] : f.terms) out.push_back({e, c.to_double()});
  return out;
}

double ipow(double x, long long k) {
  double r = 1.0;
  for (long long i = 0; i < k; ++i) r *= x;
  return r;
}

// Gradient of a polynomial with integer exponents, and the scale sum_j |terms|.
void gradient(const std::vector<IntTerm>& t, const std::vector<double>& x, std::vector<double>& g,
              std::vector<double>& scale) {
  const size_t n = x.size();
  g.assign(n, 0.0);
  scale.assign(n, 0.0);
  for (const auto& term : t) {
    for (size_t j = 0; j < n; ++j) {
      if (term.e[j] == 0) continue;
      double v = term.c * static_cast<double>(term.e[j]);
      for (size_t k = 0; k < n; ++k) v *= ipow(x[k], term.e[k] - (k == j ? 1 : 0));
      g[j] += v;
      scale[j] += std::abs(v);
    }
  }
}

double normalized_gradient(const std::vector<IntTerm>& t, const std::vector<double>& x) {
  std::vector<double> g, s;
  gradient(t, x, g, s);
  double worst = 0.0;
  for (size_t j = 0; j < g.size(); ++j)
    if (s[j] > 0) worst = std::max(worst, std::abs(g[j]) / s[j]);
  return worst;
}

Eigen::MatrixXd hessian(const std::vector<IntTerm>& t, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (const auto& term : t) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ZVec e = term.e;
        double v = term.c;
        v *= static_cast<double>(e[i]);
        if (e[i] == 0) continue;
        e[i] -= 1;
        v *= static_cast<double>(e[j]);
        if (e[j] == 0) continue;
        e[j] -= 1;
        for (int k = 0; k < n; ++k) v *= ipow(x[k], e[k]);
        H(i, j) += v;
      }
    }
  }
  return H;
}

// Levenberg–Marquardt on grad = 0, starting from a grid point.
std::vector<double> refine(const std::vector<IntTerm>& t, std::vector<double> x, int steps) {
  const int n = static_cast<int>(x.size());
  double lambda = 1e-3;
  for (int it = 0; it < steps; ++it) {
    std::vector<double> g, s;
    gradient(t, x, g, s);
    Eigen::VectorXd r(n);
    for (int j = 0; j < n; ++j) r[j] = g[j];
    Eigen::MatrixXd J = hessian(t, x);
    Eigen::MatrixXd A = J.transpose() * J;
    A.diagonal().array() += lambda * (A.diagonal().array().abs() + 1e-30);
    Eigen::VectorXd step = A.ldlt().solve(-J.transpose() * r);
    std::vector<double> y(n);
    for (int j = 0; j < n; ++j) y[j] = x[j] + step[j];
    if (normalized_gradient(t, y) < normalized_gradient(t, x)) {
      x = y;
      lambda *= 0.3;
    } else {
      lambda *= 10.0;
    }
  }
  return x;
}

struct Collinear {
  ZVec start, step;
  std::map<long long, Rat> coeff;  // index along the line -> coefficient
};

// Exponents of f lying on one line: alpha = start + k * step, step primitive.
std::optional<Collinear> collinear_terms(const PowerData& f) {
  if (f.terms.size() < 2) return std::nullopt;
  auto it = f.terms.begin();
  ZVec start = it->first;
  ZVec dir;
  for (auto jt = std::next(it); jt != f.terms.end(); ++jt) {
    ZVec d(f.n);
    for (int j = 0; j < f.n; ++j) d[j] = jt->first[j] - start[j];
    d = primitive(d);
    if (dir.empty()) dir = d;
    else if (d != dir) {
      ZVec neg(d);
      for (auto& x : neg) x = -x;
      if (neg != dir) return std::nullopt;
    }
  }
  // Move start to the extreme point along -dir so that all indices are >= 0.
  Collinear c;
  c.step = dir;
  long long minimum = 0;
  std::vector<std::pair<long long, Rat>> idx;
  int pivot = 0;
  while (dir[pivot] == 0) ++pivot;
  for (const auto& [e, coeff] : f.terms) {
    long long k = (e[pivot] - start[pivot]) / dir[pivot];
    idx.emplace_back(k, coeff);
    minimum = std::min(minimum, k);
  }
  c.start = start;
  for (int j = 0; j < f.n; ++j) c.start[j] = start[j] + minimum * dir[j];
  for (auto& [k, coeff] : idx) c.coeff[k - minimum] = coeff;
  return c;
}

UPoly line_poly(const Collinear& c) {
  UPoly q;
  long long top = c.coeff.rbegin()->first;
  q.c.assign(top + 1, Rat(0));
  for (const auto& [k, coeff] : c.coeff) q.c[k] = coeff;
  return q;
}

// A point x with x^step = u, all other coordinates 1 (or -1 when needed).
std::optional<std::vector<double>> point_for_u(const ZVec& step, double u, bool positive_only) {
  const size_t n = step.size();
  std::vector<double> x(n, 1.0);
  for (size_t j = 0; j < n; ++j) {
    if (step[j] == 0) continue;
    double e = static_cast<double>(step[j]);
    if (u > 0) {
      x[j] = std::pow(u, 1.0 / e);
      return x;
    }
    if (!positive_only && step[j] % 2 != 0) {
      x[j] = -std::pow(-u, 1.0 / e);
      return x;
    }
  }
  return std::nullopt;
}

// Real nonzero roots of q reachable as u = x^step: all of R\{0}, or u > 0 only.
int reachable_roots(const UPoly& q, bool positive_only) {
  int pos = count_real_roots(q, Rat(0), std::nullopt);
  if (positive_only) return pos;
  return pos + count_real_roots(q, std::nullopt, Rat(0));
}

UPoly strip_zero_roots(UPoly q) {
  q.trim();
  size_t k = 0;
  while (k < q.c.size() && q.c[k].is_zero()) ++k;
  q.c.erase(q.c.begin(), q.c.begin() + static_cast<long>(k));
  return q;
}

}  // namespace

NondegCertificate nondegeneracy_certificate(const PowerData& f_in) {
  if (is_flat(f_in)) throw Error(ErrorCode::FlatFunction, "nondegeneracy needs non-flat terms");
  // Work on the cleared lattice; for Puiseux data only the positive orthant counts.
  PowerData f = f_in;
  const bool positive_only = f.has_fractional_exponents();
  f.denom.assign(f.n, 1);
  f.flat.clear();
  Polyhedron P = newton_polyhedron(f);

  NondegCertificate cert;
  cert.verdict = NondegVerdict::Nondegenerate;
  cert.method = NondegMethod::Exact2D;
  bool unknown = false;

  for (size_t fi = 0; fi < P.faces().size(); ++fi) {
    const auto& face = P.faces()[fi];
    if (!face.compact) continue;
    PowerData part = gamma_part(f, P, static_cast<int>(fi)).data;
    if (face.dim == 0) {
      const ZVec& e = part.terms.begin()->first;
      if (std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; })) {
        cert.verdict = NondegVerdict::Degenerate;
        cert.witness = std::vector<double>(f.n, 1.0);
        cert.face = static_cast<int>(fi);
        cert.gradientNorm = 0.0;
        return cert;
      }
      continue;
    }
    if (face.dim == 1) {
      auto line = collinear_terms(part);
      if (!line) continue;
      try {
        UPoly q = strip_zero_roots(line_poly(*line));
        UPoly g = poly_gcd(q, q.derivative());
        if (g.degree() > 0 && reachable_roots(g, positive_only) > 0) {
          cert.verdict = NondegVerdict::Degenerate;
          cert.face = static_cast<int>(fi);
          for (double u : real_roots(g)) {
            if (u == 0.0 || (positive_only && u < 0)) continue;
            auto x = point_for_u(line->step, u, positive_only);
            if (!x) continue;
            cert.witness = x;
            cert.gradientNorm = normalized_gradient(int_terms(part), *x);
            break;
          }
          return cert;
        }
        continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Overflow) throw;
      }
    }
    // Sampling on a log-scaled grid per orthant, then local refinement.
    cert.method = NondegMethod::Sampling;
    const int per_axis = f.n >= 4 ? 21 : 41;
    std::vector<double> mags(per_axis);
    for (int k = 0; k < per_axis; ++k) mags[k] = std::pow(10.0, -3.0 + 6.0 * k / (per_axis - 1));
    std::vector<double> values;
    for (double m : mags) {
      values.push_back(m);
      if (!positive_only) values.push_back(-m);
    }
    auto terms = int_terms(part);
    std::vector<std::pair<double, std::vector<double>>> best;
    std::vector<size_t> idx(f.n, 0);
    std::vector<double> x(f.n);
    while (true) {
      for (int j = 0; j < f.n; ++j) x[j] = values[idx[j]];
      double r = normalized_gradient(terms, x);
      if (best.size() < 20 || r < best.back().first) {
        best.emplace_back(r, x);
        std::sort(best.begin(), best.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (best.size() > 20) best.pop_back();
      }
      int j = 0;
      while (j < f.n && ++idx[j] == values.size()) idx[j++] = 0;
      if (j == f.n) break;
    }
    for (auto& [r, x0] : best) {
      std::vector<double> y = r < 1e-14 ? x0 : refine(terms, x0, 20);
      double ry = normalized_gradient(terms, y);
      bool off_axes = std::all_of(y.begin(), y.end(), [](double v) { return std::abs(v) > 1e-8; });
      bool in_domain = !positive_only || std::all_of(y.begin(), y.end(), [](double v) { return v > 0; });
      if (ry < 1e-10 && off_axes && in_domain) {
        cert.verdict = NondegVerdict::Degenerate;
        cert.witness = y;
        cert.face = static_cast<int>(fi);
        cert.gradientNorm = ry;
        return cert;
      }
    }
    unknown = true;
  }
  if (unknown) cert.verdict = NondegVerdict::Unknown;
  return cert;
}

PowerData product_support(const std::vector<PowerData>& factors) {
  if (factors.empty()) throw Error(ErrorCode::EmptyInput, "no factors");
  PowerData acc = factors.front();
  for (size_t k = 1; k < factors.size(); ++k) {
    const PowerData& b = factors[k];
    if (b.n != acc.n || b.denom != acc.denom) throw Error(ErrorCode::InvalidInput, "incompatible factors");
    PowerData r(acc.n);
    r.denom = acc.denom;
    auto sum = [&](const ZVec& x, const ZVec& y) {
      ZVec s(acc.n);
      for (int j = 0; j < acc.n; ++j) s[j] = checked_add(x[j], y[j]);
      return s;
    };
    for (const auto& [e1, c1] : acc.terms)
      for (const auto& [e2, c2] : b.terms) r.add(sum(e1, e2), c1 * c2);
    for (const auto& m : acc.flat)
      for (const auto& [e2, c2] : b.terms) r.add_flat(sum(m.exp, e2), m.axis, m.scale * c2);
    for (const auto& m : b.flat)
      for (const auto& [e1, c1] : acc.terms) r.add_flat(sum(m.exp, e1), m.axis, m.scale * c1);
    acc = std::move(r);
  }
  return acc;
}

PowerData times_coordinate_monomial(const PowerData& f) {
  PowerData mono(f.n);
  mono.denom = f.denom;
  mono.add(f.denom, Rat(1));
  return product_support({f, mono});
}

PowerData reflect(const PowerData& f, const std::vector<int>& theta) {
  PowerData r(f.n);
  r.denom = f.denom;
  auto sign_of = [&](const ZVec& e) {
    long long s = 1;
    for (int j = 0; j < f.n; ++j) {
      if (theta[j] > 0 || e[j] == 0) continue;
      if (f.denom[j] != 1) throw Error(ErrorCode::InvalidInput, "cannot reflect fractional exponents");
      if (e[j] % 2 != 0) s = -s;
    }
    return s;
  };
  for (const auto& [e, c] : f.terms) r.add(e, c * Rat(sign_of(e)));
  for (const auto& m : f.flat) r.add_flat(m.exp, m.axis, m.scale * Rat(sign_of(m.exp)));
  return r;
}

PowerData permute(const PowerData& f, const std::vector<int>& perm) {
  // result(x) = f(x_perm[0], ..., x_perm[n-1]): exponent of x_perm[j] is e[j].
  PowerData r(f.n);
  for (int j = 0; j < f.n; ++j) r.denom[perm[j]] = f.denom[j];
  auto move = [&](const ZVec& e) {
    ZVec out(f.n);
    for (int j = 0; j < f.n; ++j) out[perm[j]] = e[j];
    return out;
  };
  for (const auto& [e, c] : f.terms) r.add(move(e), c);
  for (const auto& m : f.flat) r.add_flat(move(m.exp), perm[m.axis], m.scale);
  return r;
}

// ---------------------------------------------------------------- sign tests

namespace {

bool all_even_same_sign(const PowerData& f) {
  int sign = 0;
  auto check = [&](const ZVec& e, const Rat& c) {
    for (int j = 0; j < f.n; ++j)
      if (f.denom[j] == 1 && e[j] % 2 != 0) return false;
    if (sign == 0) sign = c.sign();
    return c.sign() == sign;
  };
  for (const auto& [e, c] : f.terms)
    if (!check(e, c)) return false;
  for (const auto& m : f.flat)
    if (!check(m.exp, m.scale)) return false;
  return true;
}

// Samples per orthant on a log box [1e-3, 1e3]; returns the set of signs seen per orthant.
std::vector<std::pair<bool, bool>> sample_signs(const PowerData& f, int per_orthant) {
  const bool positive_only = f.has_fractional_exponents();
  const int orthants = positive_only ? 1 : (1 << f.n);
  std::vector<std::pair<bool, bool>> seen(orthants, {false, false});
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> x(f.n);
  for (int o = 0; o < orthants; ++o) {
    for (int k = 0; k < per_orthant; ++k) {
      double scale = 0.0;
      for (int j = 0; j < f.n; ++j) {
        double mag = std::pow(10.0, u(rng));
        x[j] = ((o >> j) & 1) ? -mag : mag;
      }
      double v = f.eval(x);
      for (const auto& [e, c] : f.terms) scale += std::abs(c.to_double() * monomial_value(f, e, x));
      if (std::abs(v) <= 1e-12 * scale) continue;
      if (v > 0) seen[o].first = true;
      else seen[o].second = true;
    }
  }
  return seen;
}

}  // namespace

Ternary one_signed(const PowerData& f) {
  if (f.terms.empty() && f.flat.empty()) return Ternary::Holds;
  if (all_even_same_sign(f)) return Ternary::Holds;
  if (f.flat.empty() && f.terms.size() == 1) return Ternary::Fails;
  auto seen = sample_signs(f, 10000);
  bool pos = false, neg = false;
  for (auto [p, q] : seen) {
    pos = pos || p;
    neg = neg || q;
  }
  return (pos && neg) ? Ternary::Fails : Ternary::Unknown;
}

Ternary nonvanishing_off_axes(const PowerData& f) {
  if (f.terms.empty()) return Ternary::Fails;
  if (f.flat.empty() && f.terms.size() == 1) return Ternary::Holds;
  if (all_even_same_sign(f)) return Ternary::Holds;
  if (f.flat.empty()) {
    if (auto line = collinear_terms(f)) {
      try {
        UPoly q = strip_zero_roots(line_poly(*line));
        return reachable_roots(q, f.has_fractional_exponents()) > 0 ? Ternary::Fails : Ternary::Holds;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Overflow) throw;
      }
    }
  }
  for (auto [p, q] : sample_signs(f, 10000))
    if (p && q) return Ternary::Fails;
  return Ternary::Unknown;
}

}  // namespace newton_osc::newton
