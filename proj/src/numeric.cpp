#include "newton_osc/numeric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <unsupported/Eigen/Polynomials>

namespace newton_osc::numeric {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long long kDefaultBudget = 400'000'000;
constexpr int kHighOrder = 16;
constexpr int kLowOrder = 10;
constexpr double kSingularPanel = 0.125;
constexpr unsigned kMaxGkDepth = 14;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

void require_integer_exponents(const PowerData& p) {
  if (p.has_fractional_exponents())
    throw Error(ErrorCode::InvalidInput, "numeric evaluation needs integer exponents");
}

void charge(long long& evals, long long budget, long long count = 1) {
  evals += count;
  if (evals > budget) throw Error(ErrorCode::QuadratureBudgetExceeded, std::to_string(budget) + " evaluations");
}

long long resolve_budget(long long b) { return b > 0 ? b : quadrature_budget(); }

// ---- chart data -----------------------------------------------------------

// coeff * prod_k y_k^yexp[k], times exp(-1 / (radius^2 x_axis^2)) for markers.
struct YTerm {
  double coeff;
  std::vector<double> yexp;
  int axis = -1;
};

struct ChartData {
  int n = 0;
  std::vector<ZVec> rays;  // rays[k][j]: exponent of y_k in x_j
  std::vector<double> lf, w, jac;
  std::vector<YTerm> f, g;
  double radius2 = 1;

  double exponent(int k, double s) const { return lf[k] * s + w[k] + jac[k]; }
};

double scaled_coeff(const Rat& c, const ZVec& alpha, const std::vector<int>& theta, double R) {
  double v = c.to_double();
  for (size_t j = 0; j < alpha.size(); ++j) {
    v *= std::pow(R, static_cast<double>(alpha[j]));
    if (theta[j] < 0 && alpha[j] % 2 != 0) v = -v;
  }
  return v;
}

std::vector<ZVec> all_exponents(const PowerData& p) {
  std::vector<ZVec> out;
  for (const auto& [e, c] : p.terms) out.push_back(e);
  for (const auto& m : p.flat) out.push_back(m.exp);
  return out;
}

double min_pairing(const ZVec& a, const std::vector<ZVec>& exps) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : exps) best = std::min(best, static_cast<double>(dot(a, e)));
  return best;
}

// f(R x) and g(R x) on the orthant theta, pulled back by the chart of the cone.
ChartData build_chart(const fan::Cone& cone, const PowerData& f, const PowerData& g, const std::vector<int>& theta,
                      double R) {
  ChartData c;
  c.n = f.n;
  c.rays = cone.rays;
  c.radius2 = R * R;
  std::vector<ZVec> fpoly;
  for (const auto& [e, co] : f.terms) fpoly.push_back(e);
  auto gall = all_exponents(g);
  for (const auto& a : cone.rays) {
    c.lf.push_back(min_pairing(a, fpoly));
    c.w.push_back(min_pairing(a, gall));
    c.jac.push_back(static_cast<double>(sum_of(a) - 1));
  }
  auto convert = [&](const ZVec& e, const Rat& co, int axis, const std::vector<double>& shift) {
    YTerm t{scaled_coeff(co, e, theta, R), {}, axis};
    for (size_t k = 0; k < cone.rays.size(); ++k) t.yexp.push_back(static_cast<double>(dot(cone.rays[k], e)) - shift[k]);
    return t;
  };
  for (const auto& [e, co] : f.terms) c.f.push_back(convert(e, co, -1, c.lf));
  for (const auto& m : f.flat) c.f.push_back(convert(m.exp, m.scale, m.axis, c.lf));
  for (const auto& [e, co] : g.terms) c.g.push_back(convert(e, co, -1, c.w));
  for (const auto& m : g.flat) c.g.push_back(convert(m.exp, m.scale, m.axis, c.w));
  return c;
}

// Evaluates the smooth factor |f~|^s g~ phi at y; coordinates flagged in zero are exactly 0.
struct ChartEvaluator {
  const ChartData* c;
  const Bump* phi;
  double s;
  ZetaKind kind;
  std::vector<bool> zero;

  double sum_terms(const std::vector<YTerm>& terms, const std::vector<double>& ly, const std::vector<double>& x) const {
    double total = 0;
    for (const auto& t : terms) {
      double lg = 0;
      bool vanish = false;
      for (int k = 0; k < c->n; ++k) {
        if (t.yexp[k] == 0) continue;
        if (zero[k]) {
          if (t.yexp[k] > 0) {
            vanish = true;
            break;
          }
          throw Error(ErrorCode::InvalidInput, "flat term dominates the leading pole");
        }
        lg += t.yexp[k] * ly[k];
      }
      if (vanish) continue;
      if (t.axis >= 0) {
        double xa = x[t.axis];
        if (xa == 0) continue;
        lg -= 1.0 / (c->radius2 * xa * xa);
      }
      total += t.coeff * std::exp(lg);
    }
    return total;
  }

  double operator()(const double* y) const {
    const int n = c->n;
    std::vector<double> ly(n), x(n);
    for (int k = 0; k < n; ++k) ly[k] = zero[k] ? 0.0 : std::log(y[k]);
    double r2 = 0;
    for (int j = 0; j < n; ++j) {
      double l = 0;
      bool vanish = false;
      for (int k = 0; k < n; ++k) {
        long long a = c->rays[k][j];
        if (a == 0) continue;
        if (zero[k]) vanish = true;
        else l += static_cast<double>(a) * ly[k];
      }
      x[j] = vanish ? 0.0 : std::exp(l);
      r2 += x[j] * x[j];
    }
    if (r2 >= 1.0) return 0.0;
    double ph = phi->scale * std::exp(-1.0 / (1.0 - r2));
    if (ph == 0.0) return 0.0;
    double ft = sum_terms(c->f, ly, x);
    double fp = 0;
    switch (kind) {
      case ZetaKind::Abs: fp = ft == 0 ? 0 : std::pow(std::abs(ft), s); break;
      case ZetaKind::Plus: fp = ft > 0 ? std::pow(ft, s) : 0; break;
      case ZetaKind::Minus: fp = ft < 0 ? std::pow(-ft, s) : 0; break;
    }
    if (fp == 0) return 0.0;
    return fp * sum_terms(c->g, ly, x) * ph;
  }
};

// ---- nested integration over the unit cube with endpoint weights y^e ------

class NestedIntegrator {
 public:
  NestedIntegrator(std::vector<double> exps, std::function<double(const double*)> F, double relTol, long long& evals,
                   long long budget, bool infinite)
      : e_(std::move(exps)), F_(std::move(F)), tol_(relTol), evals_(evals), budget_(budget), infinite_(infinite) {
    for (double e : e_) {
      if (!(e > -1)) throw Error(ErrorCode::InvalidInput, "integrand is not integrable at the origin");
      hi_.push_back(gauss_jacobi(kHighOrder, 0, e));
      lo_.push_back(gauss_jacobi(kLowOrder, 0, e));
    }
    y_.assign(e_.size(), 0.0);
  }

  Estimate run() {
    Estimate est;
    est.value = e_.empty() ? leaf() : level(0, &est.error);
    return est;
  }

 private:
  double leaf() {
    charge(evals_, budget_);
    return F_(y_.data());
  }

  // Inner integrand at y_k = u; for the half line y = u / (1 - u).
  double inner(size_t k, double u) {
    double factor = 1;
    if (infinite_) {
      if (u >= 1) return 0;
      y_[k] = u / (1 - u);
      factor = std::pow(1 - u, -e_[k] - 2);
    } else {
      y_[k] = u;
    }
    double v = k + 1 == e_.size() ? leaf() : level(k + 1, nullptr);
    return factor * v;
  }

  double level(size_t k, double* error) {
    double err = 0;
    double total = singular(k, kSingularPanel, 0, err);
    double gkErr = 0;
    total += GK::integrate([&](double u) { return std::pow(u, e_[k]) * inner(k, u); }, kSingularPanel, 1.0,
                           kMaxGkDepth, tol_, &gkErr);
    if (error) *error = err + gkErr;
    return total;
  }

  double gj(size_t k, const QuadRule& r, double b) {
    double sum = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * inner(k, b * (1 + r.nodes[i]) / 2);
    return std::pow(b / 2, e_[k] + 1) * sum;
  }

  double singular(size_t k, double b, int depth, double& err) {
    double h = gj(k, hi_[k], b);
    double l = gj(k, lo_[k], b);
    double diff = std::abs(h - l);
    if (diff <= tol_ * std::abs(h) || diff < 1e-300 || depth >= 24) {
      err += diff;
      return h;
    }
    double a = b / 8;
    double gkErr = 0;
    double r = GK::integrate([&](double u) { return std::pow(u, e_[k]) * inner(k, u); }, a, b, kMaxGkDepth, tol_,
                             &gkErr);
    err += gkErr;
    return singular(k, a, depth + 1, err) + r;
  }

  std::vector<double> e_;
  std::function<double(const double*)> F_;
  double tol_;
  long long& evals_;
  long long budget_;
  bool infinite_;
  std::vector<QuadRule> hi_, lo_;
  std::vector<double> y_;
};

std::vector<std::vector<int>> orthants(int n, bool positiveOnly) {
  std::vector<std::vector<int>> out;
  int count = positiveOnly ? 1 : (1 << n);
  for (int o = 0; o < count; ++o) {
    std::vector<int> theta(n);
    for (int j = 0; j < n; ++j) theta[j] = ((o >> j) & 1) ? -1 : 1;
    out.push_back(theta);
  }
  return out;
}

fan::Fan numeric_fan(const PowerData& f, const PowerData& g) {
  zeta::Context ctx = zeta::make_context(f, g);
  return zeta::analysis_fan(ctx);
}

// ---- oscillatory 1D engine ------------------------------------------------

struct Oscillator {
  std::function<double(double)> F, dF, A;
  double t;
  double switchPhase;
  long long& evals;
  long long budget;

  std::complex<double> gauss(const QuadRule& r, double a, double b) {
    double m = (a + b) / 2, h = (b - a) / 2;
    std::complex<double> sum = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
      double x = m + h * r.nodes[i];
      sum += r.weights[i] * A(x) * std::polar(1.0, t * F(x));
    }
    charge(evals, budget, static_cast<long long>(r.nodes.size()));
    return h * sum;
  }

  // Collocation for p' + i t F' p = A; the integral is p e^{i t F} between the endpoints.
  std::complex<double> levin(int N, double a, double b) {
    double m = (a + b) / 2, h = (b - a) / 2;
    Eigen::MatrixXcd M(N, N);
    Eigen::VectorXcd rhs(N);
    for (int i = 0; i < N; ++i) {
      double th = kPi * i / (N - 1);
      double u = std::cos(th);
      double x = m + h * u;
      double dfx = dF(x);
      rhs(i) = A(x);
      for (int j = 0; j < N; ++j) {
        double Tj = std::cos(j * th);
        double dTj;
        if (i == 0) dTj = static_cast<double>(j) * j;
        else if (i == N - 1) dTj = ((j % 2) ? 1.0 : -1.0) * j * j;
        else dTj = j * std::sin(j * th) / std::sin(th);
        M(i, j) = std::complex<double>(dTj / h, t * dfx * Tj);
      }
    }
    charge(evals, budget, N);
    Eigen::VectorXcd c = M.partialPivLu().solve(rhs);
    std::complex<double> pb = 0, pa = 0;
    for (int j = 0; j < N; ++j) {
      pb += c(j);
      pa += (j % 2 ? -1.0 : 1.0) * c(j);
    }
    return pb * std::polar(1.0, t * F(b)) - pa * std::polar(1.0, t * F(a));
  }

  std::complex<double> panel(double a, double b, double tol, int depth, double& err) {
    static const QuadRule hi = gauss_legendre(kHighOrder), lo = gauss_legendre(kLowOrder);
    double delta = t * std::abs(F(b) - F(a));
    std::complex<double> h, l;
    if (delta <= switchPhase) {
      h = gauss(hi, a, b);
      l = gauss(lo, a, b);
    } else {
      h = levin(24, a, b);
      l = levin(16, a, b);
    }
    double diff = std::abs(h - l);
    if (!std::isfinite(diff)) diff = std::numeric_limits<double>::max();
    if (diff <= tol || depth >= 48 || (b - a) < 1e-13 * (1 + std::abs(a))) {
      err += std::isfinite(std::abs(h)) ? diff : 0;
      return std::isfinite(std::abs(h)) ? h : gauss(hi, a, b);
    }
    double mid = (a + b) / 2;
    return panel(a, mid, tol / 2, depth + 1, err) + panel(mid, b, tol / 2, depth + 1, err);
  }

  std::complex<double> integrate(double a, double b, std::vector<double> breaks, double tol, double& err) {
    breaks.push_back(a);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    std::complex<double> total = 0;
    double len = b - a;
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
      double lo = std::max(a, breaks[i]), hi = std::min(b, breaks[i + 1]);
      if (hi - lo <= 1e-15 * (1 + std::abs(lo))) continue;
      total += panel(lo, hi, tol * (hi - lo) / len, 0, err);
    }
    return total;
  }
};

// Real roots inside (a, b) of a polynomial given low degree first.
std::vector<double> real_roots_in(std::vector<double> coeffs, double a, double b) {
  double scale = 0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  while (!coeffs.empty() && std::abs(coeffs.back()) <= 1e-14 * scale) coeffs.pop_back();
  std::vector<double> out;
  if (coeffs.size() < 2) return out;
  Eigen::VectorXd v(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) v(i) = coeffs[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(v);
  for (int i = 0; i < solver.roots().size(); ++i) {
    auto z = solver.roots()(i);
    if (std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z.real())) && z.real() > a && z.real() < b)
      out.push_back(z.real());
  }
  return out;
}

// Partial derivative of p in direction k at x, markers included.
double partial(const PowerData& p, int k, const std::vector<double>& x) {
  double total = 0;
  auto mono = [&](const ZVec& e, int skip) {
    double v = 1;
    for (int j = 0; j < p.n; ++j) {
      long long pw = e[j] - (j == skip ? 1 : 0);
      if (pw > 0) v *= std::pow(x[j], static_cast<double>(pw));
    }
    return v;
  };
  for (const auto& [e, c] : p.terms)
    if (e[k] > 0) total += c.to_double() * static_cast<double>(e[k]) * mono(e, k);
  for (const auto& m : p.flat) {
    double xa = x[m.axis];
    if (xa == 0) continue;
    double base = m.scale.to_double() * std::exp(-1.0 / (xa * xa));
    double d = m.exp[k] > 0 ? static_cast<double>(m.exp[k]) * mono(m.exp, k) : 0.0;
    if (k == m.axis) d += mono(m.exp, -1) * 2.0 / (xa * xa * xa);
    total += base * d;
  }
  return total;
}

// Coefficients in x_k of the polynomial part of d/dx_k p with the other coordinates fixed.
std::vector<double> derivative_in(const PowerData& p, int k, const std::vector<double>& x) {
  std::vector<double> c;
  for (const auto& [e, co] : p.terms) {
    if (e[k] == 0) continue;
    double v = co.to_double() * static_cast<double>(e[k]);
    for (int j = 0; j < p.n; ++j)
      if (j != k) v *= std::pow(x[j], static_cast<double>(e[j]));
    size_t deg = static_cast<size_t>(e[k] - 1);
    if (c.size() <= deg) c.resize(deg + 1, 0.0);
    c[deg] += v;
  }
  return c;
}

// Adaptive complex Gauss-Kronrod with an absolute tolerance.
template <class Fn>
std::complex<double> adaptive_complex(Fn&& f, double a, double b, double tol, int depth, double& err,
                                      double parentErr = std::numeric_limits<double>::infinity()) {
  double e = 0;
  std::complex<double> v = GK::integrate(f, a, b, 0, 0.0, &e);
  // Stop at the tolerance, at the depth limit, or when refinement no longer reduces the error (noise floor).
  if (e <= tol || depth >= 40 || (depth > 8 && e > 0.5 * parentErr)) {
    err += e;
    return v;
  }
  double m = (a + b) / 2;
  return adaptive_complex(f, a, m, tol / 2, depth + 1, err, e) + adaptive_complex(f, m, b, tol / 2, depth + 1, err, e);
}

struct LinearFit {
  Eigen::VectorXd coef;
  double rms = 0;
};

LinearFit least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  LinearFit out;
  out.coef = X.colPivHouseholderQr().solve(y);
  Eigen::VectorXd r = X * out.coef - y;
  out.rms = std::sqrt(r.squaredNorm() / static_cast<double>(y.size()));
  return out;
}

}  // namespace

double Bump::operator()(const double* x, int n) const {
  double r2 = 0;
  for (int j = 0; j < n; ++j) r2 += x[j] * x[j];
  double q = r2 / (radius * radius);
  if (q >= 1) return 0;
  return scale * std::exp(-1.0 / (1.0 - q));
}

double Bump::at_origin() const { return scale * std::exp(-1.0); }

long long quadrature_budget() {
  if (const char* env = std::getenv("NEWTON_OSC_QUAD_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return kDefaultBudget;
}

QuadRule gauss_jacobi(int points, double alpha, double beta) {
  if (points < 1 || !(alpha > -1) || !(beta > -1)) throw Error(ErrorCode::InvalidInput, "bad Gauss-Jacobi request");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(points, points);
  const double ab = alpha + beta;
  for (int k = 0; k < points; ++k) {
    double s = 2.0 * k + ab;
    J(k, k) = k == 0 ? (beta - alpha) / (ab + 2) : (beta * beta - alpha * alpha) / (s * (s + 2));
    if (k + 1 < points) {
      int m = k + 1;
      double sm = 2.0 * m + ab;
      double b2 = m == 1 ? 4.0 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab))
                         : 4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (sm * sm * (sm + 1) * (sm - 1));
      J(k, k + 1) = J(k + 1, k) = std::sqrt(b2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  double mu0 = std::exp((ab + 1) * std::log(2.0) + std::lgamma(alpha + 1) + std::lgamma(beta + 1) - std::lgamma(ab + 2));
  QuadRule r;
  for (int i = 0; i < points; ++i) {
    r.nodes.push_back(es.eigenvalues()(i));
    double v = es.eigenvectors()(0, i);
    r.weights.push_back(mu0 * v * v);
  }
  return r;
}

QuadRule gauss_legendre(int points) { return gauss_jacobi(points, 0, 0); }

double convergence_abscissa(const PowerData& f, const PowerData& g) {
  require_integer_exponents(f);
  require_integer_exponents(g);
  fan::Fan fan = numeric_fan(f, g);
  std::vector<ZVec> fpoly;
  for (const auto& [e, c] : f.terms) fpoly.push_back(e);
  auto gall = all_exponents(g);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : fan.rays()) {
    double lf = min_pairing(a, fpoly);
    if (lf <= 0) continue;
    best = std::max(best, -(min_pairing(a, gall) + static_cast<double>(sum_of(a))) / lf);
  }
  return best;
}

Estimate eval_zeta(const PowerData& f, const PowerData& g, const Bump& phi, double s, const ZetaOptions& opts) {
  const int n = f.n;
  if (n > 3) throw Error(ErrorCode::DimensionTooLarge, "eval_zeta supports n <= 3");
  require_integer_exponents(f);
  require_integer_exponents(g);
  const long long budget = resolve_budget(opts.budget);
  fan::Fan fan = numeric_fan(f, g);
  Bump unit{1.0, phi.scale};
  Estimate total;
  for (const auto& theta : orthants(n, opts.positiveOrthantOnly)) {
    for (const auto& cone : fan.cones) {
      ChartData chart = build_chart(cone, f, g, theta, phi.radius);
      std::vector<double> e;
      for (int k = 0; k < n; ++k) e.push_back(chart.exponent(k, s));
      ChartEvaluator ev{&chart, &unit, s, opts.kind, std::vector<bool>(n, false)};
      NestedIntegrator integ(e, std::cref(ev), opts.relTol, total.evaluations, budget, false);
      Estimate part = integ.run();
      total.value += part.value;
      total.error += part.error;
    }
  }
  double jac = std::pow(phi.radius, n);
  total.value *= jac;
  total.error *= jac;
  return total;
}

ComplexEstimate eval_oscillatory(const PowerData& f, const PowerData& g, const Bump& phi, double t,
                                 const OscOptions& opts) {
  const int n = f.n;
  if (n > 2) throw Error(ErrorCode::DimensionTooLarge, "eval_oscillatory supports n <= 2");
  require_integer_exponents(f);
  require_integer_exponents(g);
  const long long budget = resolve_budget(opts.budget);
  const double R = phi.radius;
  ComplexEstimate out;
  long long& evals = out.evaluations;

  if (n == 1) {
    auto amp = [&](double x) { return g.eval({x}) * phi(&x, 1); };
    double l1 = GK::integrate([&](double x) { return std::abs(amp(x)); }, -R, R, kMaxGkDepth, 1e-8);
    Oscillator osc{[&](double x) { return f.eval({x}); }, [&](double x) { return partial(f, 0, {x}); }, amp, t,
                   opts.switchPhase, evals, budget};
    auto breaks = real_roots_in(derivative_in(f, 0, {0.0}), -R, R);
    breaks.push_back(0.0);
    out.value = osc.integrate(-R, R, breaks, opts.relTol * std::max(l1, 1e-300), out.error);
    return out;
  }

  auto absAmp = [&](double x1) {
    double rho = R * std::sqrt(std::max(0.0, 1 - x1 * x1 / (R * R)));
    return GK::integrate(
        [&](double x2) {
          double x[2] = {x1, x2};
          return std::abs(g.eval({x1, x2})) * phi(x, 2);
        },
        -rho, rho, 10, 1e-7);
  };
  double l1 = GK::integrate(absAmp, -R, R, 10, 1e-7);
  const double tolAbs = opts.relTol * std::max(l1, 1e-300);

  auto inner = [&](double x1) -> std::complex<double> {
    double rho = R * std::sqrt(std::max(0.0, 1 - x1 * x1 / (R * R)));
    if (rho <= 0) return 0;
    Oscillator osc{[&](double x2) { return f.eval({x1, x2}); },
                   [&](double x2) { return partial(f, 1, {x1, x2}); },
                   [&](double x2) {
                     double x[2] = {x1, x2};
                     return g.eval({x1, x2}) * phi(x, 2);
                   },
                   t,
                   opts.switchPhase,
                   evals,
                   budget};
    auto breaks = real_roots_in(derivative_in(f, 1, {x1, 0.0}), -rho, rho);
    breaks.push_back(0.0);
    double err = 0;
    return osc.integrate(-rho, rho, breaks, tolAbs / (4 * R), err);
  };
  double err = 0;
  out.value = adaptive_complex(inner, -R, 0.0, tolAbs / 4, 0, err) + adaptive_complex(inner, 0.0, R, tolAbs / 4, 0, err);
  out.error = err;
  return out;
}

FitResult fit_pole(const std::vector<ZetaSample>& samples, const Rat& sStar) {
  if (samples.size() < 8) throw Error(ErrorCode::InsufficientSamples, "fit_pole needs at least 8 samples");
  const double s0 = sStar.to_double();
  const int N = static_cast<int>(samples.size());
  Eigen::MatrixXd X(N, 2);
  Eigen::VectorXd y(N);
  FitResult r;
  r.sampleRange = {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (int i = 0; i < N; ++i) {
    double d = samples[i].first - s0;
    if (!(d > 0) || samples[i].second == 0) throw Error(ErrorCode::InvalidInput, "samples must lie right of the pole");
    X(i, 0) = 1;
    X(i, 1) = std::log(d);
    y(i) = std::log(std::abs(samples[i].second));
    r.sampleRange.first = std::min(r.sampleRange.first, d);
    r.sampleRange.second = std::max(r.sampleRange.second, d);
  }
  LinearFit slope = least_squares(X, y);
  r.exponent = -slope.coef(1);
  int rho = std::max(0, static_cast<int>(std::lround(r.exponent)));
  r.logPower = rho;
  r.logPowerDetermined = true;
  Eigen::MatrixXd P(N, 3);
  Eigen::VectorXd z(N);
  for (int i = 0; i < N; ++i) {
    double d = samples[i].first - s0;
    P(i, 0) = 1;
    P(i, 1) = d;
    P(i, 2) = d * d;
    z(i) = std::pow(d, rho) * samples[i].second;
  }
  LinearFit poly = least_squares(P, z);
  r.coefficient = poly.coef(0);
  r.residual = poly.rms / std::max(std::abs(poly.coef(0)), 1e-300);
  r.tolerance = 0.5;
  r.poorFit = r.residual > 1e-3 || std::abs(r.exponent - rho) > 0.3;
  return r;
}

FitResult fit_decay(const std::vector<DecaySample>& samples) {
  if (samples.size() < 12) throw Error(ErrorCode::InsufficientSamples, "fit_decay needs at least 12 samples");
  const int N = static_cast<int>(samples.size());
  FitResult r;
  double tmin = std::numeric_limits<double>::infinity(), tmax = 0;
  for (const auto& [t, v] : samples) {
    tmin = std::min(tmin, t);
    tmax = std::max(tmax, t);
  }
  if (!(tmin > 1) || tmax < 100 * tmin)
    throw Error(ErrorCode::InsufficientSamples, "fit_decay needs t > 1 over at least two decades");
  r.sampleRange = {tmin, tmax};
  Eigen::MatrixXd X(N, 2), X3(N, 3);
  Eigen::VectorXd y(N);
  for (int i = 0; i < N; ++i) {
    double lt = std::log(samples[i].first);
    X(i, 0) = X3(i, 0) = 1;
    X(i, 1) = X3(i, 1) = lt;
    X3(i, 2) = std::log(lt);
    y(i) = std::log(std::abs(samples[i].second));
  }
  LinearFit two = least_squares(X, y);
  r.exponent = two.coef(1);
  r.residual = two.rms;
  r.tolerance = 0.05;
  Eigen::MatrixXd Xn = X3;
  for (int c = 0; c < 3; ++c) Xn.col(c) /= Xn.col(c).norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xn);
  double cond = svd.singularValues()(0) / std::max(svd.singularValues()(2), 1e-300);
  if (cond < 50) {
    LinearFit three = least_squares(X3, y);
    r.logPower = static_cast<int>(std::lround(three.coef(2)));
    r.logPowerDetermined = true;
  }
  std::complex<double> num = 0;
  double den = 0;
  for (const auto& [t, v] : samples) {
    double p = std::pow(t, r.exponent);
    num += p * v;
    den += p * p;
  }
  r.coefficient = num / den;
  r.poorFit = r.residual > 0.05;
  return r;
}

PoleLocation locate_pole(const std::vector<ZetaSample>& samples, double searchWidth) {
  if (samples.size() < 8) throw Error(ErrorCode::InsufficientSamples, "locate_pole needs at least 8 samples");
  double smin = std::numeric_limits<double>::infinity();
  for (const auto& [s, z] : samples) smin = std::min(smin, s);
  const int N = static_cast<int>(samples.size());

  struct Trial {
    double objective, c;
  };
  auto evaluate = [&](double s0, int rho) {
    Eigen::MatrixXd X(N, 2);
    Eigen::VectorXd y(N);
    for (int i = 0; i < N; ++i) {
      double w = 1.0 / std::abs(samples[i].second);
      X(i, 0) = w * std::pow(samples[i].first - s0, -rho);
      X(i, 1) = w;
      y(i) = w * samples[i].second;
    }
    LinearFit fit = least_squares(X, y);
    return Trial{fit.rms, fit.coef(0)};
  };

  // Search in u = log(smin - s0).
  double gap = std::max(1e-15, 1e-6 * (smin - samples.front().first + 1e-12));
  for (const auto& [s, z] : samples)
    if (s > smin) gap = std::min(gap, 1e-3 * (s - smin));
  const double uLo = std::log(gap), uHi = std::log(searchWidth);
  PoleLocation best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int rho = 1; rho <= 3; ++rho) {
    auto obj = [&](double u) { return evaluate(smin - std::exp(u), rho).objective; };
    const int grid = 240;
    int bi = 0;
    double bv = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid; ++i) {
      double v = obj(uLo + (uHi - uLo) * i / grid);
      if (v < bv) {
        bv = v;
        bi = i;
      }
    }
    double a = uLo + (uHi - uLo) * std::max(0, bi - 1) / grid;
    double b = uLo + (uHi - uLo) * std::min(grid, bi + 1) / grid;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = obj(c), fd = obj(d);
    for (int it = 0; it < 80; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - g * (b - a);
        fc = obj(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + g * (b - a);
        fd = obj(d);
      }
    }
    double u = (a + b) / 2;
    Trial tr = evaluate(smin - std::exp(u), rho);
    // A higher order must improve the fit clearly to be preferred.
    if (tr.objective < 0.5 * best.residual) {
      best.pole = smin - std::exp(u);
      best.order = rho;
      best.coefficient = tr.c;
      best.residual = tr.objective;
      best.atSearchEdge = u > uHi - 0.01 * (uHi - uLo);
    }
  }
  return best;
}

SeriesFit fit_log_series(const std::vector<DecaySample>& samples, double lambda, int rho, double gap) {
  if (rho < 1) throw Error(ErrorCode::InvalidInput, "rho must be positive");
  const int N = static_cast<int>(samples.size());
  const int P = 2 * rho;
  if (N < P + 2) throw Error(ErrorCode::InsufficientSamples, "too few samples for the series fit");
  Eigen::MatrixXcd X(N, P);
  Eigen::VectorXcd y(N);
  for (int i = 0; i < N; ++i) {
    double t = samples[i].first, lt = std::log(t);
    for (int k = 0; k < rho; ++k) {
      X(i, k) = std::pow(lt, k);
      X(i, rho + k) = std::pow(t, -gap) * std::pow(lt, k);
    }
    y(i) = std::pow(t, lambda) * samples[i].second;
  }
  Eigen::VectorXd scale(P);
  for (int c = 0; c < P; ++c) {
    scale(c) = X.col(c).norm();
    X.col(c) /= scale(c);
  }
  Eigen::VectorXcd c = X.colPivHouseholderQr().solve(y);
  SeriesFit out;
  for (int k = 0; k < P; ++k) out.coefficients.push_back(c(k) / scale(k));
  out.leading = out.coefficients[rho - 1];
  out.residual = (X * c - y).norm() / std::max(y.norm(), 1e-300);
  return out;
}

std::vector<ZetaSample> zeta_samples(const PowerData& f, const PowerData& g, const Bump& phi, double sStar,
                                     int count, double lo, double hi, const ZetaOptions& opts) {
  std::vector<std::future<ZetaSample>> jobs;
  for (int i = 0; i < count; ++i) {
    double d = lo * std::pow(hi / lo, count == 1 ? 0.0 : static_cast<double>(i) / (count - 1));
    double s = sStar + d;
    jobs.push_back(std::async(std::launch::async, [&, s] { return ZetaSample{s, eval_zeta(f, g, phi, s, opts).value}; }));
  }
  std::vector<ZetaSample> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<DecaySample> decay_samples(const PowerData& f, const PowerData& g, const Bump& phi, double tmin,
                                       double tmax, int count, const OscOptions& opts) {
  std::vector<std::future<DecaySample>> jobs;
  for (int i = 0; i < count; ++i) {
    double t = tmin * std::pow(tmax / tmin, count == 1 ? 0.0 : static_cast<double>(i) / (count - 1));
    jobs.push_back(
        std::async(std::launch::async, [&, t] { return DecaySample{t, eval_oscillatory(f, g, phi, t, opts).value}; }));
  }
  std::vector<DecaySample> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

ChartCoefficients chart_coefficient_quadrature(const zeta::Analysis& an, const Bump& phi, const ChartOptions& opts) {
  const auto& ctx = an.ctx;
  if (ctx.reduced) throw Error(ErrorCode::InvalidInput, "numeric evaluation needs integer exponents");
  const int n = ctx.f.n;
  const int m = ctx.pair.m;
  if (n > 3) throw Error(ErrorCode::DimensionTooLarge, "chart quadrature supports n <= 3");
  if (an.ledger.distanceAboveOne != newton::Ternary::Holds && an.ledger.phaseSign != newton::Ternary::Holds &&
      an.ledger.notOddAndNonvanishing != newton::Ternary::Holds)
    throw Error(ErrorCode::GatesNotHeld, "no gate of (iv) holds");
  const long long budget = resolve_budget(opts.budget);
  const double sStar = -ctx.pair.d.inverse().to_double();
  std::vector<int> star;
  for (size_t i = 0; i < an.cones.size(); ++i)
    if (std::popcount(an.cones[i].A) == m) star.push_back(static_cast<int>(i));
  if (opts.singleCone) {
    if (*opts.singleCone < 0 || *opts.singleCone >= static_cast<int>(star.size()))
      throw Error(ErrorCode::InvalidInput, "star cone index out of range");
    star = {star[*opts.singleCone]};
  }
  Bump unit{1.0, phi.scale};
  ChartCoefficients out;
  out.cones = static_cast<int>(star.size());
  for (const auto& theta : orthants(n, opts.positiveOrthantOnly || ctx.reduced)) {
    for (int idx : star) {
      const auto& rec = an.cones[idx];
      ChartData chart = build_chart(rec.cone, ctx.f, ctx.g, theta, phi.radius);
      std::vector<bool> zero(n, false);
      std::vector<ZVec> gpoly;
      for (const auto& [ex, co] : ctx.g.terms) gpoly.push_back(ex);
      double L = 1;
      for (int k = 0; k < n; ++k)
        if (rec.A & (1u << k)) {
          if (!gpoly.empty() && chart.w[k] < min_pairing(rec.cone.rays[k], gpoly))
            throw Error(ErrorCode::InvalidInput, "flat term dominates the leading pole");
          zero[k] = true;
          L /= chart.lf[k];
        }
      std::vector<double> e;
      std::vector<int> freeAxes;
      for (int k = 0; k < n; ++k)
        if (!zero[k]) {
          e.push_back(chart.exponent(k, sStar));
          freeAxes.push_back(k);
        }
      for (auto kind : {ZetaKind::Plus, ZetaKind::Minus}) {
        ChartEvaluator ev{&chart, &unit, sStar, kind, zero};
        auto F = [&](const double* yf) {
          std::vector<double> y(n, 0.0);
          for (size_t i = 0; i < freeAxes.size(); ++i) y[freeAxes[i]] = yf[i];
          return ev(y.data());
        };
        NestedIntegrator integ(e, F, opts.relTol, out.evaluations, budget, opts.singleCone.has_value());
        double v = L * integ.run().value;
        (kind == ZetaKind::Plus ? out.Cplus : out.Cminus) += v;
      }
    }
  }
  double jac = std::pow(phi.radius, n);
  out.Cplus *= jac;
  out.Cminus *= jac;
  out.C = out.Cplus + out.Cminus;
  out.B = zeta::mellin_coefficient(ctx.pair.d.inverse(), m, out.Cplus, out.Cminus);
  return out;
}

}  // namespace newton_osc::numeric
