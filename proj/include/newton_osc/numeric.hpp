#pragma once

// Numerical evaluation of weighted zeta functions and oscillatory integrals
// with a bump amplitude, plus the fits that read poles and decay rates off
// the samples.

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "newton_osc/newton.hpp"
#include "newton_osc/zeta.hpp"

namespace newton_osc::numeric {

using newton::PowerData;

// scale * exp(-1 / (1 - |x|^2 / radius^2)) inside the ball, 0 outside.
struct Bump {
  double radius = 0.5;
  double scale = 1.0;
  double operator()(const double* x, int n) const;
  double at_origin() const;
};

// Evaluation budget; NEWTON_OSC_QUAD_BUDGET overrides the default.
long long quadrature_budget();

// Gauss rule on [-1, 1] for the weight (1 - u)^alpha (1 + u)^beta.
struct QuadRule {
  std::vector<double> nodes, weights;
};
QuadRule gauss_jacobi(int points, double alpha, double beta);
QuadRule gauss_legendre(int points);

struct Estimate {
  double value = 0;
  double error = 0;
  long long evaluations = 0;
};

struct ComplexEstimate {
  std::complex<double> value;
  double error = 0;
  long long evaluations = 0;
};

enum class ZetaKind { Abs, Plus, Minus };

struct ZetaOptions {
  ZetaKind kind = ZetaKind::Abs;
  bool positiveOrthantOnly = false;
  double relTol = 1e-9;
  long long budget = 0;  // 0: quadrature_budget()
};

// Smallest s for which every chart integrand is integrable near the origin,
// computed from the monomial parts of all terms and flat markers.
double convergence_abscissa(const PowerData& f, const PowerData& g);

// Z(s) = integral of |f|^s g phi (or the signed variants), n <= 3, integer exponents.
Estimate eval_zeta(const PowerData& f, const PowerData& g, const Bump& phi, double s,
                   const ZetaOptions& opts = {});

struct OscOptions {
  double relTol = 1e-8;     // absolute target relTol * integral of |g phi|
  double switchPhase = 20;  // Gauss below this phase variation per panel, Levin above
  long long budget = 0;
};

// I(t) = integral of exp(i t f) g phi over R^n, n <= 2.
ComplexEstimate eval_oscillatory(const PowerData& f, const PowerData& g, const Bump& phi, double t,
                                 const OscOptions& opts = {});

struct FitResult {
  double exponent = 0;
  std::optional<int> logPower;
  bool logPowerDetermined = false;
  std::complex<double> coefficient;
  double residual = 0;
  std::pair<double, double> sampleRange{0, 0};
  double tolerance = 0;  // declared accuracy of the exponent
  bool poorFit = false;
};

using ZetaSample = std::pair<double, double>;
using DecaySample = std::pair<double, std::complex<double>>;

// Z(s) ~ c (s - s*)^(-rho): rho from the log-log slope, c from a polynomial fit of (s - s*)^rho Z.
FitResult fit_pole(const std::vector<ZetaSample>& samples, const Rat& sStar);
// |I(t)| ~ c t^beta (log t)^(eta - 1).
FitResult fit_decay(const std::vector<DecaySample>& samples);

struct PoleLocation {
  double pole = 0;
  int order = 0;
  double coefficient = 0;
  double residual = 0;
  bool atSearchEdge = false;  // no blow-up found inside the search window
};
// Fits Z(s) ~ c (s - s0)^(-rho) + b over the samples, minimizing over s0 < min s.
PoleLocation locate_pole(const std::vector<ZetaSample>& samples, double searchWidth = 0.25);

// Least squares for t^lambda I(t) = sum_k B_k (log t)^k + t^(-gap) sum_k B'_k (log t)^k, k < rho.
struct SeriesFit {
  std::complex<double> leading;  // coefficient of (log t)^(rho - 1)
  std::vector<std::complex<double>> coefficients;
  double residual = 0;
};
SeriesFit fit_log_series(const std::vector<DecaySample>& samples, double lambda, int rho, double gap = 0.5);

// s* + delta for delta log-spaced in [lo, hi].
std::vector<ZetaSample> zeta_samples(const PowerData& f, const PowerData& g, const Bump& phi, double sStar,
                                     int count, double lo, double hi, const ZetaOptions& opts = {});
std::vector<DecaySample> decay_samples(const PowerData& f, const PowerData& g, const Bump& phi, double tmin,
                                       double tmax, int count, const OscOptions& opts = {});

struct ChartOptions {
  bool positiveOrthantOnly = false;
  // Integrate a single star cone over the whole positive orthant instead of summing cones over the unit cube.
  std::optional<int> singleCone;
  double relTol = 1e-9;
  long long budget = 0;
};
struct ChartCoefficients {
  double Cplus = 0, Cminus = 0;
  double C = 0;  // Cplus + Cminus
  std::complex<double> B;
  int cones = 0;
  long long evaluations = 0;
};
// Leading Laurent coefficient of the zeta functions at -1/d from the chart integrals
// restricted to the principal faces.
ChartCoefficients chart_coefficient_quadrature(const zeta::Analysis& analysis, const Bump& phi,
                                               const ChartOptions& opts = {});

}  // namespace newton_osc::numeric
