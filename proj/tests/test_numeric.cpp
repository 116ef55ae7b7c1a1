#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "newton_osc/examples.hpp"
#include "newton_osc/numeric.hpp"

using namespace newton_osc;
using namespace newton_osc::numeric;

namespace {
double line_integral(const Bump& phi) {
  auto h = [&](double x) { return phi(&x, 1); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(h, -phi.radius, phi.radius, 15, 1e-14);
}
}  // namespace

TEST_CASE("bump is positive inside and vanishes outside") {
  Bump phi{0.5, 2.0};
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 1000; ++i) {
    double x[3] = {u(rng), u(rng), u(rng)};
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    double v = phi(x, 3);
    if (r < 0.45) CHECK(v > 0);
    if (r >= 0.5) CHECK(v == 0);
    CHECK(v >= 0);
  }
  double o[2] = {0, 0};
  CHECK(phi(o, 2) == doctest::Approx(phi.at_origin()));
  CHECK(phi.at_origin() == doctest::Approx(2.0 / M_E));
}

TEST_CASE("Gauss-Jacobi rules integrate the weighted monomials exactly") {
  for (double beta : {-0.75, -0.3, 0.0, 1.5}) {
    auto r = gauss_jacobi(10, 0.0, beta);
    for (int k = 0; k < 19; ++k) {
      double sum = 0;
      for (size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(1 + r.nodes[i], k);
      // integral over [-1, 1] of (1 + u)^(beta + k)
      double exact = std::pow(2.0, beta + k + 1) / (beta + k + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("zeta at s = 0 is the integral of the amplitude") {
  Bump phi;
  auto z = eval_zeta(PowerData::monomial({2}), PowerData::unit(1), phi, 0.0);
  CHECK(z.value == doctest::Approx(line_integral(phi)).epsilon(1e-9));
  // frozen reference value
  CHECK(z.value == doctest::Approx(0.221996908084).epsilon(1e-10));
}

TEST_CASE("one dimensional zeta has the closed form pole") {
  Bump phi;
  // 2 * integral_0^R x^(2s) phi dx has residue phi(0) at s = -1/2
  for (double delta : {1e-3, 1e-5}) {
    auto z = eval_zeta(PowerData::monomial({2}), PowerData::unit(1), phi, -0.5 + delta);
    CHECK(z.value * delta == doctest::Approx(phi.at_origin()).epsilon(2 * delta * 10 + 1e-6));
  }
}

TEST_CASE("convergence abscissa") {
  CHECK(convergence_abscissa(PowerData::monomial({4, 0}), PowerData::monomial({2, 2})) == doctest::Approx(-0.75));
  auto c = examples::flat_weight_plane(2, 1, Rat(1));
  CHECK(convergence_abscissa(c.f, c.g) == doctest::Approx(-0.75));
}

TEST_CASE("flat-marker monotonicity") {
  Bump phi;
  auto f = PowerData::monomial({4, 0});
  auto base = PowerData::monomial({2, 2});
  double z0 = eval_zeta(f, base, phi, -0.5).value;
  double prev = 0, slope = 0;
  for (int k = 0; k < 4; ++k) {
    double eps = std::pow(10.0, -k);
    auto g = base;
    g.add_flat({2, 2}, 1, Rat(1, static_cast<long long>(std::llround(1 / eps))));
    double diff = eval_zeta(f, g, phi, -0.5).value - z0;
    CHECK(diff > 0);
    if (k == 0) slope = diff;
    else {
      CHECK(diff < prev);
      CHECK(diff / eps == doctest::Approx(slope).epsilon(1e-4));
    }
    prev = diff;
  }
}

TEST_CASE("quadrature budget comes from the environment") {
  setenv("NEWTON_OSC_QUAD_BUDGET", "100", 1);
  CHECK(quadrature_budget() == 100);
  try {
    eval_zeta(PowerData::monomial({2, 2}), PowerData::unit(2), Bump{}, -0.2);
    FAIL("budget not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureBudgetExceeded);
  }
  unsetenv("NEWTON_OSC_QUAD_BUDGET");
  CHECK(quadrature_budget() > 100);
}

TEST_CASE("dimension limits") {
  CHECK_THROWS_AS(eval_oscillatory(PowerData::monomial({2, 2, 2}), PowerData::unit(3), Bump{}, 10.0), Error);
  CHECK_THROWS_AS(eval_zeta(PowerData::monomial({2, 2, 2, 2}), PowerData::unit(4), Bump{}, 0.0), Error);
}

TEST_CASE("Fresnel integral matches the stationary phase value") {
  Bump phi;
  auto I = eval_oscillatory(PowerData::monomial({2}), PowerData::unit(1), phi, 1000.0);
  std::complex<double> lead = std::sqrt(M_PI / 1000.0) * std::polar(1.0, M_PI / 4) * phi.at_origin();
  CHECK(std::abs(std::abs(I.value) - std::abs(lead)) / std::abs(lead) < 1e-4);
  CHECK(std::abs(I.value - lead) / std::abs(lead) < 1e-2);
}

TEST_CASE("synthetic pole fit") {
  std::vector<ZetaSample> s;
  for (int i = 0; i < 12; ++i) {
    double d = 1e-4 * std::pow(10.0, i * 3.0 / 11);
    s.push_back({-0.75 + d, 2.5 / (d * d) + 0.3 / d + 1.0});
  }
  auto r = fit_pole(s, Rat(-3, 4));
  REQUIRE(r.logPower);
  CHECK(*r.logPower == 2);
  CHECK(r.coefficient.real() == doctest::Approx(2.5).epsilon(1e-3));
  CHECK_FALSE(r.poorFit);
  s.resize(5);
  CHECK_THROWS_AS(fit_pole(s, Rat(-3, 4)), Error);
}

TEST_CASE("synthetic decay fit") {
  std::vector<DecaySample> s;
  for (int i = 0; i < 16; ++i) {
    double t = 100 * std::pow(100.0, i / 15.0);
    s.push_back({t, std::complex<double>(0.8, 0.2) * std::pow(t, -0.7) * (1 + 2 / t)});
  }
  auto r = fit_decay(s);
  CHECK(r.exponent == doctest::Approx(-0.7).epsilon(0.01));
}

TEST_CASE("synthetic pole location") {
  std::vector<ZetaSample> s;
  const double s0 = -0.6;
  for (int i = 0; i < 16; ++i) {
    double x = s0 + 1e-6 * std::pow(10.0, i * 5.0 / 15);
    s.push_back({x, 0.4 / (x - s0) + 2.0});
  }
  auto loc = locate_pole(s);
  CHECK(loc.pole == doctest::Approx(s0).epsilon(1e-3));
  CHECK(loc.order == 1);
  CHECK_FALSE(loc.atSearchEdge);
}

TEST_CASE("synthetic log series fit") {
  std::vector<DecaySample> s;
  std::complex<double> B(0.4, -1.1), B1(0.2, 0.3), B2(-1.0, 0.5);
  for (int i = 0; i < 20; ++i) {
    double t = 100 * std::pow(1000.0, i / 19.0);
    s.push_back({t, std::pow(t, -0.5) * (B * std::log(t) + B1 + B2 / std::sqrt(t))});
  }
  auto fit = fit_log_series(s, 0.5, 2);
  CHECK(std::abs(fit.leading - B) < 1e-8);
}

TEST_CASE("chart coefficient does not depend on the star cone used") {
  auto c = examples::flat_weight_space(2, 2);
  c.g.flat.clear();
  auto an = zeta::analyze(c.f, c.g, {.phi0 = Bump{}.at_origin()});
  ChartOptions sum;
  sum.positiveOrthantOnly = true;
  auto whole = chart_coefficient_quadrature(an, Bump{}, sum);
  REQUIRE(whole.cones >= 1);
  for (int k = 0; k < whole.cones; ++k) {
    ChartOptions one = sum;
    one.singleCone = k;
    auto part = chart_coefficient_quadrature(an, Bump{}, one);
    CHECK(part.C == doctest::Approx(whole.C).epsilon(1e-8));
  }
  // frozen reference value
  CHECK(whole.C == doctest::Approx(0.0308220711016).epsilon(1e-9));
}

TEST_CASE("chart coefficient refuses a dominating flat term") {
  auto c = examples::flat_weight_space(0, 1);
  auto an = zeta::analyze(c.f, c.g);
  ChartOptions o;
  o.positiveOrthantOnly = true;
  CHECK_THROWS_AS(chart_coefficient_quadrature(an, Bump{}, o), Error);
}
