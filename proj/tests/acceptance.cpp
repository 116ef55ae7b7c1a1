// One line per acceptance criterion. Tolerances are fixed here.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "newton_osc/examples.hpp"
#include "newton_osc/fan.hpp"
#include "newton_osc/numeric.hpp"
#include "newton_osc/pair.hpp"
#include "newton_osc/zeta.hpp"
#include "oracles.hpp"

using namespace newton_osc;
using newton::PowerData;

namespace {

constexpr double kExampleSeconds = 1.0;
constexpr double kRandomSeconds = 60.0;
constexpr double kDecaySeconds = 300.0;
constexpr int kRandomPairs = 200;
constexpr int kCoveringRays = 10000;
constexpr double kPoleCoefficientTol = 0.01;
constexpr double kMellinTol = 0.05;
constexpr double kFresnelTol = 0.01;
constexpr double kCounterexampleTol = 0.1;
constexpr double kFlatPoleTol = 0.02;
constexpr double kOrthantCoefficientTol = 0.01;
constexpr int kElementaryConfigs = 50;
constexpr int kPuiseuxInputs = 50;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void report(int id, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " exception: " << e.what();
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s (%.1fs)%s\n", id, o.pass ? "PASS" : "FAIL", seconds_since(t0), o.detail.str().c_str());
  std::fflush(stdout);
}

std::vector<std::pair<PowerData, PowerData>> random_pairs() {
  std::mt19937 rng(20240601);
  std::vector<std::pair<PowerData, PowerData>> out;
  for (int i = 0; i < kRandomPairs; ++i) {
    int n = 2 + i % 2;
    auto f = oracle::random_polynomial(rng, n, 6, 8, false);
    auto g = oracle::random_polynomial(rng, n, 6, 8, true);
    out.emplace_back(f, g);
  }
  return out;
}

void criterion1(Outcome& o) {
  auto timed = [&](const std::string& id, const std::function<void(const std::vector<examples::Case>&)>& check) {
    auto t0 = Clock::now();
    check(examples::cases(id));
    double s = seconds_since(t0);
    o.require(s < kExampleSeconds, id + " took " + std::to_string(s) + "s");
  };
  timed("15.1", [&](const auto&) {
    for (int p = 1; p <= 3; ++p)
      for (Rat c : {Rat(1), Rat(-2), Rat(1, 3)}) {
        auto k = examples::flat_weight_plane(p, 1 + p % 3, c);
        auto a = zeta::analyze(k.f, k.g);
        o.require(a.ctx.pair.d == Rat(4, 2 * p + 1), "15.1 d " + k.label + " = " + a.ctx.pair.d.str());
        o.require(a.ctx.pair.m == 1, "15.1 m " + k.label);
      }
  });
  timed("15.2", [&](const auto& cases) {
    for (const auto& k : cases) {
      auto a = zeta::analyze(k.f, k.g);
      o.require(a.ctx.pair.d == Rat(1) && a.ctx.pair.m == 1, "15.2 " + k.label);
    }
  });
  timed("15.3", [&](const auto& cases) {
    auto a = zeta::analyze(cases[0].f, cases[0].g);
    o.require(a.ctx.pair.d == Rat(4, 3) && a.ctx.pair.m == 1, "15.3");
  });
  timed("remark4.6", [&](const auto& cases) {
    auto a = zeta::analyze(cases[0].f, cases[0].g);
    o.require(a.ctx.pair.d == Rat(1), "remark4.6");
  });
  timed("remark3.10", [&](const auto& cases) {
    auto u = pair::unweighted_metrics(cases[0].f);
    bool part = u.principalPart.flat.empty() && u.principalPart.terms.size() == 1 &&
                u.principalPart.terms.count({2, 0}) == 1 && u.principalPart.terms.at({2, 0}) == Rat(1);
    o.require(u.d == Rat(2) && u.m == 1 && part, "remark3.10");
  });
}

void criterion2(Outcome& o, std::vector<zeta::Analysis>& keep) {
  auto t0 = Clock::now();
  int bad = 0;
  for (const auto& [f, g] : random_pairs()) {
    auto a = zeta::analyze(f, g);
    bool ok = a.leading.maxFamilyBase == -a.ctx.pair.d.inverse() && a.leading.value == -a.ctx.pair.d.inverse() &&
              a.leading.multiplicityCrossCheck == a.ctx.pair.m && a.subdivisionInvariant &&
              a.ctx.pair.d == oracle::distance(f, g);
    if (!ok) {
      ++bad;
      o.detail << " {" << f.str() << " | " << g.str() << "}";
    }
    keep.push_back(std::move(a));
  }
  o.require(bad == 0, std::to_string(bad) + " failures");
  double s = seconds_since(t0);
  o.require(s < kRandomSeconds, "took " + std::to_string(s) + "s");
}

void criterion3(Outcome& o, const std::vector<zeta::Analysis>& analyses) {
  int bad = 0;
  unsigned seed = 1;
  auto check = [&](const zeta::Analysis& a) {
    auto Nf = fan::normal_fan(a.ctx.phase), Ng = fan::normal_fan(a.ctx.weight);
    if (!fan::check_fan(a.fan, {Nf, Ng}, kCoveringRays, seed++).ok()) ++bad;
  };
  for (const auto& a : analyses) check(a);
  for (const auto& id : examples::ids())
    for (const auto& k : examples::cases(id)) check(zeta::analyze(k.f, k.g));
  o.require(bad == 0, std::to_string(bad) + " fans failed");
  o.detail << " fans=" << seed - 1;
}

void criterion4(Outcome& o) {
  std::mt19937 rng(4);
  int equalities = 0;
  for (int it = 0; it < 200; ++it) {
    int n = 2 + it % 2;
    auto f = oracle::random_polynomial(rng, n, 6, 8, true);
    PowerData g(n);
    if (it % 4 == 0) {
      long long k = 2 + it % 3;
      for (const auto& [e, c] : f.terms) {
        ZVec s(n);
        for (int j = 0; j < n; ++j) s[j] = k * (e[j] + 1) - 1;
        g.add(s, c);
      }
    } else {
      g = oracle::random_polynomial(rng, n, 6, 8, true);
    }
    auto s = pair::symmetry_check(f, g);
    bool scaled = pair::scaled_copy(newton::newton_polyhedron(newton::times_coordinate_monomial(f)),
                                    newton::newton_polyhedron(newton::times_coordinate_monomial(g)));
    o.require(s.product >= Rat(1), "product < 1");
    o.require((s.product == Rat(1)) == scaled, "equality without scaled copy");
    if (scaled) {
      ++equalities;
      o.require(s.mfg == n, "multiplicity on equality instance");
    }
  }
  o.detail << " equalityInstances=" << equalities;
}

void criterion5(Outcome& o) {
  // With radius 1 the window [1e2, 1e5] lies in the asymptotic regime.
  numeric::Bump phi{1.0, 1.0};
  const double phi0 = phi.at_origin();
  auto f = PowerData::monomial({2, 2});
  auto g = PowerData::unit(2);
  auto a = zeta::analyze(f, g, {.phi0 = phi0});
  o.require(a.verdict.coefficient.has_value(), "no exact coefficient");
  if (!a.verdict.coefficient) return;
  const auto& c = *a.verdict.coefficient;
  o.require(std::abs(c.Cplus + c.Cminus - phi0) < 1e-12 * phi0, "C != phi(0)");

  auto zs = numeric::zeta_samples(f, g, phi, -0.5, 12, 1e-4, 1e-2);
  auto fit = numeric::fit_pole(zs, Rat(-1, 2));
  o.require(fit.logPower && *fit.logPower == 2, "fitted order");
  double rel = std::abs(fit.coefficient.real() - phi0) / phi0;
  o.require(rel < kPoleCoefficientTol, "pole coefficient off by " + std::to_string(rel));

  auto ds = numeric::decay_samples(f, g, phi, 1e2, 1e5, 20);
  auto series = numeric::fit_log_series(ds, 0.5, 2);
  double relB = std::abs(series.leading - c.B) / std::abs(c.B);
  o.require(relB < kMellinTol, "oscillatory coefficient off by " + std::to_string(relB));
  o.detail << " rho=" << fit.exponent << " c/phi0-1=" << rel << " |B_fit/B-1|=" << relB;
}

void criterion6(Outcome& o) {
  auto t0 = Clock::now();
  {
    numeric::Bump phi;
    auto ds = numeric::decay_samples(PowerData::monomial({2}), PowerData::unit(1), phi, 1e2, 1e4, 16);
    auto fit = numeric::fit_decay(ds);
    o.require(std::abs(fit.exponent + 0.5) <= kFresnelTol, "Fresnel beta " + std::to_string(fit.exponent));
    o.detail << " fresnel=" << fit.exponent;
  }
  {
    // Larger support moves the asymptotic regime of this slowly settling integral into the window.
    numeric::Bump phi{2.0, 1.0};
    auto f = PowerData::monomial({1, 1});
    auto g = PowerData::monomial({0, 2});
    numeric::OscOptions opts;
    opts.relTol = 1e-10;
    auto ds = numeric::decay_samples(f, g, phi, 30, 3000, 16, opts);
    auto fit = numeric::fit_decay(ds);
    o.require(std::abs(fit.exponent + 3) <= kCounterexampleTol, "counterexample beta " + std::to_string(fit.exponent));
    auto a = zeta::analyze(f, g);
    o.require(a.verdict.status == zeta::Status::PredictionOnly, "status");
    o.require(a.verdict.beta == Rat(-1), "symbolic bound");
    o.require(a.ledger.notOddAndNonvanishing == newton::Ternary::Fails, "gate (iv)(c)");
    o.detail << " counterexample=" << fit.exponent;
  }
  double s = seconds_since(t0);
  o.require(s < kDecaySeconds, "took " + std::to_string(s) + "s");
}

void criterion7(Outcome& o) {
  numeric::Bump phi;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {1, 1}, {1, 2}, {2, 3}}) {
    auto k = examples::flat_weight_plane(p, q, Rat(1));
    double s0 = numeric::convergence_abscissa(k.f, k.g);
    auto zs = numeric::zeta_samples(k.f, k.g, phi, s0, 16, 1e-9, 0.3);
    auto loc = numeric::locate_pole(zs);
    double expect = -(2.0 * std::min(p, q) + 1) / 4;
    o.require(!loc.atSearchEdge, k.label + " at search edge");
    o.require(std::abs(loc.pole - expect) <= kFlatPoleTol, k.label + " pole " + std::to_string(loc.pole));
    if (p > q) {
      auto a = zeta::analyze(k.f, k.g);
      o.require(loc.pole > a.leading.value.to_double() + kFlatPoleTol, k.label + " not above -1/d");
    }
    o.detail << " " << p << q << ":" << loc.pole;
  }
}

void criterion8(Outcome& o) {
  numeric::Bump phi;
  auto k = examples::flat_weight_space(2, 2);
  k.g.flat.clear();
  auto a = zeta::analyze(k.f, k.g, {.phi0 = phi.at_origin()});
  numeric::ChartOptions opts;
  opts.positiveOrthantOnly = true;
  auto chart = numeric::chart_coefficient_quadrature(a, phi, opts);

  auto ratio = [](double y) { return y * y / (y * y * y * y + 1); };
  double first = boost::math::quadrature::exp_sinh<double>().integrate(ratio, 0.0, INFINITY);
  auto axis = [&](double y) {
    double x[3] = {0.0, 0.0, y};
    return phi(x, 3);
  };
  double second = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(axis, 0.0, phi.radius, 15, 1e-14);
  double expect = 0.25 * first * second;
  double rel = std::abs(chart.C - expect) / expect;
  o.require(rel < kOrthantCoefficientTol, "relative error " + std::to_string(rel));
  o.detail << " C=" << chart.C << " product=" << expect;
}

void criterion9(Outcome& o) {
  std::mt19937 rng(909);
  std::uniform_int_distribution<int> L(0, 4), M(1, 6), E(0, 3), C(-5, 5);
  int done = 0, bad = 0;
  while (done < kElementaryConfigs) {
    int n = 1 + static_cast<int>(rng() % 4);
    zeta::ElementaryInput in;
    for (int j = 0; j < n; ++j) {
      in.l.push_back(L(rng));
      in.m.push_back(M(rng));
    }
    if (std::all_of(in.l.begin(), in.l.end(), [](long long x) { return x == 0; })) continue;
    in.psi[ZVec(n, 0)] = Rat(1 + static_cast<long long>(rng() % 4));
    for (int t = 0; t < 4; ++t) {
      ZVec e(n);
      for (auto& x : e) x = E(rng);
      int c = C(rng);
      if (c != 0 && e != ZVec(n, 0)) in.psi[e] = Rat(c);
    }
    auto lib = zeta::elementary_pole_oracle(in);
    auto ref = oracle::elementary_leading(in);
    bool orderOk = lib.coefficient.is_zero() ? ref.order < lib.order : ref.order == lib.order;
    if (oracle::big(lib.leadingPole) != ref.pole || !orderOk || oracle::big(lib.coefficient) != ref.at(-lib.order)) ++bad;
    ++done;
  }
  o.require(bad == 0, std::to_string(bad) + " mismatches");
}

void criterion10(Outcome& o) {
  std::mt19937 rng(1010);
  std::uniform_int_distribution<int> den(1, 4);
  int bad = 0;
  for (int it = 0; it < kPuiseuxInputs; ++it) {
    int n = 2 + it % 2;
    auto f = oracle::random_polynomial(rng, n, 5, 8, false);
    for (auto& d : f.denom) d = den(rng);
    auto red = pair::puiseux_reduce(f);
    Rat frac = pair::newton_distance(f, PowerData::unit(n));
    Rat cleared = pair::newton_distance(red.reduced, red.weight);
    Rat lp = oracle::distance(f, PowerData::unit(n));
    if (frac != cleared || frac != lp) {
      ++bad;
      o.detail << " {" << f.str() << ": " << frac << " vs " << cleared << " vs " << lp << "}";
    }
  }
  o.require(bad == 0, std::to_string(bad) + " mismatches");
}

}  // namespace

int main() {
  std::vector<zeta::Analysis> randomAnalyses;
  report(1, criterion1);
  report(2, [&](Outcome& o) { criterion2(o, randomAnalyses); });
  report(3, [&](Outcome& o) { criterion3(o, randomAnalyses); });
  report(4, criterion4);
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, criterion8);
  report(9, criterion9);
  report(10, criterion10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
