#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "CLI11.hpp"
#include "newton_osc/examples.hpp"
#include "newton_osc/io.hpp"
#include "newton_osc/numeric.hpp"
#include "newton_osc/pair.hpp"
#include "newton_osc/zeta.hpp"

using namespace newton_osc;
using io::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in;
  std::istream* src = &std::cin;
  if (path != "-") {
    in.open(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    src = &in;
  }
  try {
    return json::parse(*src);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

int status_rank(zeta::Status s) {
  switch (s) {
    case zeta::Status::ExactByThm44: return 0;
    case zeta::Status::UpperBoundByThm41: return 1;
    default: return 2;
  }
}

json permutation_search(const newton::PowerData& f, const newton::PowerData& g, const zeta::AnalyzeOptions& opts) {
  std::vector<int> perm(f.n);
  std::iota(perm.begin(), perm.end(), 0);
  json runs = json::array();
  std::optional<zeta::Analysis> best;
  bool consistent = true;
  Rat d0;
  int m0 = -1;
  do {
    auto a = zeta::analyze(newton::permute(f, perm), newton::permute(g, perm), opts);
    runs.push_back({{"permutation", perm},
                    {"d", io::rat(a.ctx.pair.d)},
                    {"m", a.ctx.pair.m},
                    {"status", zeta::to_string(a.verdict.status)}});
    if (m0 < 0) {
      d0 = a.ctx.pair.d;
      m0 = a.ctx.pair.m;
    } else if (a.ctx.pair.d != d0 || a.ctx.pair.m != m0) {
      consistent = false;
    }
    if (!best || status_rank(a.verdict.status) < status_rank(best->verdict.status)) best = std::move(a);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {{"runs", runs}, {"consistent", consistent}, {"bestStatus", zeta::to_string(best->verdict.status)}};
}

void write_csv(const std::string& path, const std::string& header, const std::vector<std::pair<double, double>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out.precision(17);
  out << header << "\n";
  for (const auto& [a, b] : rows) out << a << "," << b << "\n";
}

json summary(const examples::Case& c, const zeta::Analysis& a) {
  json j;
  j["label"] = c.label;
  j["params"] = c.params;
  j["f"] = c.f.str();
  j["g"] = c.g.str();
  j["d"] = io::rat(a.ctx.pair.d);
  j["m"] = a.ctx.pair.m;
  j["leadingPole"] = io::rat(a.leading.value);
  j["orderBound"] = a.leading.orderBound;
  j["beta"] = io::rat(a.verdict.beta);
  j["eta"] = a.verdict.eta;
  j["status"] = zeta::to_string(a.verdict.status);
  j["fallbackBound"] = io::rat(a.verdict.fallbackBound);
  j["flatCaveat"] = a.leading.flatCaveat;
  j["ledger"] = io::analysis_json(a)["ledger"];
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton polyhedra, weighted zeta poles and oscillation indices"};
  app.require_subcommand(1);

  std::string input = "-";
  double phi0 = 1.0;
  bool permSearch = false;
  auto* analyzeCmd = app.add_subcommand("analyze", "Symbolic pipeline: distance, poles, hypothesis ledger, verdict");
  analyzeCmd->add_option("input", input, "JSON problem file, - for stdin");
  analyzeCmd->add_option("--phi0", phi0, "Amplitude value at the origin");
  analyzeCmd->add_flag("--permutation-search", permSearch, "Re-run under every axis permutation");

  std::string mode = "decay";
  double radius = 0.5, lo = 1e-3, hi = 0.3, tmin = 100, tmax = 1e4, relTol = 0;
  int samples = 16;
  bool positiveOrthant = false;
  std::string plotData;
  auto* verifyCmd = app.add_subcommand("verify", "Numeric harness");
  verifyCmd->add_option("input", input, "JSON problem file, - for stdin");
  verifyCmd->add_option("--mode", mode, "zeta | locate | decay | coefficient")
      ->check(CLI::IsMember({"zeta", "locate", "decay", "coefficient"}));
  verifyCmd->add_option("--radius", radius, "Bump radius");
  verifyCmd->add_option("--samples", samples, "Number of samples");
  verifyCmd->add_option("--lo", lo, "Smallest offset from the pole");
  verifyCmd->add_option("--hi", hi, "Largest offset from the pole");
  verifyCmd->add_option("--tmin", tmin, "Smallest t");
  verifyCmd->add_option("--tmax", tmax, "Largest t");
  verifyCmd->add_option("--rel-tol", relTol, "Quadrature tolerance");
  verifyCmd->add_flag("--positive-orthant", positiveOrthant, "Integrate over the positive orthant only");
  verifyCmd->add_option("--plot-data", plotData, "Write the samples as CSV");

  std::string exampleId;
  bool numericToo = false;
  auto* exampleCmd = app.add_subcommand("example", "Run a named worked example");
  exampleCmd->add_option("id", exampleId, "Example id")->required()->check(CLI::IsMember(examples::ids()));
  exampleCmd->add_flag("--numeric", numericToo, "Add the numeric checks for this example");

  CLI11_PARSE(app, argc, argv);

  try {
    json out;
    if (*analyzeCmd) {
      auto problem = io::parse_problem(read_json(input));
      zeta::AnalyzeOptions opts;
      opts.phi0 = phi0;
      out = io::analysis_json(zeta::analyze(problem.f, problem.g, opts));
      if (!problem.f.has_fractional_exponents() && problem.f.flat.empty()) {
        auto P = newton::newton_polyhedron(problem.f);
        out["unweighted"] = io::unweighted_json(pair::unweighted_metrics(problem.f), P);
      }
      out["symmetry"] = io::symmetry_json(pair::symmetry_check(problem.f, problem.g));
      if (permSearch) out["permutationSearch"] = permutation_search(problem.f, problem.g, opts);
    } else if (*verifyCmd) {
      auto problem = io::parse_problem(read_json(input));
      numeric::Bump phi{radius, 1.0};
      auto an = zeta::analyze(problem.f, problem.g, {.phi0 = phi.at_origin()});
      out["prediction"] = {{"leadingPole", io::rat(an.leading.value)},
                           {"beta", io::rat(an.verdict.beta)},
                           {"status", zeta::to_string(an.verdict.status)},
                           {"fallbackBound", io::rat(an.verdict.fallbackBound)}};
      numeric::ZetaOptions zo;
      zo.positiveOrthantOnly = positiveOrthant;
      if (relTol > 0) zo.relTol = relTol;
      std::vector<std::pair<double, double>> rows;
      if (mode == "zeta" || mode == "locate") {
        double s0 = mode == "zeta" ? an.leading.value.to_double()
                                   : numeric::convergence_abscissa(problem.f, problem.g);
        auto zs = numeric::zeta_samples(problem.f, problem.g, phi, s0, samples, lo, hi, zo);
        rows = zs;
        if (mode == "zeta")
          out["fit"] = io::fit_json(numeric::fit_pole(zs, an.leading.value));
        else
          out["location"] = io::pole_location_json(numeric::locate_pole(zs));
        if (!plotData.empty()) write_csv(plotData, "s,Z", rows);
      } else if (mode == "decay") {
        numeric::OscOptions oo;
        if (relTol > 0) oo.relTol = relTol;
        auto ds = numeric::decay_samples(problem.f, problem.g, phi, tmin, tmax, samples, oo);
        for (const auto& [t, v] : ds) rows.emplace_back(t, std::abs(v));
        out["fit"] = io::fit_json(numeric::fit_decay(ds));
        if (!plotData.empty()) write_csv(plotData, "t,absI", rows);
      } else {
        numeric::ChartOptions co;
        co.positiveOrthantOnly = positiveOrthant;
        if (relTol > 0) co.relTol = relTol;
        out["chart"] = io::chart_json(numeric::chart_coefficient_quadrature(an, phi, co));
        if (an.verdict.coefficient) out["vertexCoefficient"] = io::analysis_json(an)["verdict"]["coefficient"];
      }
    } else if (*exampleCmd) {
      out["id"] = exampleId;
      out["cases"] = json::array();
      numeric::Bump phi;
      for (const auto& c : examples::cases(exampleId)) {
        auto an = zeta::analyze(c.f, c.g, {.phi0 = phi.at_origin()});
        json s = summary(c, an);
        if (exampleId == "remark3.10") {
          auto u = pair::unweighted_metrics(c.f);
          s["unweighted"] = io::unweighted_json(u, newton::newton_polyhedron(c.f));
        }
        if (numericToo) {
          if (exampleId == "fresnel") {
            auto ds = numeric::decay_samples(c.f, c.g, phi, 100, 1e4, 16);
            s["decayFit"] = io::fit_json(numeric::fit_decay(ds));
          } else if (exampleId == "15.1") {
            double s0 = numeric::convergence_abscissa(c.f, c.g);
            auto zs = numeric::zeta_samples(c.f, c.g, phi, s0, 16, 1e-9, 0.3);
            s["poleLocation"] = io::pole_location_json(numeric::locate_pole(zs));
          } else if (exampleId == "15.2") {
            numeric::ChartOptions co;
            co.positiveOrthantOnly = true;
            try {
              s["chart"] = io::chart_json(numeric::chart_coefficient_quadrature(an, phi, co));
            } catch (const Error& e) {
              s["chart"] = {{"error", error_name(e.code())}, {"message", e.what()}};
            }
            auto axis = [&](double y) { return phi(std::vector<double>{0.0, 0.0, y}.data(), 3); };
            double line = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(axis, 0.0, phi.radius);
            s["oracle"] = io::approx(0.25 * M_PI / (2 * std::sqrt(2.0)) * line);
          } else if (exampleId == "remark4.6") {
            numeric::OscOptions oo;
            oo.relTol = 1e-10;
            auto ds = numeric::decay_samples(c.f, c.g, numeric::Bump{2.0, 1.0}, 30, 3000, 16, oo);
            s["decayFit"] = io::fit_json(numeric::fit_decay(ds));
          }
        }
        out["cases"].push_back(s);
      }
    }
    std::cout << out.dump(2) << "\n";
  } catch (const Error& e) {
    std::cerr << json{{"error", error_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}
