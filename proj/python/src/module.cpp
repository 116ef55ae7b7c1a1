#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "newton_osc/examples.hpp"
#include "newton_osc/io.hpp"
#include "newton_osc/numeric.hpp"
#include "newton_osc/pair.hpp"
#include "newton_osc/zeta.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace newton_osc;
using io::json;

namespace {

io::Problem problem_of(const std::string& text) { return io::parse_problem(json::parse(text)); }

std::string analyze(const std::string& problem, double phi0) {
  auto p = problem_of(problem);
  zeta::AnalyzeOptions opts;
  opts.phi0 = phi0;
  return io::analysis_json(zeta::analyze(p.f, p.g, opts)).dump();
}

std::string newton_distance(const std::string& problem) {
  auto p = problem_of(problem);
  return pair::newton_distance(p.f, p.g).str();
}

std::string example(const std::string& id) {
  json out = json::array();
  for (const auto& c : examples::cases(id)) {
    auto a = zeta::analyze(c.f, c.g);
    out.push_back({{"label", c.label},
                   {"params", c.params},
                   {"d", io::rat(a.ctx.pair.d)},
                   {"m", a.ctx.pair.m},
                   {"beta", io::rat(a.verdict.beta)},
                   {"status", zeta::to_string(a.verdict.status)}});
  }
  return out.dump();
}

double eval_zeta(const std::string& problem, double s, double radius) {
  auto p = problem_of(problem);
  return numeric::eval_zeta(p.f, p.g, numeric::Bump{radius, 1.0}, s).value;
}

std::complex<double> eval_oscillatory(const std::string& problem, double t, double radius) {
  auto p = problem_of(problem);
  return numeric::eval_oscillatory(p.f, p.g, numeric::Bump{radius, 1.0}, t).value;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
        Newton polyhedra and oscillatory integrals
        ------------------------------------------

        .. currentmodule:: newton_osc

        .. autosummary::
           :toctree: _generate

           analyze
           newton_distance
           example
           eval_zeta
           eval_oscillatory
    )pbdoc";

  py::register_exception<Error>(m, "NewtonOscError");

  m.def("analyze", &analyze, py::arg("problem"), py::arg("phi0") = 1.0, R"pbdoc(
        Symbolic report for a JSON problem string, returned as a JSON string.
    )pbdoc");
  m.def("newton_distance", &newton_distance, py::arg("problem"), R"pbdoc(
        Exact distance d(f, g) as a "p/q" string.
    )pbdoc");
  m.def("example", &example, py::arg("id"), R"pbdoc(
        Summary of a named example as a JSON string.
    )pbdoc");
  m.def("example_ids", &examples::ids);
  m.def("eval_zeta", &eval_zeta, py::arg("problem"), py::arg("s"), py::arg("radius") = 0.5, R"pbdoc(
        Integral of |f|^s g phi for a bump phi of the given radius.
    )pbdoc");
  m.def("eval_oscillatory", &eval_oscillatory, py::arg("problem"), py::arg("t"), py::arg("radius") = 0.5, R"pbdoc(
        Integral of exp(i t f) g phi for n <= 2.
    )pbdoc");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
