#pragma once

// JSON encoding of inputs and reports. Exact values are "p/q" strings; floating
// point values are objects carrying "approx": true.

#include <complex>
#include <string>

#include "json.hpp"
#include "newton_osc/numeric.hpp"
#include "newton_osc/pair.hpp"
#include "newton_osc/zeta.hpp"

namespace newton_osc::io {

using json = nlohmann::json;
using newton::PowerData;

// {n, denomVector?, terms: [{exp, coeff}], flatMarkers?: [{exp, axis, scale}]}
PowerData parse_power_data(const json& j);
json to_json(const PowerData& p);

struct Problem {
  PowerData f, g;
};
// {"f": ..., "g": ...}; a missing g is the unit weight.
Problem parse_problem(const json& j);

json rat(const Rat& r);
json approx(double v);
json approx(std::complex<double> v);
json face_json(const geometry::Polyhedron& P, int face);

json pair_json(const pair::PairReport& r);
json analysis_json(const zeta::Analysis& a);
json unweighted_json(const pair::UnweightedMetrics& u, const geometry::Polyhedron& P);
json symmetry_json(const pair::SymmetryReport& s);
json fit_json(const numeric::FitResult& r);
json pole_location_json(const numeric::PoleLocation& p);
json chart_json(const numeric::ChartCoefficients& c);

}  // namespace newton_osc::io
