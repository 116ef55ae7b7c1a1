#include "newton_osc/io.hpp"

#include <bit>

namespace newton_osc::io {

namespace {

ZVec int_vector(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array");
  ZVec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error(ErrorCode::InvalidInput, std::string(what) + " must hold integers");
    v.push_back(x.get<long long>());
  }
  return v;
}

Rat rational(const json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw Error(ErrorCode::InvalidInput, "coefficients are integers or \"p/q\" strings");
}

json zvec(const ZVec& v) { return json(v); }

json qvec(const QVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(rat(x));
  return out;
}

json ternary(newton::Ternary t) { return newton::to_string(t); }

}  // namespace

PowerData parse_power_data(const json& j) {
  if (!j.is_object() || !j.contains("n")) throw Error(ErrorCode::InvalidInput, "power data needs a field n");
  int n = j.at("n").get<int>();
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
  PowerData p(n);
  if (j.contains("denomVector")) {
    p.denom = int_vector(j.at("denomVector"), "denomVector");
    if (static_cast<int>(p.denom.size()) != n) throw Error(ErrorCode::InvalidInput, "denomVector length");
    for (long long d : p.denom)
      if (d < 1) throw Error(ErrorCode::InvalidInput, "denomVector entries must be >= 1");
  }
  if (j.contains("terms"))
    for (const auto& t : j.at("terms")) p.add(int_vector(t.at("exp"), "exp"), rational(t.at("coeff")));
  if (j.contains("flatMarkers"))
    for (const auto& m : j.at("flatMarkers"))
      p.add_flat(int_vector(m.at("exp"), "exp"), m.at("axis").get<int>(),
                 m.contains("scale") ? rational(m.at("scale")) : Rat(1));
  return p;
}

json to_json(const PowerData& p) {
  json j;
  j["n"] = p.n;
  j["denomVector"] = zvec(p.denom);
  j["terms"] = json::array();
  for (const auto& [e, c] : p.terms) j["terms"].push_back({{"exp", zvec(e)}, {"coeff", c.str()}});
  j["flatMarkers"] = json::array();
  for (const auto& m : p.flat)
    j["flatMarkers"].push_back({{"exp", zvec(m.exp)}, {"axis", m.axis}, {"scale", m.scale.str()}});
  j["text"] = p.str();
  return j;
}

Problem parse_problem(const json& j) {
  if (!j.contains("f")) throw Error(ErrorCode::InvalidInput, "input needs a phase f");
  Problem pr;
  pr.f = parse_power_data(j.at("f"));
  pr.g = j.contains("g") && !j.at("g").is_null() ? parse_power_data(j.at("g")) : PowerData::unit(pr.f.n);
  if (pr.g.n != pr.f.n) throw Error(ErrorCode::InvalidInput, "f and g differ in dimension");
  return pr;
}

json rat(const Rat& r) { return r.str(); }

json approx(double v) { return {{"value", v}, {"approx", true}}; }

json approx(std::complex<double> v) { return {{"re", v.real()}, {"im", v.imag()}, {"approx", true}}; }

json face_json(const geometry::Polyhedron& P, int face) {
  const auto& F = P.faces().at(face);
  json j;
  j["index"] = face;
  j["dim"] = F.dim;
  j["compact"] = F.compact;
  j["vertices"] = json::array();
  for (int v : F.vertices) j["vertices"].push_back(qvec(P.vertices()[v]));
  j["facets"] = json::array();
  for (int i : F.activeFacets) j["facets"].push_back({{"a", zvec(P.facets()[i].a)}, {"l", rat(P.facets()[i].l)}});
  j["recessionAxes"] = F.zeroWeightSet;
  return j;
}

json pair_json(const pair::PairReport& r) {
  json j;
  j["d"] = rat(r.d);
  j["m"] = r.m;
  j["contactFacesF"] = r.contactF;
  j["contactFacesG"] = r.contactG;
  j["principal"] = json::array();
  for (const auto& p : r.pairing)
    j["principal"].push_back({{"phaseFace", face_json(r.phase, p.faceF)}, {"weightFace", face_json(r.weight, p.faceG)}});
  return j;
}

json analysis_json(const zeta::Analysis& a) {
  const auto& ctx = a.ctx;
  json j;
  j["input"] = {{"f", to_json(ctx.f)}, {"g", to_json(ctx.g)}, {"reducedFromFractional", ctx.reduced},
                {"jacobian", ctx.jacobian}};
  j["weightMode"] = zeta::to_string(ctx.mode);
  if (!ctx.monomialExponent.empty()) j["weightMonomial"] = zvec(ctx.monomialExponent);
  j["pair"] = pair_json(ctx.pair);
  for (size_t k = 0; k < ctx.pair.pairing.size(); ++k) {
    j["pair"]["principal"][k]["phasePart"] = newton::gamma_part(ctx.f, ctx.phase, ctx.pair.pairing[k].faceF).data.str();
    j["pair"]["principal"][k]["weightPart"] =
        newton::gamma_part(ctx.weightPart, ctx.weight, ctx.pair.pairing[k].faceG).data.str();
  }

  json fan;
  fan["maximalCones"] = a.fan.cones.size();
  fan["rays"] = json::array();
  for (const auto& r : a.fan.rays()) fan["rays"].push_back(zvec(r));
  j["fan"] = fan;

  const auto& L = a.leading;
  json poles;
  poles["value"] = rat(L.value);
  poles["maxFamilyBase"] = rat(L.maxFamilyBase);
  poles["baseMatches"] = L.baseMatches;
  poles["orderBound"] = L.orderBound;
  poles["orderIsBound"] = a.verdict.status != zeta::Status::ExactByThm44;
  poles["multiplicityCrossCheck"] = L.multiplicityCrossCheck;
  poles["multiplicityMatches"] = L.multiplicityMatches;
  poles["starCones"] = L.starCones;
  poles["principalFacesMatch"] = L.principalFacesMatch;
  if (L.monomialContactOk) poles["monomialContactOk"] = *L.monomialContactOk;
  poles["flatCaveat"] = L.flatCaveat;
  poles["achievingRays"] = json::array();
  for (const auto& r : L.achievingRays) poles["achievingRays"].push_back(zvec(r));
  poles["families"] = json::array();
  for (const auto& f : a.candidates.families)
    poles["families"].push_back({{"base", rat(f.base)}, {"step", rat(f.step)}, {"ray", zvec(f.ray)}});
  poles["includesNegativeIntegers"] = a.candidates.includesNegativeIntegers;
  poles["negativeIntegerOrders"] = json::array();
  for (const auto& o : a.negativeOrders)
    poles["negativeIntegerOrders"].push_back({{"lambda", o.lambda}, {"rho", o.rho}, {"orderAtMost", o.rho + 1}});
  poles["reflectionRule"] = "a+ = (-1)^(lambda-1) a- at negative integers lambda";
  j["poles"] = poles;

  json sub;
  sub["invariant"] = a.subdivisionInvariant;
  if (a.alternate) {
    sub["alternateValue"] = rat(a.alternate->value);
    sub["alternateOrderBound"] = a.alternate->orderBound;
    sub["alternateMultiplicity"] = a.alternate->multiplicityCrossCheck;
  }
  j["subdivision"] = sub;

  const auto& H = a.ledger;
  json led;
  led["phaseCondition"] = ternary(H.phaseCondition);
  led["weightCondition"] = ternary(H.weightCondition);
  led["weightPrincipalSign"] = ternary(H.weightPrincipalSign);
  led["distanceAboveOne"] = ternary(H.distanceAboveOne);
  led["phaseSign"] = ternary(H.phaseSign);
  led["notOddAndNonvanishing"] = ternary(H.notOddAndNonvanishing);
  led["fourth"] = ternary(H.fourth);
  led["nondegeneracy"] = {{"verdict", newton::to_string(H.certificate.verdict)},
                          {"method", newton::to_string(H.certificate.method)}};
  if (H.certificate.witness) {
    json w = json::array();
    for (double x : *H.certificate.witness) w.push_back(approx(x));
    led["nondegeneracy"]["witness"] = w;
    led["nondegeneracy"]["gradientNorm"] = approx(H.certificate.gradientNorm);
  }
  if (H.certificate.face) led["nondegeneracy"]["face"] = *H.certificate.face;
  led["chosenPrincipal"] = H.chosenPrincipal;
  led["notes"] = H.notes;
  j["ledger"] = led;

  const auto& V = a.verdict;
  json ver;
  ver["beta"] = rat(V.beta);
  ver["eta"] = V.eta;
  ver["status"] = zeta::to_string(V.status);
  ver["upperBoundHolds"] = V.upperBoundHolds;
  ver["fallbackBound"] = rat(V.fallbackBound);
  ver["fallbackExponent"] = zvec(V.fallbackExponent);
  if (V.coefficient) {
    const auto& c = *V.coefficient;
    ver["coefficient"] = {{"L", rat(c.L)},          {"Cplus", approx(c.Cplus)}, {"Cminus", approx(c.Cminus)},
                          {"B", approx(c.B)},       {"phi0", approx(c.phi0)}};
  }
  j["verdict"] = ver;
  return j;
}

json unweighted_json(const pair::UnweightedMetrics& u, const geometry::Polyhedron& P) {
  return {{"d", rat(u.d)},
          {"m", u.m},
          {"principalFace", face_json(P, u.principalFace)},
          {"principalPart", u.principalPart.str()}};
}

json symmetry_json(const pair::SymmetryReport& s) {
  return {{"dfg", rat(s.dfg)}, {"dgf", rat(s.dgf)},       {"product", rat(s.product)},
          {"mfg", s.mfg},      {"mgf", s.mgf},            {"equalityCase", s.equalityCase}};
}

json fit_json(const numeric::FitResult& r) {
  json j;
  j["exponent"] = approx(r.exponent);
  j["logPowerDetermined"] = r.logPowerDetermined;
  if (r.logPower) j["logPower"] = *r.logPower;
  j["coefficient"] = approx(r.coefficient);
  j["residual"] = approx(r.residual);
  j["sampleRange"] = {approx(r.sampleRange.first), approx(r.sampleRange.second)};
  j["tolerance"] = approx(r.tolerance);
  j["poorFit"] = r.poorFit;
  return j;
}

json pole_location_json(const numeric::PoleLocation& p) {
  return {{"pole", approx(p.pole)},
          {"order", p.order},
          {"coefficient", approx(p.coefficient)},
          {"residual", approx(p.residual)},
          {"atSearchEdge", p.atSearchEdge}};
}

json chart_json(const numeric::ChartCoefficients& c) {
  return {{"Cplus", approx(c.Cplus)}, {"Cminus", approx(c.Cminus)}, {"C", approx(c.C)},
          {"B", approx(c.B)},         {"cones", c.cones},           {"evaluations", c.evaluations}};
}

}  // namespace newton_osc::io
