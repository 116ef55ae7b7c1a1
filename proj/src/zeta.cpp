#include "newton_osc/zeta.hpp"

#include <algorithm>
#include <bit>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <set>

namespace newton_osc::zeta {

using geometry::Polyhedron;

const char* to_string(WeightMode m) {
  switch (m) {
    case WeightMode::Polyhedral: return "Polyhedral";
    case WeightMode::Truncated: return "Truncated";
    case WeightMode::Monomial: return "Monomial";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::ExactByThm44: return "ExactByThm44";
    case Status::UpperBoundByThm41: return "UpperBoundByThm41";
    case Status::PredictionOnly: return "PredictionOnly";
  }
  return "?";
}

namespace {

Ternary t_or(Ternary a, Ternary b) {
  if (a == Ternary::Holds || b == Ternary::Holds) return Ternary::Holds;
  if (a == Ternary::Fails && b == Ternary::Fails) return Ternary::Fails;
  return Ternary::Unknown;
}

Ternary from_bool(bool b) { return b ? Ternary::Holds : Ternary::Fails; }

// Componentwise minimum exponent over terms and markers, on the cleared lattice.
ZVec minimal_exponent(const PowerData& g) {
  ZVec p;
  auto take = [&](const ZVec& e) {
    if (p.empty()) p = e;
    else
      for (size_t j = 0; j < e.size(); ++j) p[j] = std::min(p[j], e[j]);
  };
  for (const auto& [e, c] : g.terms) take(e);
  for (const auto& m : g.flat) take(m.exp);
  if (p.empty()) throw Error(ErrorCode::EmptyInput, "weight has no terms");
  return p;
}

// x_j = y_j^P_j: exponent alpha/denom becomes alpha * P / denom, plus shift.
ZVec lift(const ZVec& e, const ZVec& denom, const ZVec& P, const ZVec& shift) {
  ZVec out(e.size());
  for (size_t j = 0; j < e.size(); ++j) {
    long long num = checked_mul(e[j], P[j]);
    if (num % denom[j] != 0) throw Error(ErrorCode::InvalidInput, "exponent does not clear");
    out[j] = checked_add(num / denom[j], shift[j]);
  }
  return out;
}

}  // namespace

Context make_context(const PowerData& f_in, const PowerData& g_in) {
  if (f_in.n != g_in.n) throw Error(ErrorCode::InvalidInput, "phase and weight dimensions differ");
  if (f_in.n < 1 || f_in.n > geometry::kMaxDim)
    throw Error(ErrorCode::UnsupportedDimension, "n = " + std::to_string(f_in.n));
  if (newton::is_flat(f_in)) throw Error(ErrorCode::FlatFunction, "phase has no non-flat terms");
  if (g_in.terms.empty() && g_in.flat.empty()) throw Error(ErrorCode::EmptyInput, "weight is zero");
  Context ctx;
  const int n = f_in.n;
  if (f_in.has_fractional_exponents() || g_in.has_fractional_exponents()) {
    ZVec P(n), zero(n, 0), shift(n);
    for (int j = 0; j < n; ++j) {
      P[j] = lcm_ll(f_in.denom[j], g_in.denom[j]);
      shift[j] = P[j] - 1;
      ctx.jacobian = checked_mul(ctx.jacobian, P[j]);
    }
    PowerData F(n), G(n);
    for (const auto& [e, c] : f_in.terms) F.add(lift(e, f_in.denom, P, zero), c);
    for (const auto& m : f_in.flat) F.add_flat(lift(m.exp, f_in.denom, P, zero), m.axis, m.scale);
    for (const auto& [e, c] : g_in.terms) G.add(lift(e, g_in.denom, P, shift), c);
    for (const auto& m : g_in.flat) G.add_flat(lift(m.exp, g_in.denom, P, shift), m.axis, m.scale);
    ctx.f = F;
    ctx.g = G;
    ctx.reduced = true;
  } else {
    ctx.f = f_in;
    ctx.g = g_in;
  }
  ctx.flatCaveat = !ctx.f.flat.empty() || !ctx.g.flat.empty();
  if (newton::is_flat(ctx.g)) {
    ctx.mode = WeightMode::Monomial;
    ctx.monomialExponent = minimal_exponent(ctx.g);
    ctx.weightPart = PowerData::monomial(ctx.monomialExponent);
  } else {
    ctx.mode = (!newton::hat_e_flag(ctx.g) && newton::is_convenient(ctx.f)) ? WeightMode::Truncated
                                                                            : WeightMode::Polyhedral;
    ctx.weightPart = ctx.g;
    ctx.weightPart.flat.clear();
    if (ctx.weightPart.is_monomial()) ctx.monomialExponent = ctx.weightPart.terms.begin()->first;
  }
  ctx.pair = pair::newton_multiplicity(ctx.f, ctx.weightPart);
  ctx.phase = ctx.pair.phase;
  ctx.weight = ctx.pair.weight;
  return ctx;
}

fan::Fan analysis_fan(const Context& ctx, fan::RayOrder order, fan::PivotRule rule) {
  fan::Fan base = fan::common_refinement({fan::normal_fan(ctx.phase), fan::normal_fan(ctx.weight)});
  return fan::simplicialize_unimodular(base, order, rule);
}

Rat weight_support(const Context& ctx, const ZVec& a) {
  if (ctx.mode == WeightMode::Truncated &&
      std::any_of(a.begin(), a.end(), [](long long x) { return x == 0; }))
    return Rat(0);
  return ctx.weight.support_value(a);
}

std::vector<ConeRecord> cone_records(const Context& ctx, const fan::Fan& fan) {
  std::vector<ConeRecord> out;
  for (const auto& c : fan.cones) {
    ConeRecord r;
    r.cone = c;
    for (size_t k = 0; k < c.rays.size(); ++k) {
      const ZVec& a = c.rays[k];
      r.lf.push_back(ctx.phase.support_value(a));
      r.lg.push_back(weight_support(ctx, a));
      r.size.push_back(sum_of(a));
      if (!r.lf[k].is_zero() && r.lf[k] == ctx.pair.d * (r.lg[k] + Rat(r.size[k]))) r.A |= 1u << k;
    }
    if (r.A != 0) {
      r.tauStar = fan::gamma_of(ctx.phase, c, r.A);
      r.gammaStar = fan::gamma_of(ctx.weight, c, r.A);
    }
    out.push_back(std::move(r));
  }
  return out;
}

PoleCandidateSet candidate_poles(const Context& ctx, const fan::Fan& fan) {
  PoleCandidateSet set;
  for (const auto& a : fan.rays()) {
    Rat lf = ctx.phase.support_value(a);
    if (lf.is_zero()) continue;
    Rat lg = weight_support(ctx, a);
    set.families.push_back(PoleFamily{-(lg + Rat(sum_of(a))) / lf, lf.inverse(), a});
  }
  return set;
}

LeadingPoleReport leading_pole(const Context& ctx, const fan::Fan& fan) {
  LeadingPoleReport rep;
  const Rat d = ctx.pair.d;
  const int n = ctx.f.n;
  const int m = ctx.pair.m;
  rep.value = -d.inverse();
  rep.flatCaveat = ctx.flatCaveat;
  auto cands = candidate_poles(ctx, fan);
  if (cands.families.empty()) throw Error(ErrorCode::PhaseWithoutFiniteDistance, "no ray with l_f != 0");
  rep.maxFamilyBase = cands.families.front().base;
  for (const auto& fam : cands.families) rep.maxFamilyBase = std::max(rep.maxFamilyBase, fam.base);
  for (const auto& fam : cands.families)
    if (fam.base == rep.maxFamilyBase) rep.achievingRays.push_back(fam.ray);
  rep.baseMatches = rep.maxFamilyBase == rep.value;
  rep.orderBound = d.inverse().is_integer() ? std::min(m + 1, n) : m;

  auto records = cone_records(ctx, fan);
  std::set<int> hit;
  bool paired = true;
  for (const auto& r : records) rep.multiplicityCrossCheck = std::max(rep.multiplicityCrossCheck, std::popcount(r.A));
  for (const auto& r : records) {
    if (std::popcount(r.A) != m) continue;
    ++rep.starCones;
    auto it = std::find(ctx.pair.principalF.begin(), ctx.pair.principalF.end(), r.tauStar);
    if (it == ctx.pair.principalF.end()) {
      paired = false;
      continue;
    }
    size_t k = static_cast<size_t>(it - ctx.pair.principalF.begin());
    if (ctx.pair.pairing[k].faceG != r.gammaStar) paired = false;
    hit.insert(r.tauStar);
  }
  rep.multiplicityMatches = rep.multiplicityCrossCheck == m;
  rep.principalFacesMatch =
      paired && hit == std::set<int>(ctx.pair.principalF.begin(), ctx.pair.principalF.end());

  if (!ctx.monomialExponent.empty()) {
    QVec q(n);
    for (int j = 0; j < n; ++j) q[j] = d * (Rat(ctx.monomialExponent[j]) + Rat(1));
    bool ok = ctx.phase.contains(q);
    if (ok) {
      try {
        int face = geometry::smallest_face(ctx.phase, q);
        ok = n - ctx.phase.faces()[face].dim == m;
      } catch (const Error&) {
        ok = false;
      }
    }
    rep.monomialContactOk = ok;
  }
  return rep;
}

HypothesisLedger hypothesis_ledger(const Context& ctx) {
  HypothesisLedger L;
  const Rat d = ctx.pair.d;
  if (!newton::hat_e_flag(ctx.f)) {
    L.phaseCondition = Ternary::Fails;
    L.notes.push_back("phase has flat terms outside its Newton polyhedron");
  } else {
    L.certificate = newton::nondegeneracy_certificate(ctx.f);
    switch (L.certificate.verdict) {
      case newton::NondegVerdict::Nondegenerate: L.phaseCondition = Ternary::Holds; break;
      case newton::NondegVerdict::Degenerate: L.phaseCondition = Ternary::Fails; break;
      case newton::NondegVerdict::Unknown: L.phaseCondition = Ternary::Unknown; break;
    }
    if (L.certificate.method == newton::NondegMethod::Sampling)
      L.notes.push_back("nondegeneracy of some faces checked by sampling");
  }
  L.weightCondition = from_bool(newton::hat_e_flag(ctx.g) || newton::is_convenient(ctx.f));
  if (L.weightCondition != Ternary::Holds)
    L.notes.push_back("weaker weight condition through the compact part of the weight polyhedron is not evaluated");

  if (newton::is_flat(ctx.g)) {
    L.weightPrincipalSign = Ternary::Fails;
    L.notes.push_back("weight is flat; it has no principal face");
  } else {
    Ternary best = Ternary::Fails;
    for (size_t k = 0; k < ctx.pair.pairing.size(); ++k) {
      auto part = newton::gamma_part(ctx.weightPart, ctx.weight, ctx.pair.pairing[k].faceG).data;
      Ternary t = newton::one_signed(part);
      if (t == Ternary::Holds) {
        best = t;
        L.chosenPrincipal = static_cast<int>(k);
        break;
      }
      if (t == Ternary::Unknown && best == Ternary::Fails) {
        best = t;
        L.chosenPrincipal = static_cast<int>(k);
      }
    }
    if (L.chosenPrincipal < 0 && !ctx.pair.pairing.empty()) L.chosenPrincipal = 0;
    L.weightPrincipalSign = best;
  }
  L.distanceAboveOne = from_bool(d > Rat(1));
  L.phaseSign = newton::one_signed(ctx.f);
  Rat inv = d.inverse();
  bool odd = inv.is_integer() && (inv.num() % 2 != 0);
  if (odd) {
    L.notOddAndNonvanishing = Ternary::Fails;
  } else if (L.chosenPrincipal >= 0) {
    auto part = newton::gamma_part(ctx.f, ctx.phase, ctx.pair.pairing[L.chosenPrincipal].faceF).data;
    L.notOddAndNonvanishing = newton::nonvanishing_off_axes(part);
  } else {
    L.notOddAndNonvanishing = Ternary::Unknown;
  }
  L.fourth = t_or(t_or(L.distanceAboveOne, L.phaseSign), L.notOddAndNonvanishing);
  return L;
}

std::complex<double> mellin_coefficient(const Rat& lambda, int rho, double Bplus, double Bminus) {
  using boost::multiprecision::cpp_dec_float_50;
  cpp_dec_float_50 lam = cpp_dec_float_50(lambda.num()) / cpp_dec_float_50(lambda.den());
  cpp_dec_float_50 g = boost::math::tgamma(lam);
  for (int k = 2; k < rho; ++k) g /= k;
  cpp_dec_float_50 angle = boost::math::constants::pi<cpp_dec_float_50>() * lam / 2;
  cpp_dec_float_50 c = cos(angle), s = sin(angle);
  cpp_dec_float_50 bp(Bplus), bm(Bminus);
  cpp_dec_float_50 re = g * (c * bp + c * bm);
  cpp_dec_float_50 im = g * (s * bp - s * bm);
  return {re.convert_to<double>(), im.convert_to<double>()};
}

Coefficients vertex_coefficients(const Context& ctx, const fan::Fan& fan, double phi0) {
  const int n = ctx.f.n;
  if (ctx.pair.m != n) throw Error(ErrorCode::InvalidInput, "closed form needs m = n");
  Coefficients co;
  co.phi0 = phi0;
  auto records = cone_records(ctx, fan);
  const double invd = ctx.pair.d.inverse().to_double();
  const int orthants = ctx.reduced ? 1 : (1 << n);
  for (int o = 0; o < orthants; ++o) {
    std::vector<int> theta(n);
    std::vector<double> point(n);
    for (int j = 0; j < n; ++j) {
      theta[j] = ((o >> j) & 1) ? -1 : 1;
      point[j] = theta[j];
    }
    for (const auto& r : records) {
      if (std::popcount(r.A) != n) continue;
      Rat Ls(1);
      for (const auto& l : r.lf) Ls /= l;
      if (o == 0) co.L += Ls;
      double fv = newton::gamma_part(ctx.f, ctx.phase, r.tauStar).data.eval(point, false);
      double gv = newton::gamma_part(ctx.weightPart, ctx.weight, r.gammaStar).data.eval(point, false);
      double w = Ls.to_double() * gv * phi0 * static_cast<double>(ctx.jacobian);
      if (fv > 0) co.Cplus += w / std::pow(fv, invd);
      if (fv < 0) co.Cminus += w / std::pow(-fv, invd);
    }
  }
  co.B = mellin_coefficient(ctx.pair.d.inverse(), n, co.Cplus, co.Cminus);
  return co;
}

IndexVerdict oscillation_index(const Context& ctx, const fan::Fan& fan, const HypothesisLedger& L, double phi0) {
  IndexVerdict v;
  v.beta = -ctx.pair.d.inverse();
  v.eta = ctx.pair.m;
  std::vector<Ternary> gates{L.phaseCondition, L.weightCondition, L.weightPrincipalSign, L.fourth};
  bool all = std::all_of(gates.begin(), gates.end(), [](Ternary t) { return t == Ternary::Holds; });
  bool fails = std::any_of(gates.begin(), gates.end(), [](Ternary t) { return t == Ternary::Fails; });
  v.upperBoundHolds = L.phaseCondition == Ternary::Holds && L.weightCondition == Ternary::Holds;
  if (all) v.status = Status::ExactByThm44;
  else if (!fails && v.upperBoundHolds) v.status = Status::UpperBoundByThm41;
  else v.status = Status::PredictionOnly;

  v.fallbackExponent = minimal_exponent(ctx.g);
  v.fallbackBound = -pair::newton_distance(ctx.phase, newton::newton_polyhedron(PowerData::monomial(v.fallbackExponent))).inverse();
  if (ctx.pair.m == ctx.f.n && v.status == Status::ExactByThm44) v.coefficient = vertex_coefficients(ctx, fan, phi0);
  return v;
}

std::vector<NegativeIntegerOrder> negative_integer_orders(const Context& ctx, const fan::Fan& fan, long long count) {
  const int n = ctx.f.n;
  auto records = cone_records(ctx, fan);
  std::vector<NegativeIntegerOrder> out;
  for (long long lam = -1; lam >= -count; --lam) {
    NegativeIntegerOrder o;
    o.lambda = lam;
    for (const auto& r : records) {
      int c = 0;
      for (size_t j = 0; j < r.lf.size(); ++j) {
        if (r.lf[j].is_zero()) continue;
        Rat v = r.lf[j] * Rat(lam) + r.lg[j] + Rat(r.size[j]) - Rat(1);
        if (v.is_integer() && v <= Rat(-1)) ++c;
      }
      o.maxA = std::max(o.maxA, c);
    }
    o.rho = std::min(o.maxA, n - 1);
    out.push_back(o);
  }
  return out;
}

ElementaryPoles elementary_pole_oracle(const ElementaryInput& in) {
  const size_t n = in.l.size();
  if (in.m.size() != n) throw Error(ErrorCode::InvalidInput, "l and m differ in length");
  ElementaryPoles out;
  std::optional<Rat> best;
  for (size_t j = 0; j < n; ++j) {
    if (in.l[j] < 0 || in.m[j] < 1) throw Error(ErrorCode::InvalidInput, "need l >= 0 and m >= 1");
    if (in.l[j] == 0) continue;
    Rat b(-in.m[j], in.l[j]);
    out.families.push_back(PoleFamily{b, Rat(1, in.l[j]), ZVec{static_cast<long long>(j)}});
    if (!best || b > *best) best = b;
  }
  if (!best) throw Error(ErrorCode::InvalidInput, "no exponent depends on s");
  out.leadingPole = *best;
  std::vector<bool> inA(n, false);
  Rat denom(1);
  for (size_t j = 0; j < n; ++j) {
    if (in.l[j] != 0 && Rat(-in.m[j], in.l[j]) == *best) {
      inA[j] = true;
      ++out.order;
      denom *= Rat(in.l[j]);
    }
  }
  // Remaining integral over [0,1]^(n - #A) of the restriction of psi to y_A = 0.
  Rat total;
  for (const auto& [alpha, c] : in.psi) {
    bool restricted = true;
    for (size_t j = 0; j < n; ++j)
      if (inA[j] && alpha[j] != 0) restricted = false;
    if (!restricted) continue;
    Rat term = c;
    for (size_t j = 0; j < n; ++j) {
      if (inA[j]) continue;
      term /= Rat(in.l[j]) * *best + Rat(in.m[j] + alpha[j]);
    }
    total += term;
  }
  out.coefficient = total / denom;
  return out;
}

Analysis analyze(const PowerData& f, const PowerData& g, const AnalyzeOptions& opts) {
  Analysis a;
  a.ctx = make_context(f, g);
  a.fan = analysis_fan(a.ctx);
  a.cones = cone_records(a.ctx, a.fan);
  a.candidates = candidate_poles(a.ctx, a.fan);
  a.leading = leading_pole(a.ctx, a.fan);
  a.ledger = hypothesis_ledger(a.ctx);
  a.verdict = oscillation_index(a.ctx, a.fan, a.ledger, opts.phi0);
  a.negativeOrders = negative_integer_orders(a.ctx, a.fan, opts.negativeIntegers);
  if (opts.alternateSubdivision) {
    fan::Fan alt = analysis_fan(a.ctx, fan::RayOrder::ReverseLex, fan::PivotRule::MinCoordSum);
    a.alternate = leading_pole(a.ctx, alt);
    a.subdivisionInvariant = a.alternate->value == a.leading.value &&
                             a.alternate->maxFamilyBase == a.leading.maxFamilyBase &&
                             a.alternate->orderBound == a.leading.orderBound &&
                             a.alternate->multiplicityCrossCheck == a.leading.multiplicityCrossCheck;
  }
  return a;
}

}  // namespace newton_osc::zeta
