#pragma once

// Pole predictions for weighted local zeta functions and the resulting
// oscillation index verdict.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "newton_osc/fan.hpp"
#include "newton_osc/newton.hpp"
#include "newton_osc/pair.hpp"

namespace newton_osc::zeta {

using newton::PowerData;
using newton::Ternary;

struct PoleFamily {
  Rat base;  // -(l_g(a) + |a|) / l_f(a)
  Rat step;  // 1 / l_f(a)
  ZVec ray;
};

struct PoleCandidateSet {
  std::vector<PoleFamily> families;
  bool includesNegativeIntegers = true;
};

// How the weight enters the support values.
enum class WeightMode {
  Polyhedral,  // l_g from the Newton polyhedron of g
  Truncated,   // l_g on interior rays, 0 on boundary rays (convenient phase)
  Monomial,    // g = x^p * (flat or smooth); only x^p is seen
};
const char* to_string(WeightMode m);

// Data shared by all reports for one (f, g) pair.
struct Context {
  PowerData f, g;           // as analysed (after fractional exponent reduction)
  bool reduced = false;     // f had fractional exponents
  long long jacobian = 1;
  WeightMode mode = WeightMode::Polyhedral;
  ZVec monomialExponent;    // for WeightMode::Monomial
  PowerData weightPart;     // the function whose polyhedron plays the weight role
  geometry::Polyhedron phase, weight;
  pair::PairReport pair;
  bool flatCaveat = false;  // markers present in f or g
};
Context make_context(const PowerData& f, const PowerData& g);

// The fan used for the chart decomposition: refines both normal fans.
fan::Fan analysis_fan(const Context& ctx, fan::RayOrder order = fan::RayOrder::Lex,
                      fan::PivotRule rule = fan::PivotRule::Default);

Rat weight_support(const Context& ctx, const ZVec& a);

struct ConeRecord {
  fan::Cone cone;
  std::vector<Rat> lf, lg;
  ZVec size;            // |a^j|
  unsigned A = 0;       // rays attaining the leading pole
  int tauStar = -1;     // face of the phase polyhedron, when A is nonempty
  int gammaStar = -1;   // face of the weight polyhedron
};
std::vector<ConeRecord> cone_records(const Context& ctx, const fan::Fan& fan);

PoleCandidateSet candidate_poles(const Context& ctx, const fan::Fan& fan);

struct LeadingPoleReport {
  Rat value;                 // -1/d
  Rat maxFamilyBase;         // max over rays, computed independently
  int orderBound = 0;
  std::vector<ZVec> achievingRays;
  int multiplicityCrossCheck = 0;  // max #A(sigma)
  int starCones = 0;               // #{sigma : #A(sigma) = m}
  bool baseMatches = false;
  bool multiplicityMatches = false;
  bool principalFacesMatch = false;  // tau*(sigma) principal, gamma*(sigma) paired, onto
  std::optional<bool> monomialContactOk;  // q = d (p + 1) on the boundary with matching m
  bool flatCaveat = false;
};
LeadingPoleReport leading_pole(const Context& ctx, const fan::Fan& fan);

struct HypothesisLedger {
  Ternary phaseCondition = Ternary::Unknown;       // (i)
  Ternary weightCondition = Ternary::Unknown;      // (ii)
  Ternary weightPrincipalSign = Ternary::Unknown;  // (iii)
  Ternary distanceAboveOne = Ternary::Unknown;     // (iv)(a)
  Ternary phaseSign = Ternary::Unknown;            // (iv)(b)
  Ternary notOddAndNonvanishing = Ternary::Unknown;  // (iv)(c)
  Ternary fourth = Ternary::Unknown;               // (a) or (b) or (c)
  newton::NondegCertificate certificate;
  int chosenPrincipal = -1;  // index into pair.pairing used for (iii)/(iv)(c)
  std::vector<std::string> notes;
};
HypothesisLedger hypothesis_ledger(const Context& ctx);

enum class Status { ExactByThm44, UpperBoundByThm41, PredictionOnly };
const char* to_string(Status s);

struct Coefficients {
  Rat L;                      // sum of L_sigma over the star cones, one orthant
  double Cplus = 0, Cminus = 0;
  std::complex<double> B;     // oscillatory leading coefficient
  double phi0 = 1;
};

struct IndexVerdict {
  Rat beta;
  int eta = 0;
  Status status = Status::PredictionOnly;
  bool upperBoundHolds = false;  // (i) and (ii) hold
  Rat fallbackBound;             // -1/d(f, x^p) with p the minimal weight exponent
  ZVec fallbackExponent;
  std::optional<Coefficients> coefficient;
};
IndexVerdict oscillation_index(const Context& ctx, const fan::Fan& fan, const HypothesisLedger& ledger,
                               double phi0);

// Exact zeta coefficients for m = n: sums over orthants and star cones.
Coefficients vertex_coefficients(const Context& ctx, const fan::Fan& fan, double phi0);
// Eq. relating zeta Laurent coefficients at -lambda with order rho to the oscillatory one.
std::complex<double> mellin_coefficient(const Rat& lambda, int rho, double Bplus, double Bminus);

struct NegativeIntegerOrder {
  long long lambda = 0;
  int rho = 0;        // the order is at most rho + 1
  int maxA = 0;
};
std::vector<NegativeIntegerOrder> negative_integer_orders(const Context& ctx, const fan::Fan& fan,
                                                          long long count);

// Integral over [0,1]^n of prod y_j^(l_j s + m_j - 1) psi(y), psi a polynomial.
struct ElementaryInput {
  ZVec l, m;
  std::map<ZVec, Rat> psi;
};
struct ElementaryPoles {
  Rat leadingPole;
  int order = 0;
  Rat coefficient;
  std::vector<PoleFamily> families;  // -(m_j + nu)/l_j
};
ElementaryPoles elementary_pole_oracle(const ElementaryInput& in);

struct Analysis {
  Context ctx;
  fan::Fan fan;
  std::vector<ConeRecord> cones;
  PoleCandidateSet candidates;
  LeadingPoleReport leading;
  HypothesisLedger ledger;
  IndexVerdict verdict;
  std::vector<NegativeIntegerOrder> negativeOrders;
  // Leading pole recomputed on a second subdivision.
  std::optional<LeadingPoleReport> alternate;
  bool subdivisionInvariant = true;
};
struct AnalyzeOptions {
  double phi0 = 1.0;
  bool alternateSubdivision = true;
  long long negativeIntegers = 4;
};
Analysis analyze(const PowerData& f, const PowerData& g, const AnalyzeOptions& opts = {});

}  // namespace newton_osc::zeta
