#pragma once

// Sparse power-series data for phases and weights, their Newton polyhedra,
// face parts, and nondegeneracy certificates.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "newton_osc/geometry.hpp"
#include "newton_osc/rational.hpp"

namespace newton_osc::newton {

// The term scale * x^exp * exp(-1/x_axis^2).
struct FlatMarker {
  ZVec exp;
  int axis = 0;
  Rat scale{1};
};

// Exponent vectors are integers read as alpha / denom componentwise.
struct PowerData {
  int n = 0;
  ZVec denom;
  std::map<ZVec, Rat> terms;
  std::vector<FlatMarker> flat;

  PowerData() = default;
  explicit PowerData(int dim) : n(dim), denom(dim, 1) {}

  static PowerData unit(int n);
  static PowerData monomial(const ZVec& exp, Rat coeff = Rat(1));
  // Sum of monomials with integer exponents.
  static PowerData polynomial(int n, const std::vector<std::pair<ZVec, Rat>>& terms);

  PowerData& add(const ZVec& exp, const Rat& coeff);
  PowerData& add_flat(const ZVec& exp, int axis, const Rat& scale);

  QVec exponent(const ZVec& alpha) const;
  bool has_fractional_exponents() const;
  bool is_monomial() const { return flat.empty() && terms.size() == 1; }
  std::string str() const;

  // Numeric evaluation, flat markers included unless disabled.
  double eval(const std::vector<double>& x, bool include_flat = true) const;
};

struct GammaPart {
  int face = 0;
  PowerData data;
};

enum class NondegVerdict { Nondegenerate, Degenerate, Unknown };
enum class NondegMethod { Exact2D, Sampling };

struct NondegCertificate {
  NondegVerdict verdict = NondegVerdict::Unknown;
  std::optional<std::vector<double>> witness;
  std::optional<int> face;
  double gradientNorm = 0.0;
  NondegMethod method = NondegMethod::Exact2D;
};

const char* to_string(NondegVerdict v);
const char* to_string(NondegMethod m);

bool is_flat(const PowerData& f);
geometry::Polyhedron newton_polyhedron(const PowerData& f);
GammaPart gamma_part(const PowerData& f, const geometry::Polyhedron& P, int face);
bool is_convenient(const PowerData& f);
// Structural membership flag for the class of functions admitting face parts.
bool hat_e_flag(const PowerData& f);
NondegCertificate nondegeneracy_certificate(const PowerData& f);
PowerData product_support(const std::vector<PowerData>& factors);
// x^1 * f.
PowerData times_coordinate_monomial(const PowerData& f);
// f(theta_1 x_1, ..., theta_n x_n) for a sign vector theta.
PowerData reflect(const PowerData& f, const std::vector<int>& theta);
// Swap coordinates by a permutation: result(x) = f(x_perm).
PowerData permute(const PowerData& f, const std::vector<int>& perm);

// Univariate polynomials with rational coefficients (low degree first).
struct UPoly {
  std::vector<Rat> c;
  int degree() const;
  Rat operator()(const Rat& x) const;
  double eval(double x) const;
  UPoly derivative() const;
  void trim();
};
UPoly poly_gcd(UPoly a, UPoly b);
// Number of distinct real roots in the open interval (lo, hi); infinite ends allowed.
int count_real_roots(const UPoly& p, std::optional<Rat> lo, std::optional<Rat> hi);
// Distinct real roots, approximated by bisection.
std::vector<double> real_roots(const UPoly& p);

// Sign behaviour of a polynomial off the coordinate hyperplanes.
enum class Ternary { Holds, Fails, Unknown };
const char* to_string(Ternary t);
// Holds when the function keeps one sign on the whole space.
Ternary one_signed(const PowerData& f);
// Holds when f has no zero with all coordinates nonzero.
Ternary nonvanishing_off_axes(const PowerData& f);

}  // namespace newton_osc::newton
