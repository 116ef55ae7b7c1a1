#include "newton_osc/rational.hpp"

#include <cctype>
#include <limits>
#include <sstream>

namespace newton_osc {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::PointNotOnBoundary: return "PointNotOnBoundary";
    case ErrorCode::PointOutsidePolyhedron: return "PointOutsidePolyhedron";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::FlatFunction: return "FlatFunction";
    case ErrorCode::FaceNotOfThisPolyhedron: return "FaceNotOfThisPolyhedron";
    case ErrorCode::PhaseWithoutFiniteDistance: return "PhaseWithoutFiniteDistance";
    case ErrorCode::ConeNotCompatible: return "ConeNotCompatible";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::UnimodularizationBudgetExceeded: return "UnimodularizationBudgetExceeded";
    case ErrorCode::FanNotCompatible: return "FanNotCompatible";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::GatesNotHeld: return "GatesNotHeld";
    case ErrorCode::NoncompactPrincipalFaceWithoutLocalization:
      return "NoncompactPrincipalFaceWithoutLocalization";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

constexpr __int128 kMax = std::numeric_limits<long long>::max();
constexpr __int128 kMin = std::numeric_limits<long long>::min();

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long narrow(__int128 v) {
  if (v > kMax || v < kMin) throw Error(ErrorCode::Overflow, "integer exceeds 64 bits");
  return static_cast<long long>(v);
}

}  // namespace

long long checked_mul(long long a, long long b) { return narrow(static_cast<__int128>(a) * b); }
long long checked_add(long long a, long long b) { return narrow(static_cast<__int128>(a) + b); }

long long gcd_ll(long long a, long long b) { return narrow(gcd_wide(a, b)); }

long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  long long g = gcd_ll(a, b);
  long long r = checked_mul(a / g, b);
  return r < 0 ? -r : r;
}

Rat::Rat(long long n, long long d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  *this = from_wide(n, d);
}

Rat Rat::from_wide(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd_wide(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rat r;
  r.n_ = narrow(n);
  r.d_ = narrow(d);
  if (r.n_ == 0) r.d_ = 1;
  return r;
}

long long Rat::floor() const {
  long long q = n_ / d_;
  if (n_ % d_ != 0 && n_ < 0) --q;
  return q;
}

long long Rat::ceil() const {
  long long q = n_ / d_;
  if (n_ % d_ != 0 && n_ > 0) ++q;
  return q;
}

Rat Rat::inverse() const {
  if (n_ == 0) throw Error(ErrorCode::InvalidInput, "inverse of zero");
  return from_wide(d_, n_);
}

Rat Rat::operator-() const { return from_wide(-static_cast<__int128>(n_), d_); }

Rat operator+(const Rat& a, const Rat& b) {
  if (a.d_ == b.d_) return Rat::from_wide(static_cast<__int128>(a.n_) + b.n_, a.d_);
  return Rat::from_wide(static_cast<__int128>(a.n_) * b.d_ + static_cast<__int128>(b.n_) * a.d_,
                        static_cast<__int128>(a.d_) * b.d_);
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
  return Rat::from_wide(static_cast<__int128>(a.n_) * b.n_, static_cast<__int128>(a.d_) * b.d_);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.n_ == 0) throw Error(ErrorCode::InvalidInput, "division by zero");
  return Rat::from_wide(static_cast<__int128>(a.n_) * b.d_, static_cast<__int128>(a.d_) * b.n_);
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
  __int128 l = static_cast<__int128>(a.n_) * b.d_;
  __int128 r = static_cast<__int128>(b.n_) * a.d_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rat::str() const {
  if (d_ == 1) return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

Rat Rat::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto to_ll = [&](const std::string& part) -> long long {
    if (part.empty()) throw Error(ErrorCode::InvalidInput, "bad rational '" + text + "'");
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(part, &pos);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad rational '" + text + "'");
    }
    if (pos != part.size()) throw Error(ErrorCode::InvalidInput, "bad rational '" + text + "'");
    return v;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(to_ll(s));
  return Rat(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

long long gcd_of(const ZVec& v) {
  long long g = 0;
  for (long long x : v) g = gcd_ll(g, x);
  return g;
}

ZVec primitive(const ZVec& v) {
  long long g = gcd_of(v);
  if (g <= 1) return v;
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

long long dot(const ZVec& a, const ZVec& b) {
  __int128 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return narrow(s);
}

Rat dot(const ZVec& a, const QVec& b) {
  Rat s;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += b[i] * Rat(a[i]);
  return s;
}

Rat dot(const QVec& a, const QVec& b) {
  Rat s;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

long long sum_of(const ZVec& v) {
  long long s = 0;
  for (long long x : v) s = checked_add(s, x);
  return s;
}

QVec to_q(const ZVec& v) { return QVec(v.begin(), v.end()); }

long long common_denominator(const QVec& v) {
  long long d = 1;
  for (const Rat& x : v) d = lcm_ll(d, x.den());
  return d;
}

std::string vec_str(const ZVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string vec_str(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

int rank_of(std::vector<QVec> rows) {
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  int rank = 0;
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      Rat f = rows[r][c] / rows[rank][c];
      for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

long long det_int(const std::vector<ZVec>& rows) {
  // Bareiss fraction-free elimination in 128-bit.
  const size_t n = rows.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = rows[i][j];
  int sign = 1;
  __int128 prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        __int128 v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = v / prev;
        if (m[i][j] > (static_cast<__int128>(1) << 100) || m[i][j] < -(static_cast<__int128>(1) << 100))
          throw Error(ErrorCode::Overflow, "determinant growth");
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return narrow(sign * m[n - 1][n - 1]);
}

}  // namespace newton_osc
