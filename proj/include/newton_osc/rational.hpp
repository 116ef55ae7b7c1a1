#pragma once

// Exact rationals over 64-bit integers. Every operation is checked and throws
// Error(Overflow) instead of wrapping.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "newton_osc/errors.hpp"

namespace newton_osc {

class Rat {
 public:
  Rat() = default;
  Rat(long long n) : n_(n), d_(1) {}  // NOLINT: implicit from integers is intended
  Rat(long long n, long long d);

  long long num() const { return n_; }
  long long den() const { return d_; }

  bool is_integer() const { return d_ == 1; }
  bool is_zero() const { return n_ == 0; }
  int sign() const { return (n_ > 0) - (n_ < 0); }
  double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }
  long long floor() const;
  long long ceil() const;
  Rat abs() const { return n_ < 0 ? -*this : *this; }
  Rat inverse() const;

  // "p/q", or "p" when the denominator is 1.
  std::string str() const;
  // Accepts "p", "p/q", "-p/q" with optional whitespace.
  static Rat parse(const std::string& text);

  Rat operator-() const;
  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

 private:
  static Rat from_wide(__int128 n, __int128 d);
  long long n_ = 0;
  long long d_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

using ZVec = std::vector<long long>;
using QVec = std::vector<Rat>;

long long checked_mul(long long a, long long b);
long long checked_add(long long a, long long b);
long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);

long long gcd_of(const ZVec& v);
// Divide by the gcd of the entries; the zero vector is returned unchanged.
ZVec primitive(const ZVec& v);
long long dot(const ZVec& a, const ZVec& b);
Rat dot(const ZVec& a, const QVec& b);
Rat dot(const QVec& a, const QVec& b);
long long sum_of(const ZVec& v);
QVec to_q(const ZVec& v);
// Least common multiple of the denominators.
long long common_denominator(const QVec& v);
std::string vec_str(const ZVec& v);
std::string vec_str(const QVec& v);

// Rank of a rational matrix given by rows.
int rank_of(std::vector<QVec> rows);
// Determinant of a square integer matrix (rows), exact.
long long det_int(const std::vector<ZVec>& rows);

}  // namespace newton_osc
