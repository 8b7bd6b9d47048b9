#pragma once

#include <string>

#include "claimlattice/errors.hpp"

namespace claimlattice {

using Int128 = __int128;

std::string int128_to_string(Int128 v);
// Parses an optionally signed decimal integer. Throws ParseError on garbage
// or values outside the Int128 range.
Int128 parse_int128(const std::string& s);

/// Exact rational number over checked 128-bit integers.
///
/// Always stored in lowest terms with a positive denominator, so value
/// equality is representation equality. Every arithmetic step checks for
/// overflow and throws OverflowError instead of wrapping; with decimal
/// inputs capped at 18 fractional digits (see from_decimal) the magnitudes
/// occurring in coverage computations stay far below the 2^127 limit.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(Int128 num, Int128 den);
  static Rational from_int(Int128 v) { return Rational(v, 1); }

  // Parses a plain decimal string ("3", "0.3", "-1.25") into an exact
  // rational. Scientific notation and binary floats are deliberately not
  // accepted. At most 18 fractional digits.
  static Rational from_decimal(const std::string& s);

  Int128 num() const { return num_; }
  Int128 den() const { return den_; }

  std::string num_string() const { return int128_to_string(num_); }
  std::string den_string() const { return int128_to_string(den_); }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on division by zero
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  /// Renders the value rounded to `places` decimal digits, half away from
  /// zero. Used only at the presentation edge.
  std::string to_decimal(int places) const;

  /// Exact decimal rendering with no rounding; requires the denominator to
  /// be of the form 2^a * 5^b (always true for values parsed from decimal
  /// strings). Minimal form: no trailing fractional zeros.
  std::string to_exact_decimal() const;

  std::string to_fraction_string() const;  // "num/den" for diagnostics

 private:
  void normalize();
  Int128 num_;
  Int128 den_;  // > 0
};

}  // namespace claimlattice
