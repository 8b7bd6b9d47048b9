#include "claimlattice/rational.hpp"

#include <algorithm>
#include <cctype>

namespace claimlattice {

namespace {

using UInt128 = unsigned __int128;

UInt128 uabs(Int128 v) {
  return v < 0 ? UInt128(-(v + 1)) + 1 : UInt128(v);
}

UInt128 ugcd(UInt128 a, UInt128 b) {
  while (b != 0) {
    UInt128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("rational multiplication exceeds 128-bit range");
  }
  return r;
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("rational addition exceeds 128-bit range");
  }
  return r;
}

constexpr int kMaxFractionDigits = 18;
constexpr int kMaxIntegerDigits = 30;

}  // namespace

std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  UInt128 u = uabs(v);
  std::string out;
  while (u != 0) {
    out.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

Int128 parse_int128(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer literal");
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    i = 1;
  }
  if (i >= s.size()) throw ParseError("sign without digits: '" + s + "'");
  UInt128 acc = 0;
  const UInt128 limit = neg ? (UInt128(1) << 127) : (UInt128(1) << 127) - 1;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError("invalid integer literal: '" + s + "'");
    }
    acc = acc * 10 + UInt128(s[i] - '0');
    if (acc > limit) throw ParseError("integer literal out of range: '" + s + "'");
  }
  if (neg) return -Int128(acc - 1) - 1;
  return Int128(acc);
}

Rational::Rational(Int128 num, Int128 den) : num_(num), den_(den) {
  if (den_ == 0) throw OverflowError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  UInt128 g = ugcd(uabs(num_), uabs(den_));
  if (g > 1) {
    num_ /= Int128(g);
    den_ /= Int128(g);
  }
}

Rational Rational::from_decimal(const std::string& s) {
  if (s.empty()) throw ParseError("empty decimal literal");
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    i = 1;
  }
  std::string int_part, frac_part;
  bool seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) throw ParseError("multiple decimal points: '" + s + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_dot ? frac_part : int_part).push_back(c);
    } else {
      throw ParseError("invalid decimal literal: '" + s + "'");
    }
  }
  if (int_part.empty() && frac_part.empty()) {
    throw ParseError("decimal literal without digits: '" + s + "'");
  }
  if (frac_part.size() > kMaxFractionDigits) {
    throw ParseError("more than 18 fractional digits: '" + s + "'");
  }
  if (int_part.size() > kMaxIntegerDigits) {
    throw ParseError("integer part out of range: '" + s + "'");
  }
  Int128 num = 0;
  for (char c : int_part) num = checked_add(checked_mul(num, 10), c - '0');
  Int128 den = 1;
  for (char c : frac_part) {
    num = checked_add(checked_mul(num, 10), c - '0');
    den = checked_mul(den, 10);
  }
  if (neg) num = -num;
  return Rational(num, den);
}

Rational Rational::operator+(const Rational& o) const {
  // a/b + c/d = (a*(d/g) + c*(b/g)) / (b*(d/g)) with g = gcd(b, d)
  Int128 g = Int128(ugcd(UInt128(den_), UInt128(o.den_)));
  Int128 db = den_ / g;
  Int128 dd = o.den_ / g;
  Int128 num = checked_add(checked_mul(num_, dd), checked_mul(o.num_, db));
  Int128 den = checked_mul(den_, dd);
  return Rational(num, den);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce before multiplying to keep intermediates small.
  Int128 g1 = Int128(ugcd(uabs(num_), UInt128(o.den_)));
  Int128 g2 = Int128(ugcd(uabs(o.num_), UInt128(den_)));
  Int128 num = checked_mul(num_ / g1, o.num_ / g2);
  Int128 den = checked_mul(den_ / g2, o.den_ / g1);
  return Rational(num, den);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw OverflowError("rational division by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

std::string Rational::to_decimal(int places) const {
  UInt128 n = uabs(num_);
  UInt128 d = UInt128(den_);
  UInt128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  UInt128 scaled;
  if (__builtin_mul_overflow(n, scale, &scaled)) {
    throw OverflowError("decimal rendering exceeds 128-bit range");
  }
  UInt128 q = scaled / d;
  UInt128 r = scaled % d;
  if (2 * r >= d) q += 1;  // half away from zero
  std::string digits = int128_to_string(Int128(q));
  std::string out;
  if (num_ < 0 && q != 0) out.push_back('-');
  if (places == 0) {
    out += digits;
    return out;
  }
  if (digits.size() <= size_t(places)) {
    digits.insert(0, size_t(places) + 1 - digits.size(), '0');
  }
  out += digits.substr(0, digits.size() - places);
  out.push_back('.');
  out += digits.substr(digits.size() - places);
  return out;
}

std::string Rational::to_exact_decimal() const {
  // Strip 2s and 5s from the denominator; anything left means the value has
  // no finite decimal expansion.
  Int128 d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) {
    throw ParseError("value " + to_fraction_string() +
                     " has no finite decimal form");
  }
  int places = std::max(twos, fives);
  Int128 scaled = num_;
  for (int i = 0; i < places; ++i) scaled = checked_mul(scaled, 10);
  scaled /= den_;
  std::string digits = int128_to_string(scaled < 0 ? -scaled : scaled);
  if (digits.size() <= size_t(places)) {
    digits.insert(0, size_t(places) + 1 - digits.size(), '0');
  }
  std::string out;
  if (num_ < 0) out.push_back('-');
  if (places == 0) {
    out += digits;
    return out;
  }
  std::string frac = digits.substr(digits.size() - places);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  out += digits.substr(0, digits.size() - places);
  if (!frac.empty()) {
    out.push_back('.');
    out += frac;
  }
  return out;
}

std::string Rational::to_fraction_string() const {
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

}  // namespace claimlattice
