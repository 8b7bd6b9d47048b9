#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "claimlattice/errors.hpp"
#include "claimlattice/rational.hpp"

namespace claimlattice {

/// One point of the finite match-strength lattice: an integer number of
/// basis points in 0..=10000, where 10000 stands for a score of 1.0.
///
/// The total order is plain integer order; meet and join are min and max.
/// No other value is representable, so boundedness of every downstream
/// computation is enforced at construction.
class BasisPoints {
 public:
  BasisPoints() : v_(0) {}
  explicit BasisPoints(int v) : v_(check(v)) {}

  static BasisPoints bottom() { return BasisPoints(0); }
  static BasisPoints top() { return BasisPoints(10000); }

  int value() const { return v_; }
  Rational as_fraction() const { return Rational(v_, 10000); }

  /// Human rendering: value/100 with two decimals ("77.00" for 7700).
  /// File formats always carry the plain integer instead.
  std::string display() const { return Rational(v_, 100).to_decimal(2); }

  bool operator==(const BasisPoints& o) const { return v_ == o.v_; }
  bool operator!=(const BasisPoints& o) const { return v_ != o.v_; }
  bool operator<(const BasisPoints& o) const { return v_ < o.v_; }
  bool operator<=(const BasisPoints& o) const { return v_ <= o.v_; }
  bool operator>(const BasisPoints& o) const { return v_ > o.v_; }
  bool operator>=(const BasisPoints& o) const { return v_ >= o.v_; }

 private:
  static int check(int v) {
    if (v < 0 || v > 10000) {
      throw OutOfRange("basis points must lie in 0..=10000, got " +
                       std::to_string(v));
    }
    return v;
  }
  int v_;
};

/// Rounds an exact score in [0,1] to the nearest basis point, half up.
BasisPoints discretize(const Rational& x);

/// Same, from a decimal string ("0.823"). Binary floats are never accepted.
BasisPoints discretize(const std::string& decimal);

inline BasisPoints meet(BasisPoints a, BasisPoints b) { return a < b ? a : b; }
inline BasisPoints join(BasisPoints a, BasisPoints b) { return a < b ? b : a; }

/// Meet of a non-empty list. Callers wanting the empty-meet convention must
/// pass top() explicitly; an empty list is an error, not a default.
BasisPoints meet_all(const std::vector<BasisPoints>& xs);

}  // namespace claimlattice
