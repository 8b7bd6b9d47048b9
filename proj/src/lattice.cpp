#include "claimlattice/lattice.hpp"

namespace claimlattice {

BasisPoints discretize(const Rational& x) {
  if (x.is_negative() || x > Rational::from_int(1)) {
    throw OutOfRange("score " + x.to_fraction_string() +
                     " outside [0,1], cannot discretize");
  }
  // round-half-up(x * 10000): q + 1 iff remainder/den >= 1/2
  Int128 t;
  if (__builtin_mul_overflow(x.num(), Int128(10000), &t)) {
    throw OverflowError("discretize numerator exceeds 128-bit range");
  }
  Int128 q = t / x.den();
  Int128 r = t % x.den();
  if ((unsigned __int128)(r)*2 >= (unsigned __int128)(x.den())) q += 1;
  return BasisPoints(int(q));
}

BasisPoints discretize(const std::string& decimal) {
  return discretize(Rational::from_decimal(decimal));
}

BasisPoints meet_all(const std::vector<BasisPoints>& xs) {
  if (xs.empty()) throw EmptyInput("meet_all over an empty list");
  BasisPoints acc = xs.front();
  for (size_t i = 1; i < xs.size(); ++i) acc = meet(acc, xs[i]);
  return acc;
}

}  // namespace claimlattice
