#include <doctest.h>

#include "claimlattice/rational.hpp"
#include "claimlattice/sha256.hpp"

using namespace claimlattice;

TEST_CASE("decimal parsing is exact") {
  CHECK(Rational::from_decimal("0.3") == Rational(3, 10));
  CHECK(Rational::from_decimal("3.0") == Rational(3, 1));
  CHECK(Rational::from_decimal("3") == Rational(3, 1));
  CHECK(Rational::from_decimal("-1.25") == Rational(-5, 4));
  CHECK(Rational::from_decimal("0.00005") == Rational(1, 20000));
  CHECK(Rational::from_decimal(".5") == Rational(1, 2));
  CHECK(Rational::from_decimal("23.3") == Rational(233, 10));
}

TEST_CASE("malformed decimals are rejected") {
  CHECK_THROWS_AS(Rational::from_decimal(""), ParseError);
  CHECK_THROWS_AS(Rational::from_decimal("."), ParseError);
  CHECK_THROWS_AS(Rational::from_decimal("-"), ParseError);
  CHECK_THROWS_AS(Rational::from_decimal("1.2.3"), ParseError);
  CHECK_THROWS_AS(Rational::from_decimal("1e3"), ParseError);
  CHECK_THROWS_AS(Rational::from_decimal("abc"), ParseError);
  CHECK_THROWS_AS(Rational::from_decimal("0.1234567890123456789"), ParseError);
}

TEST_CASE("arithmetic normalizes to lowest terms") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2, 1));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
}

TEST_CASE("comparisons follow the number line") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational());
  CHECK(Rational(7, 1) >= Rational(7, 1));
  CHECK(Rational(19165, 233) > Rational(12415, 233));
}

TEST_CASE("display rounding is half away from zero") {
  CHECK(Rational(19165, 233).to_decimal(1) == "82.3");
  CHECK(Rational(12415, 233).to_decimal(1) == "53.3");
  CHECK(Rational(1, 2).to_decimal(0) == "1");
  CHECK(Rational(5, 100).to_decimal(1) == "0.1");
  CHECK(Rational(449, 1000).to_decimal(1) == "0.4");
  CHECK(Rational(480, 233).to_decimal(3) == "2.060");
  CHECK(Rational(2310, 233).to_decimal(3) == "9.914");
}

TEST_CASE("exact decimal rendering") {
  CHECK(Rational(3, 10).to_exact_decimal() == "0.3");
  CHECK(Rational(3, 1).to_exact_decimal() == "3");
  CHECK(Rational(3, 2).to_exact_decimal() == "1.5");
  CHECK(Rational(1, 8).to_exact_decimal() == "0.125");
  CHECK_THROWS(Rational(1, 3).to_exact_decimal());
}

TEST_CASE("int128 string round trip") {
  CHECK(int128_to_string(parse_int128("19165")) == "19165");
  CHECK(int128_to_string(parse_int128("-233")) == "-233");
  CHECK(int128_to_string(parse_int128("0")) == "0");
  CHECK_THROWS_AS(parse_int128("12x"), ParseError);
  CHECK_THROWS_AS(parse_int128(""), ParseError);
  CHECK_THROWS_AS(parse_int128("999999999999999999999999999999999999999999"),
                  ParseError);
}

TEST_CASE("sha256 matches the published test vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}
