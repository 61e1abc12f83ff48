#include <catch2/catch_amalgamated.hpp>

#include "monofl/rational.hpp"
#include "monofl/rng.hpp"

using namespace monofl;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
  Rational q = make_rational(4, -6);
  REQUIRE(numerator(q) == -2);
  REQUIRE(denominator(q) == 3);

  // Arithmetic keeps the canonical form: gcd(num, den) = 1, den > 0.
  Rng rng(20240817);
  for (int i = 0; i < 200; ++i) {
    Rational a = rng.rational(50, 20);
    Rational b = rng.rational(50, 20);
    for (const Rational& v :
         {Rational(a + b), Rational(a - b), Rational(a * b)}) {
      REQUIRE(denominator(v) > 0);
      REQUIRE(gcd(numerator(v), denominator(v)) == 1);
    }
  }
}

TEST_CASE("rational parse and print round-trip") {
  REQUIRE(parse_rational("3/4") == Rational(3, 4));
  REQUIRE(parse_rational("-3/4") == Rational(-3, 4));
  REQUIRE(parse_rational("7") == Rational(7));
  REQUIRE(parse_rational("-0") == Rational(0));
  REQUIRE(to_string(Rational(-3, 4)) == "-3/4");
  REQUIRE(to_string(Rational(5)) == "5");
  REQUIRE(to_string(make_rational(6, -4)) == "-3/2");

  REQUIRE_THROWS_AS(parse_rational(""), Error);
  REQUIRE_THROWS_AS(parse_rational("1/0"), Error);
  REQUIRE_THROWS_AS(parse_rational("a/2"), Error);
  REQUIRE_THROWS_AS(parse_rational("1.5"), Error);

  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    Rational q = rng.rational(1000, 60);
    REQUIRE(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("floor and ceiling of rationals") {
  // floor(-1/2) = -1, ceil(-1/2) = 0; integers are their own floor/ceil.
  REQUIRE(floor_rat(Rational(-1, 2)) == -1);
  REQUIRE(ceil_rat(Rational(-1, 2)) == 0);
  REQUIRE(floor_rat(Rational(7, 2)) == 3);
  REQUIRE(ceil_rat(Rational(7, 2)) == 4);
  REQUIRE(floor_rat(Rational(-6, 3)) == -2);
  REQUIRE(ceil_rat(Rational(-6, 3)) == -2);
  REQUIRE(floor_rat(Rational(0)) == 0);
  REQUIRE(ceil_rat(Rational(0)) == 0);

  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational q = rng.rational(100, 9);
    Int f = floor_rat(q), c = ceil_rat(q);
    REQUIRE(Rational(f) <= q);
    REQUIRE(q < Rational(f + 1));
    REQUIRE(q <= Rational(c));
    REQUIRE(Rational(c - 1) < q);
  }
}

TEST_CASE("binomials and factorials") {
  REQUIRE(binomial(Int(5), Int(2)) == 10);
  REQUIRE(binomial(Int(5), Int(0)) == 1);
  REQUIRE(binomial(Int(3), Int(5)) == 0);
  REQUIRE(binomial(Int(40), Int(20)) == Int("137846528820"));
  REQUIRE(factorial(0) == 1);
  REQUIRE(factorial(6) == 720);
}
