#include <random>

#include "doctest.h"
#include "walg/arith.hpp"
#include "walg/error.hpp"

using namespace walg;

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("-6/4") == Rational(-3, 2));
  CHECK(Rational::parse("7").to_string() == "7");
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
  CHECK_THROWS_AS(Rational(1, 2).to_int64(), DomainError);
  CHECK(Rational(-12).to_int64() == -12);
}

TEST_CASE("rational field axioms on random samples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-40, 40);
  auto draw = [&] {
    long den = d(rng);
    if (den == 0) den = 1;
    return Rational(d(rng), den);
  };
  for (int i = 0; i < 300; ++i) {
    const Rational a = draw(), b = draw(), c = draw();
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("half integers") {
  CHECK(HalfInt::parse("3/2") == HalfInt::from_doubled(3));
  CHECK(HalfInt::parse("-2") == HalfInt(-2));
  CHECK(HalfInt::parse("4/2") == HalfInt(2));
  CHECK_THROWS(HalfInt::parse("1/3"));
  CHECK_THROWS_AS(HalfInt::from_rational(Rational(1, 3)), DomainError);
  CHECK(HalfInt::from_doubled(5).to_string() == "5/2");
  CHECK_THROWS_AS(HalfInt::from_doubled(5).to_int(), DomainError);
  CHECK(HalfInt(3).to_int() == 3);
  CHECK(abs(HalfInt::from_doubled(-3)) == HalfInt::from_doubled(3));
  CHECK_THROWS(HalfInt::from_doubled(INT64_MAX) + HalfInt(1));
}

TEST_CASE("pochhammer symbols against explicit products") {
  for (int a2 = -12; a2 <= 12; ++a2) {
    const Rational a(a2, 2);
    Rational up(1), down(1);
    for (int n = 0; n <= 7; ++n) {
      CHECK(pochhammer_rising(a, n) == up);
      CHECK(pochhammer_falling(a, n) == down);
      up *= a + Rational(n);
      down *= a - Rational(n);
    }
  }
  CHECK(pochhammer_rising(Rational(-3), 5) == Rational(0));
  CHECK_THROWS_AS(pochhammer_rising(Rational(1), -1), DomainError);
}

TEST_CASE("binomial matches Pascal's triangle") {
  // rows of Pascal's triangle built by addition only
  std::vector<std::vector<Rational>> row{{Rational(1)}};
  for (int n = 1; n <= 14; ++n) {
    std::vector<Rational> next(n + 1, Rational(0));
    for (int k = 0; k <= n; ++k) {
      if (k > 0) next[k] += row.back()[k - 1];
      if (k < n) next[k] += row.back()[k];
    }
    row.push_back(next);
  }
  for (int n = 0; n <= 14; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(binomial(Rational(n), k) == row[n][k]);
    CHECK(binomial(Rational(n), n + 1) == Rational(0));
    CHECK(binomial(Rational(n), -1) == Rational(0));
  }
  // upper negation: C(-a, k) = (-1)^k C(a+k-1, k)
  for (int a = 1; a <= 6; ++a) {
    for (int k = 0; k <= 6; ++k) {
      CHECK(binomial(Rational(-a), k) == sign_power(k) * binomial(Rational(a + k - 1), k));
    }
  }
}

TEST_CASE("factorial") {
  Rational f(1);
  for (int n = 0; n <= 20; ++n) {
    CHECK(factorial(n) == f);
    f *= Rational(n + 1);
  }
}

TEST_CASE("small Pochhammer and binomial values") {
  CHECK(pochhammer_rising(Rational(3), 2) == Rational(12));
  CHECK(pochhammer_rising(Rational(-1), 4) == Rational(0));
  CHECK(pochhammer_falling(Rational(5), 2) == Rational(20));
  CHECK(pochhammer_falling(Rational(-1), 3) == Rational(-6));
  CHECK(pochhammer_falling(Rational(-1), 3) == sign_power(3) * pochhammer_rising(Rational(1), 3));
  CHECK(pochhammer_falling(Rational(1, 2), 2) == Rational(-1, 4));
  CHECK(binomial(Rational(-1), 2) == Rational(1));
  CHECK(binomial(Rational(7, 3), 0) == Rational(1));
}
