#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "a2ops/rational.hpp"

using a2ops::BigInt;
using a2ops::Rational;

TEST_CASE("construction normalizes sign and gcd") {
    const Rational half(BigInt(2), BigInt(4));
    CHECK(half.num() == 1);
    CHECK(half.den() == 2);

    const Rational neg = Rational::of(1, -2);
    CHECK(neg.num() == -1);
    CHECK(neg.den() == 2);

    CHECK(Rational(0).is_zero());
    CHECK(Rational(1).is_one());
    CHECK(Rational::of(0, 7).den() == 1);
    CHECK_THROWS_AS(Rational::of(1, 0), a2ops::DomainError);
}

TEST_CASE("exact arithmetic") {
    const Rational a = Rational::of(1, 3);
    const Rational b = Rational::of(1, 6);
    CHECK(a + b == Rational::of(1, 2));
    CHECK(a - b == Rational::of(1, 6));
    CHECK(a * b == Rational::of(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational::of(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), a2ops::DomainError);

    // No overflow: numerators grow without loss.
    Rational big(1);
    for (int i = 0; i < 40; ++i) big *= Rational::of(10, 3);
    Rational back = big;
    for (int i = 0; i < 40; ++i) back *= Rational::of(3, 10);
    CHECK(back.is_one());
}

TEST_CASE("ordering and conversion") {
    CHECK(Rational::of(1, 3) < Rational::of(1, 2));
    CHECK(Rational::of(-1, 2) < Rational::of(-1, 3));
    CHECK(Rational::of(1, 2).to_double() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(Rational::of(-7, 4).to_double() == doctest::Approx(-1.75).epsilon(1e-15));
}

TEST_CASE("string round trip") {
    CHECK(Rational::of(3, 4).str() == "3/4");
    CHECK(Rational::of(-3, 4).str() == "-3/4");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational::parse("3/4") == Rational::of(3, 4));
    CHECK(Rational::parse("-3/4") == Rational::of(-3, 4));
    CHECK(Rational::parse("12") == Rational(12));
    CHECK(Rational::parse("-12") == Rational(-12));
    CHECK_THROWS_AS(Rational::parse(""), a2ops::DomainError);
    CHECK_THROWS_AS(Rational::parse("x"), a2ops::DomainError);
    CHECK_THROWS_AS(Rational::parse("1/"), a2ops::DomainError);
    CHECK_THROWS_AS(Rational::parse("/2"), a2ops::DomainError);
    CHECK_THROWS_AS(Rational::parse("1/0"), a2ops::DomainError);
}

TEST_CASE("binomial coefficients") {
    CHECK(a2ops::binomial(0, 0) == Rational(1));
    CHECK(a2ops::binomial(5, 2) == Rational(10));
    CHECK(a2ops::binomial(5, 0) == Rational(1));
    CHECK(a2ops::binomial(5, 5) == Rational(1));
    CHECK(a2ops::binomial(3, 5) == Rational(0));
    CHECK(a2ops::binomial(40, 20) == Rational(137846528820LL));
}
