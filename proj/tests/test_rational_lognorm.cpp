#include <doctest.h>

#include "qweyl/lognorm.hpp"

using namespace qweyl;

TEST_CASE("rational arithmetic stays normalized") {
    Rational a(6, 4);
    CHECK(a.num() == 3);
    CHECK(a.den() == 2);
    CHECK((a + Rational(1, 2)) == Rational(2));
    CHECK((a * Rational(2, 3)) == Rational(1));
    CHECK((Rational(1) / Rational(3)) == Rational(1, 3));
    CHECK(Rational(-4, -6) == Rational(2, 3));
    CHECK(Rational(3, -2).den() == 2);
    CHECK(Rational(3, -2).num() == -3);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
}

TEST_CASE("rational parse and print") {
    CHECK(Rational::parse("-7/2") == Rational(-7, 2));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational(-7, 2).to_string() == "-7/2");
    CHECK(Rational(4).to_string() == "4");
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
}

TEST_CASE("magnitude order: zero below finite below infinite") {
    LogNorm z = LogNorm::zero();
    LogNorm small = LogNorm::from_valuation(3);  // p^-3
    LogNorm big = LogNorm::from_valuation(-2);   // p^2
    LogNorm inf = LogNorm::infinite();
    CHECK(z < small);
    CHECK(small < big);
    CHECK(big < inf);
    CHECK(max(small, big) == big);
    CHECK(min(z, small) == z);
    CHECK(LogNorm::one() < big);
}

TEST_CASE("magnitude products add valuations") {
    LogNorm a = LogNorm::from_valuation(Rational(3, 2));
    LogNorm b = LogNorm::from_valuation(Rational(1, 2));
    CHECK((a * b).valuation() == Rational(2));
    CHECK((a / b).valuation() == Rational(1));
    CHECK((LogNorm::zero() * a).is_zero());
    CHECK(a.pow(4).valuation() == Rational(6));
    CHECK(a.pow(0) == LogNorm::one());
    CHECK(a.root(3).valuation() == Rational(1, 2));
    CHECK(a.inverse().valuation() == Rational(-3, 2));
    CHECK(LogNorm::zero().pow(-1).is_infinite());
    CHECK_THROWS_AS(LogNorm::zero() * LogNorm::infinite(), Error);
}
