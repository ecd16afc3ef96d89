#include <doctest.h>

#include "fixtures.hpp"

using namespace qweyl;
using namespace testfx;

TEST_CASE("norms of basic scalars") {
    CHECK(p_pow(1).norm() == mag(1));
    CHECK(ctx().zero().norm().is_zero());
    CHECK((ctx().one() + p_pow(2)).norm() == mag(0)); // unit
    CHECK(sc(50).norm() == mag(2));
    CHECK(ctx().zero().is_exact_zero());
}

TEST_CASE("norm is multiplicative and ultrametric") {
    std::vector<PadicScalar> xs = {sc(3), sc(50), p_pow(3), sc(-7), sc(12345),
                                   sc(7).inverse(), p_pow(2) * sc(11)};
    for (const auto& a : xs)
        for (const auto& b : xs) {
            CHECK((a * b).norm() == a.norm() * b.norm());
            CHECK((a + b).norm() <= max(a.norm(), b.norm()));
            if (a.norm() != b.norm()) CHECK((a + b).norm() == max(a.norm(), b.norm()));
        }
}

TEST_CASE("subtraction of equal values is below precision, not zero") {
    PadicScalar a = sc(7);
    PadicScalar d = a - a;
    CHECK(d.is_below_precision());
    CHECK_FALSE(d.is_exact_zero());
    CHECK(d.norm() == mag(40));
    CHECK_FALSE(d.norm_is_exact());
}

TEST_CASE("division tracks surviving precision") {
    PadicScalar a = sc(7);
    PadicScalar b = a / p_pow(3);
    CHECK(b.valuation() == -3);
    CHECK(b.abs_precision() == 37);
    PadicScalar c = b * p_pow(3);
    CHECK(c == a);
    CHECK(c.abs_precision() == 37);
    CHECK_THROWS_AS(a / ctx().zero(), DivisionByZero);
    CHECK_THROWS_AS(a / (a - a), PrecisionExhausted);
    CHECK_THROWS_AS((a - a).inverse(), PrecisionExhausted);
}

TEST_CASE("fractions need unit denominators") {
    PadicScalar t = PadicScalar::from_fraction(3, 7, cfg().p, cfg().N);
    CHECK((t * sc(7)) == sc(3));
    CHECK_THROWS_AS(PadicScalar::from_fraction(1, 5, cfg().p, cfg().N), ParseError);
    CHECK_THROWS_AS(PadicScalar::from_fraction(1, 0, cfg().p, cfg().N), ParseError);
}

TEST_CASE("scalar text round trips") {
    std::vector<PadicScalar> xs = {ctx().zero(), ctx().one(), sc(-3), sc(50),
                                   sc(7) / p_pow(2),
                                   PadicScalar::below_precision(12, cfg().p, cfg().N)};
    for (const auto& x : xs) {
        PadicScalar back = PadicScalar::parse(x.to_text(), cfg().p, cfg().N);
        CHECK(back.identical_to(x));
    }
    CHECK(PadicScalar::parse("-3", cfg().p, cfg().N) == sc(-3));
    CHECK(PadicScalar::parse("3/7", cfg().p, cfg().N) ==
          PadicScalar::from_fraction(3, 7, cfg().p, cfg().N));
    CHECK_THROWS_AS(PadicScalar::parse("1/5", cfg().p, cfg().N), ParseError);
    CHECK_THROWS_AS(PadicScalar::parse("zz", cfg().p, cfg().N), ParseError);
    CHECK_THROWS_AS(PadicScalar::parse("", cfg().p, cfg().N), ParseError);
}

TEST_CASE("pow and inverse") {
    PadicScalar q = ctx().one() + p_pow(2);
    CHECK(q.pow(3) == q * q * q);
    CHECK((q.inverse() * q) == ctx().one());
    CHECK(q.pow(0) == ctx().one());
    CHECK((p_pow(2).inverse()).valuation() == -2);
}

TEST_CASE("p-adic logarithm") {
    PadicScalar q = ctx().one() + p_pow(2);
    PadicScalar lq = padic_log(q);
    CHECK(lq.valuation() == 2);
    // log turns products into sums
    PadicScalar q2 = ctx().one() + p_pow(3) * sc(2);
    PadicScalar lhs = padic_log(q * q2);
    PadicScalar rhs = padic_log(q) + padic_log(q2);
    CHECK(lhs == rhs);
    CHECK_THROWS_AS(padic_log(sc(2)), LogDivergent);
}
