#include <doctest.h>

#include "fixtures.hpp"

using namespace qweyl;
using namespace testfx;

TEST_CASE("gauss norm on the reference annulus") {
    CHECK(mono(1, 1).gauss_norm() == mag(0));          // |x| = r = 1
    CHECK(mono(p_pow(1), -1).gauss_norm() == mag(0));  // |p/x| = p^-1 p = 1
    CHECK(zero_el().gauss_norm().is_zero());
    CHECK(mono(1, -1).gauss_norm() == mag(-1));        // |1/x| = r1^-1
    CHECK(mono(1, 3).gauss_norm_is_exact());
}

TEST_CASE("ring operations") {
    LaurentElement f = (mono(1, 1) + one_el()) * (mono(1, 1) - one_el());
    CHECK(equal_at_precision(f, mono(1, 2) - one_el()));
    CHECK(f.is_exact());
    CHECK((f * zero_el()).is_strictly_zero());

    LaurentElement g = mono(1, 1) + mono(p_pow(1), -1);
    LaurentElement g2 = g * g; // x^2 + 2p + p^2 x^-2
    CHECK(g2.gauss_norm() == mag(0));
    CHECK(g2.coefficient(0) == sc(2) * p_pow(1));
    CHECK(g2.coefficient(-2) == p_pow(2));
}

TEST_CASE("gauss norm is multiplicative and ultrametric on exact elements") {
    std::vector<LaurentElement> xs = {mono(3, 2), mono(1, -4) + mono(25, 1),
                                      one_el() + mono(5, -1), mono(7, 0) + mono(2, 3)};
    for (const auto& f : xs)
        for (const auto& g : xs) {
            CHECK((f * g).gauss_norm() == f.gauss_norm() * g.gauss_norm());
            CHECK((f + g).gauss_norm() <= max(f.gauss_norm(), g.gauss_norm()));
            if (f.gauss_norm() != g.gauss_norm())
                CHECK((f + g).gauss_norm() == max(f.gauss_norm(), g.gauss_norm()));
        }
}

TEST_CASE("window overflow folds into the tail bound") {
    LaurentElement big = mono(1, 39) + mono(1, 2);
    LaurentElement prod = big * big; // x^78 leaves the window
    CHECK(prod.has_tail());
    CHECK(prod.tail_bound() == mag(0)); // |x^78| = 1 on r = 1
    CHECK(prod.coefficient(4) == sc(1));
    CHECK_FALSE(prod.gauss_norm_is_exact());
}

TEST_CASE("monomial inverse is exact") {
    LaurentElement xinv = mono(1, 1).inverted(10);
    CHECK(equal_at_precision(xinv, mono(1, -1)));
    LaurentElement u = LaurentElement::constant(ctx().one() + p_pow(1), ann(), win());
    CHECK(equal_at_precision(u.inverted(10) * u, one_el()));
}

TEST_CASE("geometric inverse carries the certified tail") {
    // f = qx + h with |q| = 1, |h| < r1
    LaurentElement f = mono(sc(26), 1) + mono(p_pow(2), 0);
    int K = 8;
    LaurentElement inv = f.inverted(K);
    // tail = r1^-1 (|h|/r1)^(K+1)
    CHECK(inv.tail_bound() == mag(-1 + (K + 1)));
    LaurentElement prod = f * inv;
    CHECK(agrees_up_to_tails(prod, one_el()));
    CHECK(prod.coefficient(0) == ctx().one());
}

TEST_CASE("no strictly dominant monomial means no unit certificate") {
    LaurentElement f = mono(1, 1) + one_el(); // tie at the outer radius
    CHECK_FALSE(f.has_dominant_monomial());
    CHECK_THROWS_AS(f.inverted(5), NotAUnit);
    CHECK_THROWS_AS(zero_el().inverted(5), NotAUnit);
    // a below-precision leading digit cannot be certified either
    LaurentElement g = mono(sc(3) - sc(3), 2);
    CHECK_THROWS_AS(g.inverted(5), NotAUnit);
}

TEST_CASE("inverse against random dominant elements") {
    std::vector<LaurentElement> xs = {
        mono(7, 2) + mono(p_pow(1), 1), mono(3, -1) + mono(p_pow(2), 1),
        mono(1, 0) + mono(p_pow(1), -1) + mono(p_pow(1), 1)};
    for (const auto& f : xs) {
        LaurentElement inv = f.inverted(12);
        CHECK(agrees_up_to_tails(f * inv, one_el()));
    }
}

TEST_CASE("disks forbid negative exponents and use the outer radius") {
    AnnulusParams disk = AnnulusParams::disk(LogNorm::one());
    CHECK_THROWS_AS(LaurentElement::monomial(sc(1), -1, disk, win()), ShapeError);
    LaurentElement f = LaurentElement::monomial(sc(5), 3, disk, win());
    CHECK(f.gauss_norm() == mag(1));
    CHECK(disk.bound_radius() == LogNorm::one());
    CHECK_THROWS_AS(disk.inner(), ShapeError);
    // x is not a unit in the disk algebra
    LaurentElement x = LaurentElement::monomial(sc(1), 1, disk, win());
    CHECK_THROWS_AS(x.inverted(5), NotAUnit);
}

TEST_CASE("termwise derivative") {
    LaurentElement f = mono(3, 4) + mono(1, -2) + one_el();
    LaurentElement df = f.derivative_dx();
    CHECK(equal_at_precision(df, mono(12, 3) + mono(-2, -3)));
    // the window edge folds
    LaurentElement edge = mono(1, -40);
    CHECK(edge.derivative_dx().has_tail());
}

TEST_CASE("element text rendering") {
    CHECK(zero_el().to_string() == "0");
    CHECK(mono(1, 1).to_string() == "(1)*x^1");
}
