#include <doctest.h>

#include "fixtures.hpp"
#include "qweyl/qcomb.hpp"

using namespace qweyl;
using namespace testfx;

TEST_CASE("quantum integers") {
    PadicScalar q = ctx().one() + p_pow(2);
    CHECK(qint(0, q).is_exact_zero());
    CHECK(qint(3, q) == ctx().one() + q + q * q);
    CHECK(qint(9, ctx().one()) == sc(9));
}

TEST_CASE("quantum factorials") {
    PadicScalar q = ctx().one() + p_pow(2);
    CHECK(qfact(0, q) == ctx().one());
    CHECK(qfact(2, q) == ctx().one() + q);
    CHECK(qfact(3, ctx().one()) == sc(6));
    for (unsigned n = 1; n <= 10; ++n) CHECK(qfact(n, q) == qint(n, q) * qfact(n - 1, q));
}

TEST_CASE("quantum binomials by the Pascal walk") {
    PadicScalar q = sc(26);
    CHECK(qbinom(7, 0, q) == ctx().one());
    CHECK(qbinom(0, 4, q).is_exact_zero());
    PadicScalar expect = ctx().one() + q + sc(2) * q.pow(2) + q.pow(3) + q.pow(4);
    CHECK(qbinom(4, 2, q) == expect);
    CHECK(qbinom(3, 5, q).is_exact_zero());
}

TEST_CASE("norm bound certificate") {
    CHECK(qbinom_norm_bound(9, 4, mag(0)) == mag(0));      // |q| = 1
    CHECK(qbinom_norm_bound(9, 4, mag(2)) == mag(0));      // |q| < 1 collapses
    CHECK(qbinom_norm_bound(9, 0, mag(-3)) == mag(0));     // k = 0
    CHECK(qbinom_norm_bound(3, 2, mag(-1)) == mag(-4));    // |q| = p -> p^4
}

TEST_CASE("unit and nonzero reports for quantum integers") {
    PadicScalar q = ctx().one() + p_pow(2);
    QIntReport r = qints_invertible_upto(q, 20);
    CHECK_FALSE(r.ok);
    CHECK(r.first_failure == 5); // (p)_q = p mod p^2
    QIntReport r1 = qints_invertible_upto(ctx().one(), 20);
    CHECK_FALSE(r1.ok);
    CHECK(r1.first_failure == 5);
    CHECK(qints_invertible_upto(p_pow(1), 20).ok); // (n)_q = 1 + q(...) is a unit
    CHECK(qints_nonzero_upto(q, 30).ok);
}

TEST_CASE("pascal identity at random q") {
    std::vector<PadicScalar> qs = {sc(26), sc(7), p_pow(1), sc(-4), sc(1)};
    for (const auto& q : qs)
        for (unsigned n = 1; n <= 12; ++n)
            for (unsigned k = 1; k <= n; ++k)
                CHECK(qbinom(n, k, q) == qbinom(n - 1, k - 1, q) + q.pow(k) * qbinom(n - 1, k, q));
}
