#include <doctest.h>

#include "fixtures.hpp"
#include "qweyl/convergence.hpp"

using namespace qweyl;
using namespace testfx;

TEST_CASE("radius certificates") {
    Endomorphism id = id_endo();
    DividedDerivatives eng(id, win(), 15);

    RadiusCertificate c1 = radius_estimate(one_el().scaled(sc(7)), id, 10, eng);
    CHECK(c1.radius.is_infinite());
    CHECK(c1.witness_k == 0);

    RadiusCertificate c2 = radius_estimate(mono(3, 4) + one_el(), id, 10, eng);
    CHECK(c2.radius.is_infinite()); // polynomials have finitely many derivatives

    // |d^[k](1/x)| = r1^(-1-k): the estimate is min_k p^(-(1+k)/k)
    RadiusCertificate c3 = radius_estimate(mono(1, -1), id, 10, eng);
    CHECK(c3.radius == mag(2));
    CHECK(c3.witness_k == 1);
    CHECK(c3.exact);
}

TEST_CASE("eta-convergence evidence") {
    Endomorphism id = id_endo();
    DividedDerivatives eng(id, win(), 15);

    EtaConvergenceReport r1 = eta_convergent_check(mono(1, 1), id, eta(), 12, eng);
    CHECK(r1.verdict);
    CHECK(r1.annulus_bound_ok);
    CHECK(r1.weighted[2].is_zero());

    // |d^[k](1/x)| eta^k = p^(1-k)
    EtaConvergenceReport r2 = eta_convergent_check(mono(1, -1), id, eta(), 12, eng);
    CHECK(r2.verdict);
    for (int k = 0; k <= 12; ++k) CHECK(r2.weighted[k] == mag(k - 1));

    Endomorphism s = ref_endo();
    DividedDerivatives eng2(s, win(), 15);
    EtaConvergenceReport r3 =
        eta_convergent_check(mono(2, 5) + mono(3, -4) + one_el(), s, eta(), 15, eng2);
    CHECK(r3.annulus_bound_ok);
    CHECK(r3.verdict);
}
