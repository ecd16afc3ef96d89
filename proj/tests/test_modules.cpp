#include <doctest.h>

#include "fixtures.hpp"
#include "qweyl/modules.hpp"

using namespace qweyl;
using namespace testfx;

namespace {
LogNorm conf_level() { return mag(Rational(3, 2)); }
LogNorm conf_eta_prime() { return mag(Rational(7, 4)); }
ConnectionModule rank1(const LaurentElement& g) {
    return ConnectionModule(ElemMatrix(1, {g}), id_endo(), conf_level());
}
} // namespace

TEST_CASE("factorial valuation") {
    CHECK(factorial_valuation(4, 5) == 0);
    CHECK(factorial_valuation(5, 5) == 1);
    CHECK(factorial_valuation(30, 5) == 7);
    CHECK(factorial_valuation(25, 5) == 6);
}

TEST_CASE("power matrices of simple connections") {
    auto zero_powers = connection_power_matrices(rank1(zero_el()), 6);
    for (int k = 1; k <= 6; ++k) CHECK(zero_powers[k].norm().is_zero());

    PadicScalar c = sc(7);
    auto const_powers =
        connection_power_matrices(rank1(LaurentElement::constant(c, ann(), win())), 6);
    for (int k = 0; k <= 6; ++k)
        CHECK(equal_at_precision(const_powers[k].at(0, 0),
                                 LaurentElement::constant(c.pow(k), ann(), win())));

    // G = a/x gives the falling factorials a(a-1)...(a-k+1) / x^k
    long long a = 3;
    auto pow_powers = connection_power_matrices(rank1(mono(a, -1)), 5);
    long long falling = 1;
    for (int k = 1; k <= 5; ++k) {
        falling *= a - (k - 1);
        CHECK(equal_at_precision(pow_powers[k].at(0, 0), mono(falling, -k)));
    }
}

TEST_CASE("decay certificates separate convergent from divergent") {
    auto good = connection_power_matrices(
        rank1(LaurentElement::constant(p_pow(1), ann(), win())), 20);
    DecayCertificate ok = decay_certificate(good, cfg().p, conf_eta_prime());
    CHECK(ok.ok);
    CHECK(ok.trail_max < ok.lead_max);

    // |G| = p^2 outruns eta' and the weighted sequence grows
    auto bad = connection_power_matrices(
        rank1(LaurentElement::constant(p_pow(2).inverse(), ann(), win())), 20);
    DecayCertificate nope = decay_certificate(bad, cfg().p, conf_eta_prime());
    CHECK_FALSE(nope.ok);
    CHECK_THROWS_AS(confluence_transform(rank1(LaurentElement::constant(p_pow(2).inverse(),
                                                                        ann(), win())),
                                         ref_endo(), 20, conf_eta_prime()),
                    NotConvergentAtOrderK);
}

TEST_CASE("confluence of the exponential connection") {
    Endomorphism s = ref_endo();
    PadicScalar c = sc(5);
    ConnectionModule m = rank1(LaurentElement::constant(c, ann(), win()));
    SigmaModule out = confluence_transform(m, s, 20, conf_eta_prime());
    CHECK(out.rank() == 1);

    LaurentElement gamma = -s.x_minus_sigma_x(win());
    LaurentElement oracle = one_el();
    LaurentElement pw = one_el();
    BigInt kf = 1;
    for (int k = 1; k <= 20; ++k) {
        pw *= gamma.scaled(c);
        kf *= k;
        oracle += pw.scaled(ctx().integer(kf).inverse());
    }
    CHECK((out.matrix().at(0, 0) - oracle).is_indistinguishable_from_zero());
}

TEST_CASE("confluence of the power connection at a = 2 is exact") {
    Endomorphism s = ref_endo();
    SigmaModule out = confluence_transform(rank1(mono(2, -1)), s, 20, conf_eta_prime());
    // (q + h/x)^2 = q^2 + 2qh/x + h^2/x^2
    const PadicScalar& q = s.q();
    const PadicScalar& h = s.h();
    LaurentElement want = mono(q * q, 0) + mono(sc(2) * q * h, -1) + mono(h * h, -2);
    CHECK(agrees_up_to_tails(out.matrix().at(0, 0), want, out.tail()));
    CHECK(equal_at_precision(
        out.matrix().at(0, 0) - want,
        zero_el().with_added_tail(out.matrix().at(0, 0).tail_bound())));
}

TEST_CASE("division by k! aborts when precision runs out") {
    PadicContext small{5, 8};
    PadicScalar one = small.one();
    ConnectionModule m(
        ElemMatrix(1, {LaurentElement::constant(small.integer(25), ann(), win())}),
        Endomorphism::identity(ann(), small), conf_level());
    Endomorphism s = Endomorphism::create(one + small.integer(25), small.integer(25), ann());
    CHECK_THROWS_AS(confluence_transform(m, s, 40, conf_eta_prime()), PrecisionExhausted);
}

TEST_CASE("strong coordinates") {
    CHECK_FALSE(strong_predicate(id_endo(), win()));
    CHECK(strong_predicate(q_endo(), win())); // (1-q)x is a dominant monomial
    CHECK_FALSE(strong_predicate(ref_endo(), win())); // tie at the outer radius

    TwistedOperator t = strong_map(q_endo(), eta(), win());
    CHECK(equal_at_precision(t.coeff(0), one_el()));
    CHECK(equal_at_precision(t.coeff(1), -q_endo().x_minus_sigma_x(win())));
}

TEST_CASE("structure identity and semilinearity") {
    Endomorphism s = ref_endo();
    ConnectionModule m = rank1(LaurentElement::constant(sc(5), ann(), win()));
    SigmaModule out = confluence_transform(m, s, 20, conf_eta_prime());
    std::vector<std::pair<LaurentElement, std::vector<LaurentElement>>> samples = {
        {mono(1, 1), {one_el()}}, {one_el() + mono(1, 2), {mono(1, 1)}}};
    StructureReport rep = sigma_structure_identity_check(m, out, s, 20, samples);
    CHECK(rep.identity_ok);
    CHECK(rep.semilinearity_ok);

    // trivial connection: S = Id exactly
    SigmaModule triv = confluence_transform(rank1(zero_el()), s, 20, conf_eta_prime());
    CHECK(equal_at_precision(triv.matrix().at(0, 0), one_el()));
    CHECK(triv.tail().is_zero());
    StructureReport rep0 = sigma_structure_identity_check(rank1(zero_el()), triv, s, 20, samples);
    CHECK(rep0.identity_ok);
}

TEST_CASE("sample-level solution matching") {
    Endomorphism s = ref_endo();

    // trivial connection: constants are horizontal and sigma-fixed
    ConnectionModule m0 = rank1(zero_el());
    SigmaModule s0 = confluence_transform(m0, s, 15, conf_eta_prime());
    H0Report r0 = h_complex_sample_check(m0, s0, s, 15, {{one_el()}}, {{one_el()}});
    CHECK(r0.ok);
    CHECK(r0.horizontal_passed == 1);

    // nilpotent rank 2: G = [[0,1],[0,0]], horizontal (1, 0)
    std::vector<LaurentElement> entries = {zero_el(), one_el(), zero_el(), zero_el()};
    ConnectionModule m2(ElemMatrix(2, entries), id_endo(), conf_level());
    SigmaModule s2 = confluence_transform(m2, s, 15, conf_eta_prime());
    // S = Id + gamma G exactly, since G^2 = 0 and dG = 0
    LaurentElement gamma = -s.x_minus_sigma_x(win());
    CHECK(equal_at_precision(s2.matrix().at(0, 1), gamma));
    CHECK(equal_at_precision(s2.matrix().at(0, 0), one_el()));
    H0Report r2 = h_complex_sample_check(m2, s2, s, 15, {{one_el(), zero_el()}}, {});
    CHECK(r2.ok);

    // rank 1 with c != 0 has no polynomial horizontal sections: vacuous
    ConnectionModule mc = rank1(LaurentElement::constant(sc(5), ann(), win()));
    SigmaModule sc_ = confluence_transform(mc, s, 15, conf_eta_prime());
    H0Report rv = h_complex_sample_check(mc, sc_, s, 15, {}, {});
    CHECK(rv.vacuous);
    CHECK(rv.ok);
}

TEST_CASE("logarithmic route for h = 0") {
    PadicScalar q = ctx().one() + p_pow(2);
    Endomorphism s = q_endo();

    ConnectionModule triv = rank1(zero_el());
    SigmaModule lt = log_derivative_form(triv, q, 15, conf_eta_prime());
    CHECK(agrees_up_to_tails(lt.matrix().at(0, 0), one_el(), lt.tail()));

    ConnectionModule m = rank1(mono(2, -1));
    SigmaModule via_log = log_derivative_form(m, q, 20, conf_eta_prime());
    SigmaModule via_conf = confluence_transform(m, s, 20, conf_eta_prime());
    CHECK(agrees_up_to_tails(via_log.matrix().at(0, 0), via_conf.matrix().at(0, 0),
                             max(via_log.tail(), via_conf.tail())));

    CHECK_THROWS_AS(log_derivative_form(m, sc(2), 10, conf_eta_prime()), LogDivergent);
}
