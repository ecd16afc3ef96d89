#include <doctest.h>

#include "fixtures.hpp"
#include "qweyl/operators.hpp"
#include "qweyl/qcomb.hpp"

using namespace qweyl;
using namespace testfx;

namespace {
DividedDerivatives make_engine(const Endomorphism& e) {
    return DividedDerivatives(e, win(), 15);
}
} // namespace

TEST_CASE("standard operators on monomials") {
    Endomorphism s = q_endo();
    DividedDerivatives eng = make_engine(s);
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= 10; ++k) {
            LaurentElement want =
                k <= n ? mono(qbinom(n, k, s.q()), n - k) : zero_el();
            CHECK(equal_at_precision(eng.monomial(k, n), want));
        }
    LaurentElement z = mono(3, 2) + mono(1, -1);
    CHECK(equal_at_precision(eng.apply(0, z), z));
}

TEST_CASE("engine regime check") {
    // |q| < 1 on an annulus cannot price input tails
    CHECK_THROWS_AS(DividedDerivatives(
                        Endomorphism::create(p_pow(1), ctx().zero(), ann()), win(), 10),
                    AdmissibilityError);
}

TEST_CASE("operator application") {
    Endomorphism s = q_endo();
    DividedDerivatives eng = make_engine(s);
    LaurentElement x2 = mono(1, 2);

    TwistedOperator one_op = TwistedOperator::identity(s, eta(), win());
    CHECK(equal_at_precision(op_apply(one_op, x2, eng), x2));

    TwistedOperator d1 = TwistedOperator::divided_power(1, s, eta(), win());
    CHECK(equal_at_precision(op_apply(d1, x2, eng), mono(qint(2, s.q()), 1)));

    TwistedOperator xd1 = d1.left_scaled(mono(1, 1));
    CHECK(equal_at_precision(op_apply(xd1, mono(1, 1), eng), mono(1, 1)));
}

TEST_CASE("commuting an operator past a multiplication") {
    Endomorphism s = q_endo();
    DividedDerivatives eng = make_engine(s);

    auto c1 = commute_past(1, mono(1, 1), eng);
    CHECK(equal_at_precision(c1[0], one_el()));
    CHECK(equal_at_precision(c1[1], s.sigma_x(win())));

    auto ck = commute_past(3, one_el(), eng);
    CHECK(equal_at_precision(ck[3], one_el()));
    CHECK(ck[0].is_indistinguishable_from_zero());

    // d^[2] o x = q^2 x d^[2] + d^[1], validated through its action
    auto c2 = commute_past(2, mono(1, 1), eng);
    CHECK(equal_at_precision(c2[2], mono(s.q().pow(2), 1)));
    CHECK(equal_at_precision(c2[1], one_el()));
    for (int n : {2, 3}) {
        LaurentElement xn = mono(1, n);
        LaurentElement lhs = eng.apply(2, mono(1, 1) * xn);
        LaurentElement rhs = c2[2] * eng.apply(2, xn) + c2[1] * eng.apply(1, xn);
        CHECK(equal_at_precision(lhs, rhs));
    }
}

TEST_CASE("composition and the quantum rule") {
    Endomorphism s = ref_endo();
    DividedDerivatives eng = make_engine(s);
    TwistedOperator d1 = TwistedOperator::divided_power(1, s, eta(), win());
    TwistedOperator comp = op_compose(d1, d1, eng, 30);
    TwistedOperator want =
        TwistedOperator::divided_power(2, s, eta(), win()).scaled(qint(2, s.q()));
    CHECK(operators_agree(comp, want));

    TwistedOperator idop = TwistedOperator::identity(s, eta(), win());
    TwistedOperator f = d1.left_scaled(mono(1, 1) + one_el());
    CHECK(operators_agree(op_compose(f, idop, eng, 30), f));
    CHECK(operators_agree(op_compose(idop, f, eng, 30), f));

    // (x d^[1]) o (x d^[1]) checked through its action
    TwistedOperator xd = d1.left_scaled(mono(1, 1));
    TwistedOperator xdxd = op_compose(xd, xd, eng, 30);
    for (int n : {1, 2, 3}) {
        LaurentElement xn = mono(1, n);
        LaurentElement lhs = op_apply(xdxd, xn, eng);
        LaurentElement rhs = op_apply(xd, op_apply(xd, xn, eng), eng);
        CHECK(agrees_up_to_tails(lhs, rhs));
    }
}

TEST_CASE("twisted Leibniz rule at order one") {
    Endomorphism s = ref_endo();
    DividedDerivatives eng = make_engine(s);
    std::vector<LaurentElement> xs = {mono(1, 2) + one_el(), mono(3, -1), mono(2, 1)};
    for (const auto& f : xs)
        for (const auto& g : xs) {
            LaurentElement lhs = eng.apply(1, f * g);
            LaurentElement rhs = eng.apply(1, f) * g + s.apply(f, 15) * eng.apply(1, g);
            CHECK(agrees_up_to_tails(lhs, rhs));
        }
}

TEST_CASE("taylor data multiplies like the ring") {
    Endomorphism s = ref_endo();
    LaurentElement f = mono(1, 2) + mono(3, 0);
    LaurentElement g = mono(1, 1) + one_el();
    TaylorExpansion tf = taylor_expand(f, s, eta(), 6);
    TaylorExpansion tg = taylor_expand(g, s, eta(), 6);
    TaylorExpansion tfg = taylor_expand(f * g, s, eta(), 6);
    XiPolynomial lhs = xi_to_monomial(tf.as_xi_polynomial(), s) *
                       xi_to_monomial(tg.as_xi_polynomial(), s);
    XiPolynomial rhs = xi_to_monomial(tfg.as_xi_polynomial(), s);
    for (int d = 0; d <= rhs.degree(); ++d)
        CHECK(equal_at_precision(lhs.coeff(d), rhs.coeff(d)));
}

TEST_CASE("substitution oracle agrees with the recurrence engine") {
    Endomorphism s = ref_endo();
    DividedDerivatives eng(s, win(), 15);
    std::vector<LaurentElement> xs = {mono(1, 4), mono(1, -2), mono(2, 3) + mono(1, -1),
                                      one_el() + mono(p_pow(1), -3)};
    for (int i = 0; i < 40; ++i)
        xs.push_back(mono(sc(3 + i), i % 7 - 3) + mono(sc(1 + i * i), (i * 5) % 9 - 4));
    for (const auto& z : xs) {
        TaylorExpansion t = taylor_expand(z, s, eta(), 10);
        for (int k = 0; k <= 10; ++k)
            CHECK(agrees_up_to_tails(eng.apply(k, z), t.derivatives[k]));
    }
}

TEST_CASE("xi action on operators") {
    Endomorphism s = ref_endo();
    DividedDerivatives eng = make_engine(s);
    TwistedOperator d1 = TwistedOperator::divided_power(1, s, eta(), win());
    TwistedOperator xi_d1 = d1.xi_action();
    // xi . d^[1] = d^[0] - (x - sigma(x)) d^[1]
    CHECK(equal_at_precision(xi_d1.coeff(0), one_el()));
    CHECK(equal_at_precision(xi_d1.coeff(1), -s.x_minus_sigma_x(win())));

    TwistedOperator c = TwistedOperator::identity(s, eta(), win());
    CHECK(op_apply(c.xi_action(), one_el(), eng).is_indistinguishable_from_zero());

    // evaluating at 1 shifts the pairing down by one degree
    TwistedOperator f =
        TwistedOperator(s, eta(), {mono(3, 1), mono(2, 0) + mono(1, 1), mono(7, -1)});
    LaurentElement at_one = op_apply(f.xi_action(), one_el(), eng);
    CHECK(equal_at_precision(at_one, f.coeff(1)));
}

TEST_CASE("level norms") {
    Endomorphism s = ref_endo();
    TwistedOperator d3 = TwistedOperator::divided_power(3, s, eta(), win());
    CHECK(d3.norm() == mag(-6)); // eta^-3 = p^6
    CHECK(TwistedOperator::zero(s, eta(), win()).norm().is_zero());
    TwistedOperator mixed = TwistedOperator(
        s, eta(), {zero_el(), mono(1, 1), LaurentElement::constant(p_pow(1), ann(), win())});
    CHECK(mixed.norm() == mag(-3)); // max(r eta^-1, p^-1 eta^-2) = p^3
    CHECK(mixed.norm_is_exact());
}

TEST_CASE("weyl images and the order-one commutation") {
    Endomorphism s = q_endo();
    DividedDerivatives eng = make_engine(s);
    CHECK(operators_agree(weyl_to_divided(0, s, eta(), win()).op,
                          TwistedOperator::identity(s, eta(), win())));
    CHECK(operators_agree(weyl_to_divided(1, s, eta(), win()).op,
                          TwistedOperator::divided_power(1, s, eta(), win())));
    WeylImage w3 = weyl_to_divided(3, s, eta(), win());
    CHECK(equal_at_precision(w3.op.coeff(3),
                             LaurentElement::constant(qfact(3, s.q()), ann(), win())));
    CHECK_FALSE(w3.non_unit_factorial);
    CHECK(weyl_to_divided(5, id_endo(), eta(), win()).non_unit_factorial); // 5! is not a unit

    TwistedOperator wc = weyl_commutation(mono(1, 1), eng, eta());
    CHECK(equal_at_precision(wc.coeff(0), one_el()));
    CHECK(equal_at_precision(wc.coeff(1), s.sigma_x(win())));
    TwistedOperator wc1 = weyl_commutation(one_el(), eng, eta());
    CHECK(operators_agree(wc1, TwistedOperator::divided_power(1, s, eta(), win())));

    LaurentElement x2 = mono(1, 2);
    TwistedOperator wc2 = weyl_commutation(x2, eng, eta());
    CHECK(equal_at_precision(wc2.coeff(0), mono(qint(2, s.q()), 1)));
    CHECK(equal_at_precision(wc2.coeff(1), mono(s.q().pow(2), 2)));
    auto cp = commute_past(1, x2, eng);
    CHECK(equal_at_precision(wc2.coeff(0), cp[0]));
    CHECK(equal_at_precision(wc2.coeff(1), cp[1]));
}

TEST_CASE("norm submultiplicativity under composition") {
    Endomorphism s = ref_endo();
    DividedDerivatives eng = make_engine(s);
    std::vector<TwistedOperator> ops = {
        TwistedOperator(s, eta(), {mono(1, 1), mono(3, 0)}),
        TwistedOperator(s, eta(), {zero_el(), mono(p_pow(1), 2), one_el()}),
        TwistedOperator::divided_power(2, s, eta(), win()).left_scaled(mono(1, -1))};
    for (const auto& a : ops)
        for (const auto& b : ops)
            CHECK(op_compose(a, b, eng, 30).norm() <= a.norm() * b.norm());
}
