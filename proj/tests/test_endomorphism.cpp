#include <doctest.h>

#include "fixtures.hpp"

using namespace qweyl;
using namespace testfx;

TEST_CASE("admissibility conditions") {
    auto id = Endomorphism::validate(ctx().one(), ctx().zero(), ann());
    CHECK(id.admissible);
    CHECK(id.bijective);

    auto ref = Endomorphism::validate(ctx().one() + p_pow(2), p_pow(2), ann());
    CHECK(ref.admissible);
    CHECK(ref.bijective);

    auto contract = Endomorphism::validate(p_pow(1), ctx().zero(), ann());
    CHECK(contract.admissible); // |q| = p^-1 >= r1/r
    CHECK_FALSE(contract.bijective);

    auto bad_q = Endomorphism::validate(p_pow(1).inverse(), ctx().zero(), ann());
    CHECK_FALSE(bad_q.admissible);
    CHECK(bad_q.violated == "|q| <= 1");

    auto bad_lower = Endomorphism::validate(p_pow(2), p_pow(2), ann());
    CHECK_FALSE(bad_lower.admissible);
    CHECK(bad_lower.violated == "|q| >= r1/r or |h| >= r1");
    CHECK_THROWS_AS(Endomorphism::create(p_pow(2), p_pow(2), ann()), AdmissibilityError);
}

TEST_CASE("x-radius values") {
    CHECK(id_endo().x_radius().is_zero());
    CHECK(ref_endo().x_radius() == mag(2));
    CHECK(Endomorphism::create(ctx().one(), p_pow(2), ann()).x_radius() == mag(2));
    CHECK(Endomorphism::create(p_pow(1), ctx().zero(), ann()).x_radius() == mag(0));
}

TEST_CASE("level admissibility against the x-radius") {
    CHECK(id_endo().eta_admissible(LogNorm::zero()).ok);
    CHECK(id_endo().eta_admissible(mag(7)).ok);
    auto at_rho = ref_endo().eta_admissible(mag(2));
    CHECK(at_rho.ok);
    auto below = ref_endo().eta_admissible(mag(3));
    CHECK_FALSE(below.ok);
    CHECK_FALSE(below.h_ok);
}

TEST_CASE("iterates compose the parameters") {
    Endomorphism s = ref_endo();
    CHECK(s.iterate(0).is_identity());
    Endomorphism s2 = s.iterate(2);
    // sigma^2(x) = sigma(sigma(x)) symbolically
    LaurentElement direct = s.apply(s.sigma_x(win()), 10);
    CHECK(equal_at_precision(s2.sigma_x(win()), direct));
    Endomorphism shift3 = Endomorphism::create(ctx().one(), p_pow(2), ann()).iterate(3);
    CHECK(shift3.q() == ctx().one());
    CHECK(shift3.h() == sc(3) * p_pow(2));
}

TEST_CASE("substitution x -> qx + h") {
    Endomorphism s = ref_endo();
    const PadicScalar& q = s.q();
    const PadicScalar& h = s.h();
    LaurentElement out = s.apply(mono(1, 2), 10);
    LaurentElement want = mono(q * q, 2) + mono(sc(2) * q * h, 1) + mono(h * h, 0);
    CHECK(equal_at_precision(out, want));

    CHECK(equal_at_precision(id_endo().apply(mono(7, -3), 10), mono(7, -3)));

    LaurentElement inv_img = s.apply(mono(1, -1), 12);
    CHECK(inv_img.coefficient(-1) == q.inverse());
    CHECK(inv_img.coefficient(-2) == -(h * q.inverse().pow(2)));
    CHECK(agrees_up_to_tails(inv_img * s.sigma_x(win()), one_el()));
}

TEST_CASE("substitution is a ring morphism up to tails") {
    Endomorphism s = ref_endo();
    std::vector<LaurentElement> xs = {mono(1, 2) + one_el(), mono(3, -1),
                                      mono(1, 1) + mono(p_pow(1), -2)};
    for (const auto& f : xs)
        for (const auto& g : xs) {
            LaurentElement lhs = s.apply(f * g, 12);
            LaurentElement rhs = s.apply(f, 12) * s.apply(g, 12);
            CHECK(agrees_up_to_tails(lhs, rhs));
        }
}

TEST_CASE("contractivity on monomials and samples") {
    CHECK(id_endo().contractivity_check({}, 20, win(), 10).contractive);
    auto rep = ref_endo().contractivity_check({mono(3, 2) + mono(1, -5)}, 20, win(), 10);
    CHECK(rep.contractive);
    // shift with |h| = r on the disk, nonnegative monomials only
    AnnulusParams disk = AnnulusParams::disk(LogNorm::one());
    Endomorphism shift = Endomorphism::create(ctx().one(), ctx().one(), disk);
    CHECK(shift.contractivity_check({}, 20, win(), 10).contractive);
}
