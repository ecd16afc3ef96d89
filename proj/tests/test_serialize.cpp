#include <doctest.h>

#include "fixtures.hpp"
#include "qweyl/serialize.hpp"
#include "qweyl/deformation.hpp"

using namespace qweyl;
using namespace testfx;

TEST_CASE("series documents round trip byte for byte") {
    LaurentElement f = mono(3, -2) + mono(sc(7) / p_pow(2), 4);
    f = f.with_added_tail(mag(Rational(31, 2)));
    Json doc = series_to_json(f);
    LaurentElement back = series_from_json(doc, cfg());
    CHECK(series_to_json(back).dump() == doc.dump());
    CHECK(back.tail_bound() == f.tail_bound());
    CHECK((back - f).is_indistinguishable_from_zero());
}

TEST_CASE("load rejects exponents outside the configured window") {
    Json doc = {{"type", "series"},
                {"params", {{"r_log", "0"}, {"r1_log", "-1"}}},
                {"coeffs", {{"99", "1"}}},
                {"tail_log", nullptr}};
    CHECK_THROWS_AS(series_from_json(doc, cfg()), ParseError);
    Json bad_key = doc;
    bad_key["coeffs"] = {{"abc", "1"}};
    CHECK_THROWS_AS(series_from_json(bad_key, cfg()), ParseError);
}

TEST_CASE("operator documents round trip") {
    Endomorphism s = ref_endo();
    TwistedOperator op(s, eta(), {mono(1, 1), one_el(), mono(p_pow(1), -1)}, mag(9));
    Json doc = operator_to_json(op);
    TwistedOperator back = operator_from_json(doc, cfg());
    CHECK(operator_to_json(back).dump() == doc.dump());
    CHECK(back.endo().same_as(op.endo()));
    CHECK(back.level() == op.level());
    CHECK(back.truncation_tail() == op.truncation_tail());
}

TEST_CASE("xi polynomial documents carry their basis") {
    Endomorphism s = ref_endo();
    XiPolynomial mono_poly = xi_expand(3, s, eta(), win());
    Json d1 = xipoly_to_json(mono_poly);
    CHECK(xipoly_to_json(xipoly_from_json(d1, cfg())).dump() == d1.dump());

    XiPolynomial div = xi_to_divided(mono_poly, s);
    Json d2 = xipoly_to_json(div);
    XiPolynomial back = xipoly_from_json(d2, cfg());
    CHECK(back.basis() == XiBasis::Divided);
    CHECK(xipoly_to_json(back).dump() == d2.dump());
}

TEST_CASE("module documents round trip") {
    ConnectionModule m(ElemMatrix(1, {mono(2, -1)}), id_endo(), mag(Rational(3, 2)));
    Json doc = connection_to_json(m, cfg().K);
    CHECK(connection_to_json(connection_from_json(doc, cfg()), cfg().K).dump() == doc.dump());

    SigmaModule s = confluence_transform(m, ref_endo(), 12, mag(Rational(7, 4)));
    Json sdoc = sigma_module_to_json(s, 12);
    CHECK(sigma_module_to_json(sigma_module_from_json(sdoc, cfg()), 12).dump() == sdoc.dump());
}

TEST_CASE("config validation") {
    Config good = Config::reference();
    CHECK_NOTHROW(good.validate());
    Config c2 = Config::from_json_text(good.to_json_text());
    CHECK(c2.to_json_text() == good.to_json_text());

    Config bad_p = good;
    bad_p.p = 6;
    CHECK_THROWS_AS(bad_p.validate(), Error);
    Config big_p = good;
    big_p.p = 101;
    CHECK_THROWS_AS(big_p.validate(), Error);
    Config small_n = good;
    small_n.N = 4;
    CHECK_THROWS_AS(small_n.validate(), Error);
    Config bad_window = good;
    bad_window.window = {-10, 10};
    CHECK_THROWS_AS(bad_window.validate(), Error); // K = 30 does not fit
    Config bad_radii = good;
    bad_radii.r1_log = Rational(1);
    CHECK_THROWS_AS(bad_radii.validate(), Error);
    CHECK_THROWS_AS(Config::from_json_text("{"), ParseError);
}
