#pragma once

#include "qweyl/config.hpp"
#include "qweyl/endomorphism.hpp"

// Shared reference setup for the unit tests: p = 5, N = 40, the annulus
// p^-1 <= |x| <= 1, window [-40, 40], level p^-2.
namespace testfx {

using namespace qweyl;

inline const Config& cfg() {
    static Config c = Config::reference();
    return c;
}
inline PadicContext ctx() { return cfg().context(); }
inline AnnulusParams ann() { return cfg().annulus(); }
inline Window win() { return cfg().window; }
inline LogNorm eta() { return cfg().eta(); }

inline PadicScalar sc(long long v) { return ctx().integer(v); }
inline PadicScalar p_pow(int e) { return ctx().integer(PadicScalar::ppow(cfg().p, e)); }

inline LogNorm mag(long long val) { return LogNorm::from_valuation(val); }
inline LogNorm mag(const Rational& val) { return LogNorm::from_valuation(val); }

inline LaurentElement mono(const PadicScalar& c, int n) {
    return LaurentElement::monomial(c, n, ann(), win());
}
inline LaurentElement mono(long long c, int n) { return mono(sc(c), n); }
inline LaurentElement one_el() { return LaurentElement::one(ann(), win(), ctx()); }
inline LaurentElement zero_el() { return LaurentElement::zero(ann(), win(), ctx()); }

// q = 1 + p^2, h = p^2 (the reference twisted endomorphism) and its
// multiplicative variant h = 0.
inline Endomorphism ref_endo() {
    return Endomorphism::create(ctx().one() + p_pow(2), p_pow(2), ann());
}
inline Endomorphism q_endo() {
    return Endomorphism::create(ctx().one() + p_pow(2), ctx().zero(), ann());
}
inline Endomorphism id_endo() { return Endomorphism::identity(ann(), ctx()); }

} // namespace testfx
