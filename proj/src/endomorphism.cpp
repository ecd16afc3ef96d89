#include "qweyl/endomorphism.hpp"

#include "qweyl/qcomb.hpp"

namespace qweyl {

AdmissibilityReport Endomorphism::validate(const PadicScalar& q, const PadicScalar& h,
                                           const AnnulusParams& params) {
    AdmissibilityReport rep;
    LogNorm nq = q.norm();
    LogNorm nh = h.norm();
    rep.norm_q_ok = nq <= LogNorm::one();
    rep.norm_h_ok = nh <= params.outer();
    if (params.is_disk()) {
        rep.lower_ok = true;
    } else {
        LogNorm lower = params.inner() / params.outer();
        rep.lower_ok = nq >= lower || nh >= params.inner();
    }
    rep.admissible = rep.norm_q_ok && rep.norm_h_ok && rep.lower_ok;
    if (!rep.norm_q_ok)
        rep.violated = "|q| <= 1";
    else if (!rep.norm_h_ok)
        rep.violated = "|h| <= r";
    else if (!rep.lower_ok)
        rep.violated = "|q| >= r1/r or |h| >= r1";
    // Bijectivity criterion: q a unit with |q| = |q^-1| = 1.
    rep.bijective = rep.admissible && q.is_unit();
    return rep;
}

Endomorphism Endomorphism::create(const PadicScalar& q, const PadicScalar& h,
                                  const AnnulusParams& params) {
    AdmissibilityReport rep = validate(q, h, params);
    if (!rep.admissible)
        throw AdmissibilityError("endomorphism rejected, violated: " + rep.violated);
    return Endomorphism(q, h, params);
}

Endomorphism::Endomorphism(const PadicScalar& q, const PadicScalar& h, const AnnulusParams& params)
    : q_(q),
      h_(h),
      params_(params),
      ctx_{q.prime(), q.precision_cap()},
      x_radius_(LogNorm::zero()),
      identity_(q.is_one() && h.is_exact_zero()),
      bijective_(q.is_unit()) {
    if (identity_) {
        x_radius_ = LogNorm::zero();
    } else {
        PadicScalar one_minus_q = ctx_.one() - q_;
        x_radius_ = max(one_minus_q.norm() * params_.outer(), h_.norm());
    }
}

LaurentElement Endomorphism::sigma_x(const Window& w) const {
    LaurentElement s = LaurentElement::monomial(q_, 1, params_, w);
    if (!h_.is_exact_zero()) s += LaurentElement::constant(h_, params_, w);
    return s;
}

LaurentElement Endomorphism::x_minus_sigma_x(const Window& w) const {
    if (identity_) return LaurentElement::zero(params_, w, ctx_);
    LaurentElement d = LaurentElement::monomial(ctx_.one() - q_, 1, params_, w);
    if (!h_.is_exact_zero()) d -= LaurentElement::constant(h_, params_, w);
    return d;
}

Endomorphism Endomorphism::iterate(unsigned n) const {
    if (n == 0) return identity(params_, ctx_);
    if (n == 1 || identity_) return *this;
    return Endomorphism(q_.pow(n), qint(n, q_) * h_, params_);
}

EtaAdmissibility Endomorphism::eta_admissible(const LogNorm& eta) const {
    EtaAdmissibility rep;
    if (identity_) {
        rep.q_ok = rep.h_ok = rep.ok = true;
        return rep;
    }
    PadicScalar one_minus_q = ctx_.one() - q_;
    rep.q_ok = one_minus_q.norm() <= eta / params_.outer();
    rep.h_ok = h_.norm() <= eta;
    rep.ok = rep.q_ok && rep.h_ok;
    return rep;
}

LaurentElement Endomorphism::apply(const LaurentElement& f, int trunc_order) const {
    if (identity_) return f;
    const Window& w = f.window();
    LaurentElement out = LaurentElement::zero(params_, w, ctx_);
    LaurentElement s = sigma_x(w);

    // Positive powers by a running product, negative ones by a running
    // product of the truncated inverse.
    int max_pos = 0, max_neg = 0;
    for (const auto& [n, c] : f.coeffs()) {
        (void)c;
        if (n > max_pos) max_pos = n;
        if (-n > max_neg) max_neg = -n;
    }

    std::vector<LaurentElement> pow_cache;
    pow_cache.push_back(LaurentElement::one(params_, w, ctx_));
    for (int n = 1; n <= max_pos; ++n) pow_cache.push_back(pow_cache.back() * s);

    std::vector<LaurentElement> inv_cache;
    if (max_neg > 0) {
        LaurentElement sinv = s.inverted(trunc_order);
        inv_cache.push_back(LaurentElement::one(params_, w, ctx_));
        for (int n = 1; n <= max_neg; ++n) inv_cache.push_back(inv_cache.back() * sinv);
    }

    for (const auto& [n, c] : f.coeffs())
        out += (n >= 0 ? pow_cache[n] : inv_cache[-n]).scaled(c);
    // sigma is contractive on an admissible annulus, so the input tail
    // passes through unenlarged.
    return out.with_added_tail(f.tail_bound());
}

ContractivityReport Endomorphism::contractivity_check(const std::vector<LaurentElement>& samples,
                                                      int monomial_range, const Window& w,
                                                      int trunc_order) const {
    ContractivityReport rep;
    int lo = params_.is_disk() ? 0 : -monomial_range;
    for (int n = lo; n <= monomial_range; ++n) {
        LaurentElement xn = LaurentElement::monomial(ctx_.one(), n, params_, w);
        if (xn.gauss_norm() < apply(xn, trunc_order).gauss_norm()) {
            rep.contractive = false;
            rep.witness_exponent = n;
            rep.witness = "monomial x^" + std::to_string(n);
            return rep;
        }
    }
    for (const LaurentElement& f : samples) {
        if (f.gauss_norm() < apply(f, trunc_order).gauss_norm()) {
            rep.contractive = false;
            rep.witness = "sample " + f.to_string();
            return rep;
        }
    }
    return rep;
}

} // namespace qweyl
