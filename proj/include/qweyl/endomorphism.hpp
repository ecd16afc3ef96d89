#pragma once

#include <string>
#include <vector>

#include "qweyl/annulus.hpp"

namespace qweyl {

/// Outcome of the admissibility test for sigma(x) = qx + h on an annulus:
/// |q| <= 1 and |h| <= r, together with |q| >= r1/r or |h| >= r1 (the
/// second condition is vacuous on a disk).
struct AdmissibilityReport {
    bool norm_q_ok = false;   // |q| <= 1
    bool norm_h_ok = false;   // |h| <= r
    bool lower_ok = false;    // |q| >= r1/r or |h| >= r1
    bool admissible = false;
    bool bijective = false;   // q a unit with |q| = |q^-1| = 1
    std::string violated;     // names the failed inequality when !admissible
};

/// Componentwise form of the comparison eta >= |x - sigma(x)|:
/// |1-q| <= eta/r and |h| <= eta.
struct EtaAdmissibility {
    bool q_ok = false;
    bool h_ok = false;
    bool ok = false;
};

struct ContractivityReport {
    bool contractive = true;
    int witness_exponent = 0;      // monomial exponent of a violation
    std::string witness;           // description of a violating sample
};

/// The affinoid endomorphism x -> qx + h of an annulus or disk algebra,
/// kept together with its admissibility data and cached x-radius
/// |x - sigma(x)| = max{|1-q| r, |h|}.
class Endomorphism {
public:
    static AdmissibilityReport validate(const PadicScalar& q, const PadicScalar& h,
                                        const AnnulusParams& params);
    /// Throws AdmissibilityError when validate() fails.
    static Endomorphism create(const PadicScalar& q, const PadicScalar& h,
                               const AnnulusParams& params);
    static Endomorphism identity(const AnnulusParams& params, const PadicContext& ctx) {
        return create(ctx.one(), ctx.zero(), params);
    }

    const PadicScalar& q() const { return q_; }
    const PadicScalar& h() const { return h_; }
    const AnnulusParams& params() const { return params_; }
    const PadicContext& context() const { return ctx_; }
    const LogNorm& x_radius() const { return x_radius_; }
    bool is_identity() const { return identity_; }
    bool is_bijective() const { return bijective_; }

    /// sigma(x) = qx + h as an element.
    LaurentElement sigma_x(const Window& w) const;
    /// x - sigma(x) = (1-q)x - h; exactly zero for the identity.
    LaurentElement x_minus_sigma_x(const Window& w) const;

    /// sigma^n, i.e. (q^n, (n)_q h).
    Endomorphism iterate(unsigned n) const;

    /// Componentwise test of eta >= x_radius().
    EtaAdmissibility eta_admissible(const LogNorm& eta) const;

    /// Substitution x -> qx + h. Nonnegative powers expand exactly;
    /// negative powers go through the truncated inverse of qx + h with
    /// certified tails (trunc_order correction terms).
    LaurentElement apply(const LaurentElement& f, int trunc_order) const;

    /// Verifies |sigma(f)| <= |f| on the monomial basis x^n for
    /// |n| <= monomial_range and on the supplied samples.
    ContractivityReport contractivity_check(const std::vector<LaurentElement>& samples,
                                            int monomial_range, const Window& w,
                                            int trunc_order) const;

    /// Same q, h (bit-identical), same annulus.
    bool same_as(const Endomorphism& o) const {
        return q_.identical_to(o.q_) && h_.identical_to(o.h_) && params_ == o.params_;
    }

private:
    Endomorphism(const PadicScalar& q, const PadicScalar& h, const AnnulusParams& params);

    PadicScalar q_;
    PadicScalar h_;
    AnnulusParams params_;
    PadicContext ctx_;
    LogNorm x_radius_;
    bool identity_;
    bool bijective_;
};

} // namespace qweyl
