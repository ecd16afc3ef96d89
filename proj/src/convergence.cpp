#include "qweyl/convergence.hpp"

namespace qweyl {

RadiusCertificate radius_estimate(const LaurentElement& z, const Endomorphism& endo, int order,
                                  DividedDerivatives& engine) {
    if (!engine.endo().same_as(endo)) throw ShapeError("engine built for another endomorphism");
    RadiusCertificate cert;
    cert.order = order;
    cert.radius = LogNorm::infinite();
    // A Laurent polynomial with only nonnegative exponents has d^[k] = 0
    // for every k beyond its degree, so the liminf is over eventually-zero
    // norms once the order covers the degree.
    if (z.tail_bound().is_zero()) {
        int max_deg = 0;
        bool polynomial = true;
        for (const auto& [n, c] : z.coeffs()) {
            (void)c;
            if (n < 0) polynomial = false;
            max_deg = std::max(max_deg, n);
        }
        if (polynomial && order >= max_deg) return cert;
    }
    for (int k = 1; k <= order; ++k) {
        LaurentElement d = engine.apply(k, z);
        LogNorm nk = d.gauss_norm();
        if (!d.gauss_norm_is_exact()) cert.exact = false;
        if (nk.is_zero()) continue;
        LogNorm est = nk.inverse().root(k);
        if (est < cert.radius) {
            cert.radius = est;
            cert.witness_k = k;
        }
    }
    return cert;
}

EtaConvergenceReport eta_convergent_check(const LaurentElement& z, const Endomorphism& endo,
                                          const LogNorm& eta, int order,
                                          DividedDerivatives& engine) {
    if (!engine.endo().same_as(endo)) throw ShapeError("engine built for another endomorphism");
    detail::require_eta_admissible(endo, eta);
    EtaConvergenceReport rep;
    LogNorm znorm = z.gauss_norm();
    const LogNorm& br = endo.params().bound_radius();
    for (int k = 0; k <= order; ++k) {
        LogNorm nk = engine.apply(k, z).gauss_norm();
        rep.derivative_norms.push_back(nk);
        rep.weighted.push_back(nk * eta.pow(k));
        if (rep.annulus_bound_ok && nk > znorm / br.pow(k)) {
            rep.annulus_bound_ok = false;
            rep.bound_violation_k = k;
        }
    }
    rep.decay_from = 0;
    for (int k = 1; k <= order; ++k)
        if (rep.weighted[k] > rep.weighted[k - 1]) rep.decay_from = k;
    int split = order / 2;
    rep.lead_max = LogNorm::zero();
    rep.trail_max = LogNorm::zero();
    for (int k = 0; k <= split; ++k) rep.lead_max = max(rep.lead_max, rep.weighted[k]);
    for (int k = split + 1; k <= order; ++k) rep.trail_max = max(rep.trail_max, rep.weighted[k]);
    rep.verdict = rep.annulus_bound_ok &&
                  (rep.trail_max.is_zero() || rep.trail_max < rep.lead_max);
    return rep;
}

} // namespace qweyl
