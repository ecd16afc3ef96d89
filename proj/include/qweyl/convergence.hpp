#pragma once

#include "qweyl/operators.hpp"

namespace qweyl {

/// Order-K evidence for the radius of convergence
///   Rad(z) = liminf_k |d^[k](z)|^(-1/k):
/// the minimum over 1 <= k <= K of |d^[k](z)|^(-1/k) with its witness.
/// This is an upper estimate of the liminf truncated at order K, never a
/// claimed exact radius. The radius is infinite when every derivative of
/// positive order vanishes.
struct RadiusCertificate {
    LogNorm radius;
    int witness_k = 0;    // 0 when the radius is infinite
    int order = 0;        // the K this certificate was computed at
    bool exact = true;    // false when some derivative norm was only a bound
};

RadiusCertificate radius_estimate(const LaurentElement& z, const Endomorphism& endo, int order,
                                  DividedDerivatives& engine);

/// The sequence |d^[k](z)| eta^k for k <= K together with the index from
/// which it is non-increasing, and the annulus bound
/// |d^[k](z)| <= |z| br^(-k) checked for every k. The verdict is evidence
/// up to order K only.
struct EtaConvergenceReport {
    std::vector<LogNorm> weighted;      // |d^[k](z)| eta^k
    std::vector<LogNorm> derivative_norms;
    int decay_from = 0;                 // last index where the sequence increased
    LogNorm lead_max;                   // max over the leading half
    LogNorm trail_max;                  // max over the trailing half
    bool annulus_bound_ok = true;
    int bound_violation_k = -1;
    bool verdict = false;
};

EtaConvergenceReport eta_convergent_check(const LaurentElement& z, const Endomorphism& endo,
                                          const LogNorm& eta, int order,
                                          DividedDerivatives& engine);

} // namespace qweyl
