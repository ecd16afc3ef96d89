#pragma once

#include <vector>

#include "qweyl/padic.hpp"

namespace qweyl {

/// Quantum integer (n)_q = 1 + q + ... + q^(n-1); (0)_q = 0.
PadicScalar qint(unsigned n, const PadicScalar& q);

/// Quantum factorial (n)_q! = (n)_q (n-1)_q ... (1)_q; (0)_q! = 1.
PadicScalar qfact(unsigned n, const PadicScalar& q);

/// Quantum binomial coefficient, computed by the Pascal recurrence
///   (n k)_q = (n-1 k-1)_q + q^k (n-1 k)_q
/// with (n 0)_q = 1 and (0 k)_q = 0 for k != 0.
PadicScalar qbinom(unsigned n, unsigned k, const PadicScalar& q);

/// Upper-bound certificate max{1, |q|^(k(n-1))} for |(n k)_q|.
LogNorm qbinom_norm_bound(unsigned n, unsigned k, const LogNorm& qnorm);

struct QIntReport {
    bool ok = true;
    unsigned first_failure = 0; // smallest failing n when !ok
};

/// Checks that (n)_q is a unit (valuation 0) for all 1 <= n <= bound.
QIntReport qints_invertible_upto(const PadicScalar& q, unsigned bound);

/// Checks that (n)_q is distinguishable from zero for all 1 <= n <= bound
/// (invertibility in the field sense, at working precision).
QIntReport qints_nonzero_upto(const PadicScalar& q, unsigned bound);

} // namespace qweyl
