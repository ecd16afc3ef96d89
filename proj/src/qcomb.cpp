#include "qweyl/qcomb.hpp"

namespace qweyl {

PadicScalar qint(unsigned n, const PadicScalar& q) {
    PadicScalar acc = PadicScalar::zero(q.prime(), q.precision_cap());
    PadicScalar qp = PadicScalar::one(q.prime(), q.precision_cap());
    for (unsigned i = 0; i < n; ++i) {
        acc += qp;
        qp = qp * q;
    }
    return acc;
}

PadicScalar qfact(unsigned n, const PadicScalar& q) {
    PadicScalar acc = PadicScalar::one(q.prime(), q.precision_cap());
    for (unsigned i = 2; i <= n; ++i) acc = acc * qint(i, q);
    return acc;
}

PadicScalar qbinom(unsigned n, unsigned k, const PadicScalar& q) {
    long long p = q.prime();
    int cap = q.precision_cap();
    if (k == 0) return PadicScalar::one(p, cap);
    if (n == 0 || k > n) return PadicScalar::zero(p, cap);

    // Row-by-row Pascal walk; row m holds (m j)_q for 0 <= j <= min(m, k).
    std::vector<PadicScalar> row;
    row.push_back(PadicScalar::one(p, cap));
    for (unsigned m = 1; m <= n; ++m) {
        std::vector<PadicScalar> next;
        unsigned jmax = std::min(m, k);
        next.reserve(jmax + 1);
        next.push_back(PadicScalar::one(p, cap));
        PadicScalar qpow = PadicScalar::one(p, cap);
        for (unsigned j = 1; j <= jmax; ++j) {
            qpow = qpow * q; // q^j
            PadicScalar upper =
                j < row.size() ? row[j] : PadicScalar::zero(p, cap);
            next.push_back(row[j - 1] + qpow * upper);
        }
        row = std::move(next);
    }
    return row[k];
}

LogNorm qbinom_norm_bound(unsigned n, unsigned k, const LogNorm& qnorm) {
    long long e = (long long)k * ((long long)n - 1);
    return max(LogNorm::one(), qnorm.pow(e));
}

QIntReport qints_invertible_upto(const PadicScalar& q, unsigned bound) {
    QIntReport rep;
    for (unsigned n = 1; n <= bound; ++n) {
        if (!qint(n, q).is_unit()) {
            rep.ok = false;
            rep.first_failure = n;
            return rep;
        }
    }
    return rep;
}

QIntReport qints_nonzero_upto(const PadicScalar& q, unsigned bound) {
    QIntReport rep;
    for (unsigned n = 1; n <= bound; ++n) {
        if (!qint(n, q).is_nonzero()) {
            rep.ok = false;
            rep.first_failure = n;
            return rep;
        }
    }
    return rep;
}

} // namespace qweyl
