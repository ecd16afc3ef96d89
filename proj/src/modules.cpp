#include "qweyl/modules.hpp"

#include <algorithm>

#include "qweyl/qcomb.hpp"

namespace qweyl {

namespace {

LogNorm geometric_tail(const LogNorm& amp, const LogNorm& ratio, int start) {
    if (amp.is_zero()) return LogNorm::zero();
    if (ratio > LogNorm::one()) return LogNorm::infinite();
    return amp * ratio.pow(start);
}

BigInt factorial_big(long long k) {
    BigInt f = 1;
    for (long long i = 2; i <= k; ++i) f *= i;
    return f;
}

LogNorm vec_norm(const std::vector<LaurentElement>& v) {
    LogNorm m = LogNorm::zero();
    for (const auto& e : v) m = max(m, e.gauss_norm());
    return m;
}

bool vec_within(const std::vector<LaurentElement>& v, const LogNorm& tol) {
    for (const auto& e : v)
        for (const auto& [n, c] : e.coeffs()) {
            if (!c.is_nonzero()) continue;
            if (c.norm() * e.params().monomial_norm(n) > tol) return false;
        }
    return true;
}

bool vec_indistinguishable(const std::vector<LaurentElement>& v) {
    for (const auto& e : v)
        if (!e.is_indistinguishable_from_zero()) return false;
    return true;
}

} // namespace

long long factorial_valuation(long long k, long long p) {
    long long v = 0;
    for (long long q = p; q <= k; q *= p) v += k / q;
    return v;
}

// --------------------------------------------------------------------------- ElemMatrix

ElemMatrix ElemMatrix::zero(int rank, const AnnulusParams& params, const Window& w,
                            const PadicContext& ctx) {
    return ElemMatrix(rank, std::vector<LaurentElement>((size_t)rank * rank,
                                                        LaurentElement::zero(params, w, ctx)));
}

ElemMatrix ElemMatrix::identity(int rank, const AnnulusParams& params, const Window& w,
                                const PadicContext& ctx) {
    ElemMatrix m = zero(rank, params, w, ctx);
    for (int i = 0; i < rank; ++i) m.at(i, i) = LaurentElement::one(params, w, ctx);
    return m;
}

LogNorm ElemMatrix::norm() const {
    LogNorm m = LogNorm::zero();
    for (const auto& e : e_) m = max(m, e.gauss_norm());
    return m;
}

bool ElemMatrix::is_exact() const {
    for (const auto& e : e_)
        if (!e.is_exact()) return false;
    return true;
}

ElemMatrix operator+(const ElemMatrix& a, const ElemMatrix& b) {
    if (a.rank_ != b.rank_) throw ShapeError("matrix rank mismatch");
    std::vector<LaurentElement> out;
    out.reserve(a.e_.size());
    for (size_t i = 0; i < a.e_.size(); ++i) out.push_back(a.e_[i] + b.e_[i]);
    return ElemMatrix(a.rank_, std::move(out));
}

ElemMatrix operator-(const ElemMatrix& a, const ElemMatrix& b) {
    if (a.rank_ != b.rank_) throw ShapeError("matrix rank mismatch");
    std::vector<LaurentElement> out;
    out.reserve(a.e_.size());
    for (size_t i = 0; i < a.e_.size(); ++i) out.push_back(a.e_[i] - b.e_[i]);
    return ElemMatrix(a.rank_, std::move(out));
}

ElemMatrix operator*(const ElemMatrix& a, const ElemMatrix& b) {
    if (a.rank_ != b.rank_) throw ShapeError("matrix rank mismatch");
    int r = a.rank_;
    ElemMatrix out = ElemMatrix::zero(r, a.e_[0].params(), a.e_[0].window(), a.e_[0].context());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int l = 0; l < r; ++l) out.at(i, j) += a.at(i, l) * b.at(l, j);
    return out;
}

ElemMatrix ElemMatrix::scaled(const LaurentElement& z) const {
    std::vector<LaurentElement> out;
    out.reserve(e_.size());
    for (const auto& e : e_) out.push_back(e * z);
    return ElemMatrix(rank_, std::move(out));
}

ElemMatrix ElemMatrix::scaled(const PadicScalar& c) const {
    std::vector<LaurentElement> out;
    out.reserve(e_.size());
    for (const auto& e : e_) out.push_back(e.scaled(c));
    return ElemMatrix(rank_, std::move(out));
}

ElemMatrix ElemMatrix::dx() const {
    std::vector<LaurentElement> out;
    out.reserve(e_.size());
    for (const auto& e : e_) out.push_back(e.derivative_dx());
    return ElemMatrix(rank_, std::move(out));
}

ElemMatrix ElemMatrix::mapped(const Endomorphism& endo, int trunc) const {
    std::vector<LaurentElement> out;
    out.reserve(e_.size());
    for (const auto& e : e_) out.push_back(endo.apply(e, trunc));
    return ElemMatrix(rank_, std::move(out));
}

std::vector<LaurentElement> ElemMatrix::mul_vec(const std::vector<LaurentElement>& v) const {
    if ((int)v.size() != rank_) throw ShapeError("vector length mismatch");
    std::vector<LaurentElement> out;
    out.reserve(rank_);
    for (int i = 0; i < rank_; ++i) {
        LaurentElement acc = LaurentElement::zero(e_[0].params(), e_[0].window(), e_[0].context());
        for (int j = 0; j < rank_; ++j) acc += at(i, j) * v[j];
        out.push_back(std::move(acc));
    }
    return out;
}

// --------------------------------------------------------------------------- modules

std::vector<LaurentElement> ConnectionModule::derivation(
    const std::vector<LaurentElement>& v) const {
    std::vector<LaurentElement> gv = g_.mul_vec(v);
    for (int i = 0; i < rank(); ++i) gv[i] += v[i].derivative_dx();
    return gv;
}

std::vector<LaurentElement> SigmaModule::action(const std::vector<LaurentElement>& v,
                                                int trunc) const {
    std::vector<LaurentElement> sv;
    sv.reserve(v.size());
    for (const auto& e : v) sv.push_back(endo_.apply(e, trunc));
    return s_.mul_vec(sv);
}

std::vector<ElemMatrix> connection_power_matrices(const ConnectionModule& m, int order) {
    if (!m.endo().is_identity())
        throw ShapeError("power matrices are defined for a usual connection");
    const ElemMatrix& g = m.matrix();
    std::vector<ElemMatrix> out;
    out.reserve(order + 1);
    out.push_back(ElemMatrix::identity(m.rank(), g.at(0, 0).params(), g.at(0, 0).window(),
                                       g.at(0, 0).context()));
    for (int k = 1; k <= order; ++k) out.push_back(out.back().dx() + g * out.back());
    return out;
}

DecayCertificate decay_certificate(const std::vector<ElemMatrix>& powers, long long p,
                                   const LogNorm& eta_prime) {
    DecayCertificate cert;
    cert.eta_prime = eta_prime;
    cert.order = (int)powers.size() - 1;
    for (int k = 0; k <= cert.order; ++k) {
        LogNorm inv_fact = LogNorm::from_valuation(-factorial_valuation(k, p));
        cert.weighted.push_back(powers[k].norm() * inv_fact * eta_prime.pow(k));
    }
    cert.decay_from = 0;
    for (int k = 1; k <= cert.order; ++k)
        if (cert.weighted[k] > cert.weighted[k - 1]) cert.decay_from = k;
    int split = cert.order / 2;
    cert.lead_max = LogNorm::zero();
    cert.trail_max = LogNorm::zero();
    for (int k = 0; k <= split; ++k) cert.lead_max = max(cert.lead_max, cert.weighted[k]);
    for (int k = split + 1; k <= cert.order; ++k)
        cert.trail_max = max(cert.trail_max, cert.weighted[k]);
    cert.ok = cert.trail_max.is_zero() || cert.trail_max < cert.lead_max;
    return cert;
}

SigmaModule confluence_transform(const ConnectionModule& m, const Endomorphism& sigma, int order,
                                 const LogNorm& eta_prime) {
    if (!m.endo().is_identity())
        throw ShapeError("confluence starts from a usual connection");
    if (!(sigma.params() == m.matrix().at(0, 0).params()))
        throw ShapeError("endomorphism and module on different annuli");
    if (sigma.x_radius() > eta_prime)
        throw AdmissibilityError("confluence needs rho(sigma) <= eta'");
    if (!(eta_prime < m.level()))
        throw AdmissibilityError("confluence needs eta' below the module level");

    const PadicContext& ctx = sigma.context();
    QIntReport qrep = qints_nonzero_upto(sigma.q(), (unsigned)order);
    if (!qrep.ok)
        throw PrecisionExhausted("(" + std::to_string(qrep.first_failure) +
                                 ")_q is indistinguishable from zero");

    std::vector<ElemMatrix> powers = connection_power_matrices(m, order);
    DecayCertificate cert = decay_certificate(powers, ctx.p, eta_prime);
    if (!cert.ok)
        throw NotConvergentAtOrderK("decay certificate failed at order " +
                                    std::to_string(order) + " for the supplied eta'");

    const Window& w = m.matrix().at(0, 0).window();
    LaurentElement gamma = -sigma.x_minus_sigma_x(w); // sigma(x) - x
    ElemMatrix s = powers[0];
    LaurentElement gamma_pow = LaurentElement::one(sigma.params(), w, ctx);
    for (int k = 1; k <= order; ++k) {
        gamma_pow *= gamma;
        PadicScalar inv_fact = ctx.integer(factorial_big(k)).inverse();
        s = s + powers[k].scaled(gamma_pow).scaled(inv_fact);
    }

    // Omitted orders: |gamma^k A_k / k!| = m_k (|gamma| / eta')^k with
    // m_k extrapolated by the trailing maximum of the decay sequence.
    LogNorm tail = geometric_tail(cert.trail_max, sigma.x_radius() / eta_prime, order + 1);
    return SigmaModule(std::move(s), sigma, tail);
}

bool strong_predicate(const Endomorphism& sigma, const Window& w) {
    return sigma.x_minus_sigma_x(w).has_dominant_monomial();
}

TwistedOperator strong_map(const Endomorphism& sigma, const LogNorm& level, const Window& w) {
    const AnnulusParams& params = sigma.params();
    const PadicContext& ctx = sigma.context();
    std::vector<LaurentElement> cs;
    cs.push_back(LaurentElement::one(params, w, ctx));
    cs.push_back(-sigma.x_minus_sigma_x(w));
    return TwistedOperator(sigma, level, std::move(cs));
}

StructureReport sigma_structure_identity_check(
    const ConnectionModule& m, const SigmaModule& s, const Endomorphism& sigma, int order,
    const std::vector<std::pair<LaurentElement, std::vector<LaurentElement>>>& samples) {
    StructureReport rep;
    const PadicContext& ctx = sigma.context();
    const Window& w = m.matrix().at(0, 0).window();
    const AnnulusParams& params = sigma.params();

    std::vector<ElemMatrix> powers = connection_power_matrices(m, order);
    LaurentElement gamma = -sigma.x_minus_sigma_x(w);

    // D = sum_{k>=1} gamma^(k-1) A_k / k!, resummed on its own.
    ElemMatrix d = ElemMatrix::zero(m.rank(), params, w, ctx);
    LaurentElement gamma_pow = LaurentElement::one(params, w, ctx);
    for (int k = 1; k <= order; ++k) {
        PadicScalar inv_fact = ctx.integer(factorial_big(k)).inverse();
        d = d + powers[k].scaled(gamma_pow).scaled(inv_fact);
        gamma_pow *= gamma;
    }

    ElemMatrix lhs = s.matrix() - ElemMatrix::identity(m.rank(), params, w, ctx);
    ElemMatrix rhs = d.scaled(gamma);
    rep.identity_ok = true;
    for (int i = 0; i < m.rank() && rep.identity_ok; ++i)
        for (int j = 0; j < m.rank() && rep.identity_ok; ++j)
            if (!agrees_up_to_tails(lhs.at(i, j), rhs.at(i, j), s.tail()))
                rep.identity_ok = false;
    if (!rep.identity_ok) rep.detail = "S - Id differs from (sigma(x)-x) D beyond tails";

    rep.semilinearity_ok = true;
    for (const auto& [z, v] : samples) {
        std::vector<LaurentElement> zv;
        zv.reserve(v.size());
        for (const auto& e : v) zv.push_back(z * e);
        std::vector<LaurentElement> lhs_v = s.action(zv, order);
        std::vector<LaurentElement> rhs_v = s.action(v, order);
        LaurentElement sz = sigma.apply(z, order);
        for (auto& e : rhs_v) e = sz * e;
        for (int i = 0; i < (int)v.size(); ++i) lhs_v[i] -= rhs_v[i];
        if (!vec_indistinguishable(lhs_v)) {
            rep.semilinearity_ok = false;
            rep.detail += " semilinearity failed on a sample";
            break;
        }
    }
    return rep;
}

H0Report h_complex_sample_check(const ConnectionModule& m, const SigmaModule& s,
                                const Endomorphism& sigma, int order,
                                const std::vector<std::vector<LaurentElement>>& horizontal_samples,
                                const std::vector<std::vector<LaurentElement>>& fixed_samples) {
    H0Report rep;
    const PadicContext& ctx = sigma.context();
    const Window& w = m.matrix().at(0, 0).window();
    const AnnulusParams& params = sigma.params();
    const LogNorm& br = params.bound_radius();

    LogNorm gnorm = m.matrix().norm();
    LogNorm kappa = max(br.inverse(), gnorm);
    LogNorm gamma_norm = sigma.x_radius();

    // B = sup_k |gamma^k / k!| kappa^(k-1): transfers a derivation
    // residual into a multiplier residual.
    LogNorm b = LogNorm::zero();
    for (int k = 1; k <= order; ++k) {
        LogNorm term = gamma_norm.pow(k) *
                       LogNorm::from_valuation(-factorial_valuation(k, ctx.p)) * kappa.pow(k - 1);
        b = max(b, term);
    }
    if (!gamma_norm.is_zero()) {
        LogNorm step = gamma_norm * kappa * LogNorm::from_valuation(Rational(-1, ctx.p - 1));
        b = step < LogNorm::one() ? max(b, step.pow(order + 1) / kappa) : LogNorm::infinite();
    }

    rep.vacuous = horizontal_samples.empty();
    for (const auto& v : horizontal_samples) {
        ++rep.horizontal_checked;
        std::vector<LaurentElement> eps = m.derivation(v);
        LogNorm residual = vec_norm(eps);
        std::vector<LaurentElement> sv = s.action(v, order);
        for (int i = 0; i < (int)v.size(); ++i) sv[i] -= v[i];
        LogNorm tol = max(b * residual, s.tail() * vec_norm(v));
        if (vec_within(sv, tol)) ++rep.horizontal_passed;
    }

    if (!fixed_samples.empty() && strong_predicate(sigma, w)) {
        LaurentElement gamma = -sigma.x_minus_sigma_x(w);
        LaurentElement gamma_inv = gamma.inverted(order);
        LogNorm ginv_norm = gamma_inv.gauss_norm();
        // C = sup_k |d_k / (k)_q!| kappa_sigma^(k-1) with |d_k| <= rho^(k-1):
        // the transfer factor in the reverse direction.
        LogNorm dnorm =
            (s.matrix() - ElemMatrix::identity(m.rank(), params, w, ctx)).norm() * ginv_norm;
        LogNorm kappa_sigma = max(br.inverse(), dnorm);
        LogNorm c = LogNorm::one(); // k = 1 term
        LogNorm rho = sigma.x_radius();
        for (int k = 2; k <= order; ++k) {
            PadicScalar qf = qfact((unsigned)k, sigma.q());
            LogNorm qfn = qf.norm();
            if (qfn.is_zero()) break;
            c = max(c, rho.pow(k - 1) * kappa_sigma.pow(k - 1) / qfn);
        }
        for (const auto& v : fixed_samples) {
            ++rep.fixed_checked;
            std::vector<LaurentElement> sv = s.action(v, order);
            std::vector<LaurentElement> wv;
            wv.reserve(v.size());
            for (int i = 0; i < (int)v.size(); ++i) wv.push_back(v[i] - sv[i]);
            LogNorm fix_residual = max(vec_norm(wv), s.tail() * vec_norm(v));
            std::vector<LaurentElement> dv = m.derivation(v);
            LogNorm tol = c * ginv_norm * fix_residual;
            if (vec_within(dv, tol)) ++rep.fixed_passed;
        }
    }

    rep.ok = rep.horizontal_passed == rep.horizontal_checked &&
             rep.fixed_passed == rep.fixed_checked;
    if (rep.vacuous) rep.detail = "no horizontal samples supplied (vacuous)";
    return rep;
}

SigmaModule log_derivative_form(const ConnectionModule& m, const PadicScalar& q, int order,
                                const LogNorm& eta_prime) {
    if (!m.endo().is_identity())
        throw ShapeError("logarithmic route starts from a usual connection");
    const PadicContext ctx{q.prime(), q.precision_cap()};
    const AnnulusParams& params = m.matrix().at(0, 0).params();
    const Window& w = m.matrix().at(0, 0).window();

    PadicScalar lq = padic_log(q); // throws LogDivergent outside its disk

    Endomorphism sigma = Endomorphism::create(q, ctx.zero(), params);
    if (sigma.x_radius() > eta_prime)
        throw AdmissibilityError("logarithmic route needs rho(sigma) <= eta'");
    QIntReport qrep = qints_nonzero_upto(q, (unsigned)order);
    if (!qrep.ok)
        throw PrecisionExhausted("(" + std::to_string(qrep.first_failure) +
                                 ")_q is indistinguishable from zero");

    LaurentElement x = LaurentElement::monomial(ctx.one(), 1, params, w);
    ElemMatrix s = ElemMatrix::identity(m.rank(), params, w, ctx);
    ElemMatrix b = s;
    PadicScalar lq_pow = ctx.one();
    for (int k = 1; k <= order; ++k) {
        b = (b.dx() + m.matrix() * b).scaled(x); // (x d_M)^k on the basis
        lq_pow = lq_pow * lq;
        PadicScalar coeff = lq_pow * ctx.integer(factorial_big(k)).inverse();
        s = s + b.scaled(coeff);
    }

    // |log(q)^k (x d_M)^k / k!| <= (|log q| kappa p^(1/(p-1)))^k.
    LogNorm kappa = max(params.outer() / params.bound_radius(), m.matrix().scaled(x).norm());
    LogNorm step = lq.norm() * kappa * LogNorm::from_valuation(Rational(-1, ctx.p - 1));
    LogNorm tail = step < LogNorm::one() ? step.pow(order + 1) : LogNorm::infinite();
    return SigmaModule(std::move(s), sigma, tail);
}

} // namespace qweyl
