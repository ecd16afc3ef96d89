#include "qweyl/operators.hpp"

#include <algorithm>

#include "qweyl/qcomb.hpp"

namespace qweyl {

namespace {

// sup over j >= start of amp * ratio^j; infinite when ratio >= 1 (and amp != 0).
LogNorm geometric_sup(const LogNorm& amp, const LogNorm& ratio, int start) {
    if (amp.is_zero()) return LogNorm::zero();
    if (ratio >= LogNorm::one()) return LogNorm::infinite();
    return amp * ratio.pow(start);
}

BigInt integer_binomial(long long n, unsigned j) {
    // Generalized binomial over the integers: C(n, j) for any n in Z.
    if (j == 0) return 1;
    if (n >= 0 && (long long)j > n) return 0;
    bool negate = false;
    long long top = n;
    if (n < 0) {
        top = -n + (long long)j - 1;
        negate = (j % 2) == 1;
    }
    BigInt num = 1;
    for (unsigned i = 0; i < j; ++i) num *= BigInt(top - (long long)i);
    BigInt den = 1;
    for (unsigned i = 2; i <= j; ++i) den *= i;
    BigInt r = num / den;
    return negate ? -r : r;
}

} // namespace

DividedDerivatives::DividedDerivatives(const Endomorphism& endo, const Window& w, int trunc_order)
    : endo_(endo), window_(w), trunc_(trunc_order) {
    const AnnulusParams& params = endo.params();
    if (!endo.is_identity() && !params.is_disk()) {
        // The annulus derivative bound needs |q| = 1 and |h| < r1.
        if (!endo.q().is_unit() || !(endo.h().norm() < params.inner()))
            throw AdmissibilityError("divided derivatives need |q| = 1 and |h| < r1 on an annulus");
    }
}

const LaurentElement& DividedDerivatives::sigma_power_x(int k) {
    auto it = sigma_x_.find(k);
    if (it == sigma_x_.end())
        it = sigma_x_.emplace(k, endo_.iterate(k).sigma_x(window_)).first;
    return it->second;
}

const LaurentElement& DividedDerivatives::sigma_power_x_inverse(int k) {
    auto it = sigma_x_inv_.find(k);
    if (it == sigma_x_inv_.end())
        it = sigma_x_inv_.emplace(k, sigma_power_x(k).inverted(trunc_)).first;
    return it->second;
}

const LaurentElement& DividedDerivatives::monomial(int k, int n) {
    auto key = std::make_pair(k, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const AnnulusParams& params = endo_.params();
    const PadicContext& ctx = endo_.context();
    LaurentElement value = LaurentElement::zero(params, window_, ctx);
    if (k == 0) {
        value = LaurentElement::monomial(ctx.one(), n, params, window_);
    } else if (k < 0 || n == 0 || (n > 0 && k > n)) {
        // zero by degree reasons
    } else if (n > 0) {
        value = sigma_power_x(k) * monomial(k, n - 1) + monomial(k - 1, n - 1);
    } else {
        value = sigma_power_x_inverse(k) * (monomial(k, n + 1) - monomial(k - 1, n));
    }
    return memo_.emplace(key, std::move(value)).first->second;
}

LaurentElement DividedDerivatives::apply(int k, const LaurentElement& z) {
    const AnnulusParams& params = endo_.params();
    LaurentElement out = LaurentElement::zero(params, window_, endo_.context());
    for (const auto& [n, a] : z.coeffs()) out += monomial(k, n).scaled(a);
    if (!z.tail_bound().is_zero())
        out = out.with_added_tail(z.tail_bound() / params.bound_radius().pow(k));
    return out;
}

std::vector<LaurentElement> DividedDerivatives::derivatives(const LaurentElement& z, int order) {
    std::vector<LaurentElement> out;
    out.reserve(order + 1);
    for (int k = 0; k <= order; ++k) out.push_back(apply(k, z));
    return out;
}

// ---------------------------------------------------------------------------

TwistedOperator::TwistedOperator(Endomorphism endo, LogNorm level,
                                 std::vector<LaurentElement> coeffs, LogNorm truncation_tail)
    : endo_(std::move(endo)),
      level_(std::move(level)),
      coeffs_(std::move(coeffs)),
      trunc_tail_(std::move(truncation_tail)) {
    if (coeffs_.empty()) throw ShapeError("operator needs at least the order-0 coefficient");
    for (const auto& c : coeffs_)
        if (!(c.params() == endo_.params()) || !(c.window() == coeffs_[0].window()))
            throw ShapeError("operator coefficients on mismatched spaces");
    while (coeffs_.size() > 1 && coeffs_.back().is_strictly_zero()) coeffs_.pop_back();
    if (!endo_.eta_admissible(level_).ok)
        throw AdmissibilityError("operator level is below the x-radius of its endomorphism");
}

TwistedOperator TwistedOperator::zero(const Endomorphism& endo, const LogNorm& level,
                                      const Window& w) {
    return TwistedOperator(endo, level,
                           {LaurentElement::zero(endo.params(), w, endo.context())});
}

TwistedOperator TwistedOperator::identity(const Endomorphism& endo, const LogNorm& level,
                                          const Window& w) {
    return TwistedOperator(endo, level,
                           {LaurentElement::one(endo.params(), w, endo.context())});
}

TwistedOperator TwistedOperator::divided_power(int k, const Endomorphism& endo,
                                               const LogNorm& level, const Window& w) {
    if (k < 0) throw ShapeError("negative divided power");
    std::vector<LaurentElement> cs((size_t)k + 1,
                                   LaurentElement::zero(endo.params(), w, endo.context()));
    cs[k] = LaurentElement::one(endo.params(), w, endo.context());
    return TwistedOperator(endo, level, std::move(cs));
}

TwistedOperator TwistedOperator::multiplication(const LaurentElement& z, const Endomorphism& endo,
                                                const LogNorm& level) {
    return TwistedOperator(endo, level, {z});
}

LaurentElement TwistedOperator::coeff(int k) const {
    if (k < 0 || k >= (int)coeffs_.size())
        return LaurentElement::zero(endo_.params(), window(), endo_.context());
    return coeffs_[k];
}

const Window& TwistedOperator::window() const { return coeffs_[0].window(); }

bool TwistedOperator::is_exact() const {
    if (!trunc_tail_.is_zero()) return false;
    for (const auto& c : coeffs_)
        if (!c.is_exact()) return false;
    return true;
}

LogNorm TwistedOperator::norm(const LogNorm& eta) const {
    if (eta < level_ && !trunc_tail_.is_zero())
        throw ShapeError("operator norm below its certified level");
    LogNorm m = trunc_tail_;
    for (int k = 0; k < (int)coeffs_.size(); ++k)
        m = max(m, coeffs_[k].gauss_norm() / eta.pow(k));
    return m;
}

bool TwistedOperator::norm_is_exact() const {
    if (!trunc_tail_.is_zero()) return false;
    for (const auto& c : coeffs_)
        if (!c.gauss_norm_is_exact()) return false;
    return true;
}

TwistedOperator operator+(const TwistedOperator& a, const TwistedOperator& b) {
    if (!a.endo_.same_as(b.endo_)) throw ShapeError("adding operators over different endomorphisms");
    if (!(a.level_ == b.level_)) throw ShapeError("adding operators at different levels");
    std::vector<LaurentElement> out = a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_ : b.coeffs_;
    const std::vector<LaurentElement>& small =
        a.coeffs_.size() >= b.coeffs_.size() ? b.coeffs_ : a.coeffs_;
    for (size_t k = 0; k < small.size(); ++k) out[k] += small[k];
    return TwistedOperator(a.endo_, a.level_, std::move(out), max(a.trunc_tail_, b.trunc_tail_));
}

TwistedOperator TwistedOperator::operator-() const {
    std::vector<LaurentElement> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(-c);
    return TwistedOperator(endo_, level_, std::move(out), trunc_tail_);
}

TwistedOperator operator-(const TwistedOperator& a, const TwistedOperator& b) { return a + (-b); }

TwistedOperator TwistedOperator::left_scaled(const LaurentElement& z) const {
    std::vector<LaurentElement> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(z * c);
    return TwistedOperator(endo_, level_, std::move(out), trunc_tail_ * z.gauss_norm());
}

TwistedOperator TwistedOperator::scaled(const PadicScalar& c) const {
    std::vector<LaurentElement> out;
    out.reserve(coeffs_.size());
    for (const auto& z : coeffs_) out.push_back(z.scaled(c));
    return TwistedOperator(endo_, level_, std::move(out), trunc_tail_ * c.norm());
}

TwistedOperator TwistedOperator::with_added_tail(const LogNorm& extra) const {
    TwistedOperator r = *this;
    r.trunc_tail_ = max(r.trunc_tail_, extra);
    return r;
}

TwistedOperator TwistedOperator::xi_action() const {
    const Window& w = window();
    int top = order();
    std::vector<LaurentElement> out;
    out.reserve(top + 1);
    for (int k = 0; k <= top; ++k) {
        LaurentElement offset = endo_.iterate(k).x_minus_sigma_x(w);
        LaurentElement c = coeff(k + 1) - coeff(k) * offset;
        if (k == top && !trunc_tail_.is_zero()) {
            // The first omitted coefficient leaks into degree top.
            c = c.with_added_tail(trunc_tail_ * level_.pow(top + 1));
        }
        out.push_back(std::move(c));
    }
    return TwistedOperator(endo_, level_, std::move(out), trunc_tail_ * level_);
}

LaurentElement op_apply(const TwistedOperator& phi, const LaurentElement& z,
                        DividedDerivatives& engine) {
    if (!engine.endo().same_as(phi.endo()))
        throw ShapeError("operator and engine use different endomorphisms");
    const AnnulusParams& params = phi.endo().params();
    LaurentElement out = LaurentElement::zero(params, phi.window(), phi.endo().context());
    for (int k = 0; k <= phi.order(); ++k) {
        LaurentElement ck = phi.coeff(k);
        if (ck.is_strictly_zero()) continue;
        out += ck * engine.apply(k, z);
    }
    if (!phi.truncation_tail().is_zero()) {
        // Omitted orders m > order(): |w_m d^[m](z)| <= tail eta^m |z| br^(-m).
        LogNorm ratio = phi.level() / params.bound_radius();
        out = out.with_added_tail(
            geometric_sup(phi.truncation_tail() * z.gauss_norm(), ratio, phi.order() + 1));
    }
    return out;
}

const std::vector<LaurentElement>& DividedDerivatives::commute_inverse_row(int j) {
    const AnnulusParams& params = endo_.params();
    const PadicContext& ctx = endo_.context();
    while ((int)commute_inv_.size() <= j) {
        int next = (int)commute_inv_.size();
        std::vector<LaurentElement> row((size_t)next + 1,
                                        LaurentElement::zero(params, window_, ctx));
        if (next == 0) {
            row[0] = LaurentElement::monomial(ctx.one(), -1, params, window_);
        } else {
            const LaurentElement& inv = sigma_power_x_inverse(next);
            row[next] = inv;
            for (int i = 0; i < next; ++i) row[i] = -(inv * commute_inv_[next - 1][i]);
        }
        commute_inv_.push_back(std::move(row));
    }
    return commute_inv_[j];
}

std::vector<LaurentElement> commute_past(int k, const LaurentElement& z,
                                         DividedDerivatives& engine) {
    const AnnulusParams& params = engine.endo().params();
    const PadicContext& ctx = engine.endo().context();
    const Window& w = engine.window();
    auto zero_el = [&] { return LaurentElement::zero(params, w, ctx); };

    std::vector<LaurentElement> total((size_t)k + 1, zero_el());
    for (const auto& [n, a] : z.coeffs()) {
        std::vector<LaurentElement> cur((size_t)k + 1, zero_el());
        cur[k] = LaurentElement::one(params, w, ctx);
        if (n > 0) {
            for (int step = 0; step < n; ++step) {
                std::vector<LaurentElement> next((size_t)k + 1, zero_el());
                for (int j = 0; j <= k; ++j) {
                    next[j] = cur[j] * engine.sigma_power_x(j);
                    if (j + 1 <= k) next[j] += cur[j + 1];
                }
                cur = std::move(next);
            }
        } else if (n < 0) {
            for (int step = 0; step < -n; ++step) {
                std::vector<LaurentElement> next((size_t)k + 1, zero_el());
                for (int j = 0; j <= k; ++j)
                    for (int i = 0; i <= j; ++i) next[i] += cur[j] * engine.commute_inverse_row(j)[i];
                cur = std::move(next);
            }
        }
        for (int j = 0; j <= k; ++j) total[j] += cur[j].scaled(a);
    }
    return total;
}

TwistedOperator op_compose(const TwistedOperator& phi, const TwistedOperator& psi,
                           DividedDerivatives& engine, int order_cap) {
    if (!phi.endo().same_as(psi.endo()))
        throw ShapeError("composing operators over different endomorphisms");
    if (!(phi.level() == psi.level())) throw ShapeError("composing operators at different levels");
    if (!engine.endo().same_as(phi.endo()))
        throw ShapeError("operator and engine use different endomorphisms");

    const Endomorphism& endo = phi.endo();
    const PadicScalar& q = endo.q();
    const Window& w = phi.window();
    const LogNorm& eta = phi.level();
    const AnnulusParams& params = endo.params();
    const PadicContext& ctx = endo.context();

    std::vector<LaurentElement> out((size_t)order_cap + 1,
                                    LaurentElement::zero(params, w, ctx));
    LogNorm fold = LogNorm::zero();
    for (int k = 0; k <= phi.order(); ++k) {
        LaurentElement zk = phi.coeff(k);
        if (zk.is_strictly_zero()) continue;
        for (int l = 0; l <= psi.order(); ++l) {
            LaurentElement wl = psi.coeff(l);
            if (wl.is_strictly_zero()) continue;
            std::vector<LaurentElement> cross = commute_past(k, wl, engine);
            for (int j = 0; j <= k; ++j) {
                if (cross[j].is_strictly_zero()) continue;
                LaurentElement term = (zk * cross[j]).scaled(qbinom(j + l, l, q));
                int m = j + l;
                if (m <= order_cap)
                    out[m] += term;
                else
                    fold = max(fold, term.gauss_norm() / eta.pow(m));
            }
            // d^[k] applied past the unrepresented part of wl.
            if (!wl.tail_bound().is_zero())
                fold = max(fold, zk.gauss_norm() * wl.tail_bound() / eta.pow(k + l));
        }
    }
    LogNorm tail = max(fold, max(phi.norm() * psi.truncation_tail(),
                                 phi.truncation_tail() * psi.norm()));
    return TwistedOperator(endo, eta, std::move(out), tail);
}

WeylImage weyl_to_divided(int k, const Endomorphism& endo, const LogNorm& level, const Window& w) {
    PadicScalar f = qfact(k, endo.q());
    WeylImage img{TwistedOperator::divided_power(k, endo, level, w).scaled(f), !f.is_unit()};
    return img;
}

TwistedOperator weyl_commutation(const LaurentElement& z, DividedDerivatives& engine,
                                 const LogNorm& level) {
    const Endomorphism& endo = engine.endo();
    std::vector<LaurentElement> cs;
    cs.push_back(engine.apply(1, z));
    cs.push_back(endo.apply(z, engine.trunc_order()));
    return TwistedOperator(endo, level, std::move(cs));
}

bool operators_agree(const TwistedOperator& a, const TwistedOperator& b, const LogNorm& extra) {
    if (!a.endo().same_as(b.endo()) || !(a.level() == b.level())) return false;
    int top = std::max(a.order(), b.order());
    LogNorm op_tol = max(max(a.truncation_tail(), b.truncation_tail()), extra);
    for (int k = 0; k <= top; ++k)
        if (!agrees_up_to_tails(a.coeff(k), b.coeff(k), op_tol * a.level().pow(k))) return false;
    return true;
}

// ---------------------------------------------------------------------------

XiPolynomial TaylorExpansion::as_xi_polynomial() const {
    return XiPolynomial(derivatives, XiBasis::Divided, level, endo);
}

TaylorExpansion taylor_expand(const LaurentElement& z, const Endomorphism& endo,
                              const LogNorm& level, int order) {
    detail::require_eta_admissible(endo, level);
    const AnnulusParams& params = z.params();
    const Window& w = z.window();
    const PadicContext& ctx = z.context();
    if (!(params == endo.params())) throw ShapeError("element and endomorphism on different annuli");

    int max_pos = 0;
    bool has_neg = false;
    for (const auto& [n, c] : z.coeffs()) {
        (void)c;
        if (n > max_pos) max_pos = n;
        if (n < 0) has_neg = true;
    }
    int big_j = std::max(order, max_pos);

    // z(x + xi) expanded in xi-monomials up to degree big_j; the omitted
    // part of the geometric series for negative powers is certified by one
    // eta-norm bound.
    std::vector<LaurentElement> mono((size_t)big_j + 1, LaurentElement::zero(params, w, ctx));
    LogNorm xi_tail = z.tail_bound();
    for (const auto& [n, a] : z.coeffs()) {
        int jmax = n >= 0 ? std::min(n, big_j) : big_j;
        for (int j = 0; j <= jmax; ++j) {
            BigInt b = integer_binomial(n, (unsigned)j);
            if (b == 0) continue;
            mono[j] += LaurentElement::monomial(a * ctx.integer(b), n - j, params, w);
        }
        if (n < 0) {
            LogNorm amp = a.norm() * params.inner().pow(n);
            xi_tail = max(xi_tail, geometric_sup(amp, level / params.inner(), big_j + 1));
        }
    }
    if (has_neg && level >= params.bound_radius())
        xi_tail = LogNorm::infinite();

    XiPolynomial divided =
        xi_to_divided(XiPolynomial(std::move(mono), XiBasis::Monomial, level), endo);

    TaylorExpansion t{z, endo, level, order, {}};
    t.derivatives.reserve(order + 1);
    for (int k = 0; k <= order; ++k) {
        LaurentElement d = k <= divided.degree() ? divided.coeff(k)
                                                 : LaurentElement::zero(params, w, ctx);
        if (!xi_tail.is_zero()) d = d.with_added_tail(xi_tail / level.pow(k));
        t.derivatives.push_back(std::move(d));
    }
    return t;
}

} // namespace qweyl
