#include "qweyl/annulus.hpp"

#include <sstream>
#include <vector>

namespace qweyl {

void LaurentElement::check_same_space(const LaurentElement& o) const {
    if (params_ != o.params_) throw ShapeError("elements on different annuli");
    if (!(window_ == o.window_)) throw ShapeError("elements on different windows");
    if (!(ctx_ == o.ctx_)) throw ShapeError("elements over different p-adic contexts");
}

void LaurentElement::accumulate(int n, const PadicScalar& c) {
    if (c.is_exact_zero()) return;
    if (n < 0 && params_.is_disk()) throw ShapeError("negative exponent on a disk");
    if (!window_.contains(n)) {
        tail_ = max(tail_, c.norm() * params_.monomial_norm(n));
        return;
    }
    auto it = coeffs_.find(n);
    if (it == coeffs_.end()) {
        coeffs_.emplace(n, c);
        return;
    }
    PadicScalar s = it->second + c;
    if (s.is_exact_zero())
        coeffs_.erase(it);
    else
        it->second = s;
}

bool LaurentElement::is_exact() const {
    if (!tail_.is_zero()) return false;
    for (const auto& [n, c] : coeffs_)
        if (c.is_below_precision()) return false;
    return true;
}

bool LaurentElement::is_indistinguishable_from_zero() const {
    for (const auto& [n, c] : coeffs_)
        if (c.is_nonzero()) return false;
    return true;
}

LogNorm LaurentElement::gauss_norm() const {
    LogNorm m = tail_;
    for (const auto& [n, c] : coeffs_) m = max(m, c.norm() * params_.monomial_norm(n));
    return m;
}

bool LaurentElement::gauss_norm_is_exact() const {
    if (!tail_.is_zero()) return false;
    for (const auto& [n, c] : coeffs_)
        if (c.is_below_precision()) return false;
    return true;
}

LogNorm LaurentElement::norm_at(const LogNorm& radius) const {
    LogNorm m = tail_;
    for (const auto& [n, c] : coeffs_) m = max(m, c.norm() * radius.pow(n));
    return m;
}

LaurentElement LaurentElement::operator-() const {
    LaurentElement f(params_, window_, ctx_);
    f.tail_ = tail_;
    for (const auto& [n, c] : coeffs_) f.coeffs_.emplace(n, -c);
    return f;
}

LaurentElement operator+(const LaurentElement& f, const LaurentElement& g) {
    f.check_same_space(g);
    LaurentElement r = f;
    r.tail_ = max(f.tail_, g.tail_);
    for (const auto& [n, c] : g.coeffs_) r.accumulate(n, c);
    return r;
}

LaurentElement operator-(const LaurentElement& f, const LaurentElement& g) { return f + (-g); }

LaurentElement operator*(const LaurentElement& f, const LaurentElement& g) {
    f.check_same_space(g);
    LaurentElement r(f.params_, f.window_, f.ctx_);
    for (const auto& [n, a] : f.coeffs_)
        for (const auto& [m, b] : g.coeffs_) r.accumulate(n + m, a * b);
    // Ultrametric tail propagation: |(f+df)(g+dg) - fg| <= max(|f| dg, df |g|),
    // with |f|, |g| taken including their own tails.
    r.tail_ = max(r.tail_, max(f.gauss_norm() * g.tail_, f.tail_ * g.gauss_norm()));
    return r;
}

LaurentElement LaurentElement::scaled(const PadicScalar& c) const {
    LaurentElement r(params_, window_, ctx_);
    if (c.is_exact_zero()) return r;
    for (const auto& [n, a] : coeffs_) r.accumulate(n, a * c);
    r.tail_ = max(r.tail_, tail_ * c.norm());
    return r;
}

LaurentElement LaurentElement::shifted(int k) const {
    LaurentElement r(params_, window_, ctx_);
    if (!tail_.is_zero()) r.tail_ = tail_ * params_.monomial_norm(k);
    for (const auto& [n, a] : coeffs_) r.accumulate(n + k, a);
    return r;
}

std::pair<int, LogNorm> LaurentElement::dominant_monomial() const {
    int best = 0;
    bool found = false;
    LogNorm best_outer = LogNorm::zero();
    for (const auto& [n, c] : coeffs_) {
        if (!c.is_nonzero()) continue;
        LogNorm t = c.norm() * params_.outer().pow(n);
        if (!found || best_outer < t) {
            best = n;
            best_outer = t;
            found = true;
        }
    }
    if (!found) throw NotAUnit("no distinguishable coefficient to dominate");

    const PadicScalar& lead = coeffs_.at(best);
    LogNorm ratio = LogNorm::zero();
    LogNorm dom_min = LogNorm::infinite();
    std::vector<LogNorm> radii;
    radii.push_back(params_.outer());
    if (!params_.is_disk()) radii.push_back(params_.inner());
    for (const LogNorm& rho : radii) {
        LogNorm dom = lead.norm() * rho.pow(best);
        dom_min = min(dom_min, dom);
        for (const auto& [n, c] : coeffs_) {
            if (n == best) continue;
            LogNorm t = c.norm() * rho.pow(n);
            if (!(t < dom)) throw NotAUnit("no strictly dominant monomial");
            ratio = max(ratio, t / dom);
        }
    }
    if (!tail_.is_zero()) {
        if (!(tail_ < dom_min)) throw NotAUnit("tail bound defeats monomial dominance");
        ratio = max(ratio, tail_ / dom_min);
    }
    return {best, ratio};
}

bool LaurentElement::has_dominant_monomial() const {
    try {
        dominant_monomial();
        return true;
    } catch (const NotAUnit&) {
        return false;
    }
}

LaurentElement LaurentElement::inverted(int trunc_order) const {
    auto [n0, ratio] = dominant_monomial();
    const PadicScalar& lead = coeffs_.at(n0);
    if (params_.is_disk() && n0 > 0) throw NotAUnit("dominant monomial is not a disk unit");

    LaurentElement inv_m = monomial(lead.inverse(), -n0, params_, window_);
    LaurentElement rest = *this - monomial(lead, n0, params_, window_);
    if (rest.is_strictly_zero()) return inv_m; // exact monomial inverse

    LaurentElement g = rest * inv_m; // |g| <= ratio < 1
    LaurentElement one_el = one(params_, window_, ctx_);
    LaurentElement acc = one_el;
    for (int k = 0; k < trunc_order; ++k) acc = one_el - g * acc;
    LaurentElement r = acc * inv_m;
    r.tail_ = max(r.tail_, inv_m.gauss_norm() * ratio.pow(trunc_order + 1));
    return r;
}

LaurentElement LaurentElement::derivative_dx() const {
    LaurentElement r(params_, window_, ctx_);
    for (const auto& [n, a] : coeffs_) {
        if (n == 0) continue;
        r.accumulate(n - 1, a * ctx_.integer((long long)n));
    }
    r.tail_ = max(r.tail_, tail_ / params_.bound_radius());
    return r;
}

std::string LaurentElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_text() << ")";
        if (n != 0) os << "*x^" << n;
    }
    if (first) os << "0";
    if (!tail_.is_zero()) os << " + O(" << tail_.to_string() << ")";
    return os.str();
}

bool agrees_up_to_tails(const LaurentElement& f, const LaurentElement& g, const LogNorm& extra) {
    LaurentElement d = f - g;
    LogNorm tol = max(max(f.tail_bound(), g.tail_bound()), extra);
    for (const auto& [n, c] : d.coeffs()) {
        if (!c.is_nonzero()) continue;
        if (c.norm() * f.params().monomial_norm(n) > tol) return false;
    }
    return true;
}

bool equal_at_precision(const LaurentElement& f, const LaurentElement& g) {
    if (!f.tail_bound().is_zero() || !g.tail_bound().is_zero()) return false;
    return (f - g).is_indistinguishable_from_zero();
}

} // namespace qweyl
