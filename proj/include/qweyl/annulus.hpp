#pragma once

#include <map>
#include <optional>
#include <string>

#include "qweyl/padic.hpp"

namespace qweyl {

/// Exponent window [lo, hi] on which Laurent coefficients are stored.
struct Window {
    int lo;
    int hi;

    bool contains(int n) const { return lo <= n && n <= hi; }
    friend bool operator==(const Window& a, const Window& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

/// Closed annulus r1 <= |x| <= r (magnitudes on the p-power scale), or the
/// closed disk |x| <= r when no inner radius is given. Disks forbid
/// negative exponents.
class AnnulusParams {
public:
    static AnnulusParams annulus(const LogNorm& inner, const LogNorm& outer) {
        if (!inner.is_finite() || !outer.is_finite())
            throw ShapeError("annulus radii must be finite and positive");
        if (outer < inner) throw ShapeError("annulus requires r1 <= r");
        AnnulusParams a;
        a.outer_ = outer;
        a.inner_ = inner;
        return a;
    }
    static AnnulusParams disk(const LogNorm& outer) {
        if (!outer.is_finite()) throw ShapeError("disk radius must be finite and positive");
        AnnulusParams a;
        a.outer_ = outer;
        return a;
    }

    bool is_disk() const { return !inner_.has_value(); }
    const LogNorm& outer() const { return outer_; }
    const LogNorm& inner() const {
        if (is_disk()) throw ShapeError("a disk has no inner radius");
        return *inner_;
    }
    /// Radius governing the derivative bound |d^[k] z| <= |z| * br^(-k):
    /// the inner radius on an annulus, the outer radius on a disk.
    const LogNorm& bound_radius() const { return is_disk() ? outer_ : *inner_; }

    /// Norm of the monomial x^n: r^n for n >= 0, r1^n for n <= 0.
    LogNorm monomial_norm(int n) const {
        if (n >= 0) return outer_.pow(n);
        if (is_disk()) throw ShapeError("negative exponent on a disk");
        return inner_->pow(n);
    }

    friend bool operator==(const AnnulusParams& a, const AnnulusParams& b) {
        if (a.is_disk() != b.is_disk()) return false;
        if (!(a.outer_ == b.outer_)) return false;
        return a.is_disk() || *a.inner_ == *b.inner_;
    }
    friend bool operator!=(const AnnulusParams& a, const AnnulusParams& b) { return !(a == b); }

private:
    AnnulusParams() : outer_(LogNorm::one()) {}

    LogNorm outer_;
    std::optional<LogNorm> inner_;
};

/// Finitely supported Laurent coefficients on an exponent window together
/// with one certified upper bound on the Gauss norm of everything that was
/// dropped (window overflow, truncated inverse series). An exact Laurent
/// polynomial has the zero tail.
class LaurentElement {
public:
    LaurentElement(const AnnulusParams& params, const Window& window, const PadicContext& ctx)
        : params_(params), window_(window), ctx_(ctx), tail_(LogNorm::zero()) {}

    static LaurentElement zero(const AnnulusParams& params, const Window& w, const PadicContext& ctx) {
        return LaurentElement(params, w, ctx);
    }
    static LaurentElement one(const AnnulusParams& params, const Window& w, const PadicContext& ctx) {
        return constant(ctx.one(), params, w);
    }
    static LaurentElement constant(const PadicScalar& c, const AnnulusParams& params, const Window& w) {
        LaurentElement f(params, w, PadicContext{c.prime(), c.precision_cap()});
        f.accumulate(0, c);
        return f;
    }
    static LaurentElement monomial(const PadicScalar& c, int n, const AnnulusParams& params,
                                   const Window& w) {
        if (n < 0 && params.is_disk()) throw ShapeError("negative exponent on a disk");
        LaurentElement f(params, w, PadicContext{c.prime(), c.precision_cap()});
        f.accumulate(n, c);
        return f;
    }

    const AnnulusParams& params() const { return params_; }
    const Window& window() const { return window_; }
    const PadicContext& context() const { return ctx_; }
    const std::map<int, PadicScalar>& coeffs() const { return coeffs_; }
    const LogNorm& tail_bound() const { return tail_; }

    bool has_tail() const { return !tail_.is_zero(); }
    /// Exact representation: zero tail and every stored digit known.
    bool is_exact() const;
    /// No stored terms and a zero tail.
    bool is_strictly_zero() const { return coeffs_.empty() && tail_.is_zero(); }
    /// Nothing distinguishable from zero remains.
    bool is_indistinguishable_from_zero() const;

    PadicScalar coefficient(int n) const {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? ctx_.zero() : it->second;
    }

    /// Gauss norm: max over stored terms of |a_n| * (r or r1)^n, combined
    /// with the tail bound.
    LogNorm gauss_norm() const;
    /// False when the tail is nonzero or any stored digit is below
    /// precision, in which case gauss_norm() is only an upper bound.
    bool gauss_norm_is_exact() const;
    /// Sup norm on the circle |x| = radius (termwise max of |a_n| radius^n).
    LogNorm norm_at(const LogNorm& radius) const;

    LaurentElement operator-() const;
    friend LaurentElement operator+(const LaurentElement& f, const LaurentElement& g);
    friend LaurentElement operator-(const LaurentElement& f, const LaurentElement& g);
    friend LaurentElement operator*(const LaurentElement& f, const LaurentElement& g);
    LaurentElement& operator+=(const LaurentElement& o) { return *this = *this + o; }
    LaurentElement& operator-=(const LaurentElement& o) { return *this = *this - o; }
    LaurentElement& operator*=(const LaurentElement& o) { return *this = *this * o; }

    LaurentElement scaled(const PadicScalar& c) const;
    /// Multiplication by the exact monomial x^k.
    LaurentElement shifted(int k) const;

    /// Geometric-series inverse truncated after trunc_order correction
    /// terms. Requires a strictly dominant monomial (strict at both radii,
    /// against every other term and the tail); throws NotAUnit otherwise.
    LaurentElement inverted(int trunc_order) const;

    /// True when a strictly dominant monomial exists (the unit test used
    /// by inverted()).
    bool has_dominant_monomial() const;

    /// Exact termwise d/dx (n a_n x^(n-1)); edge terms leaving the window
    /// and the scaled input tail fold into the result tail.
    LaurentElement derivative_dx() const;

    LaurentElement with_added_tail(const LogNorm& extra) const {
        LaurentElement f = *this;
        f.tail_ = max(f.tail_, extra);
        return f;
    }

    std::string to_string() const;

private:
    friend class Endomorphism;

    void check_same_space(const LaurentElement& o) const;
    /// Adds c * x^n, folding out-of-window or disk-violating terms into
    /// the tail bound.
    void accumulate(int n, const PadicScalar& c);
    /// Certified dominant monomial: exponent, strictness ratio (max over
    /// both radii of other/dominant), throws NotAUnit when none exists.
    std::pair<int, LogNorm> dominant_monomial() const;

    AnnulusParams params_;
    Window window_;
    PadicContext ctx_;
    std::map<int, PadicScalar> coeffs_;
    LogNorm tail_;
};

/// True when f - g has no distinguishable coefficient above the tolerance
/// max(f.tail, g.tail, extra). The standard "equal up to certified tails"
/// comparison.
bool agrees_up_to_tails(const LaurentElement& f, const LaurentElement& g,
                        const LogNorm& extra = LogNorm::zero());

/// Exact coefficientwise congruence at the shared surviving precision and
/// both tails zero.
bool equal_at_precision(const LaurentElement& f, const LaurentElement& g);

} // namespace qweyl
