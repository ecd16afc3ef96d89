#pragma once

#include <string>

#include "qweyl/rational.hpp"

namespace qweyl {

/// Exact ultrametric magnitude on the logarithmic scale of the working
/// prime p. A finite LogNorm with valuation v stands for p^(-v), v an
/// exact rational. The zero magnitude and the infinite magnitude are
/// separate kinds; the total order is zero < every finite < infinite.
///
/// Products add valuations, max of magnitudes takes the min valuation.
/// All radii, Gauss norms, levels and certified bounds live here.
class LogNorm {
public:
    enum class Kind { Zero, Finite, Infinite };

    LogNorm() : kind_(Kind::Finite), val_(0) {}

    static LogNorm zero() { return LogNorm(Kind::Zero, Rational(0)); }
    static LogNorm one() { return LogNorm(Kind::Finite, Rational(0)); }
    static LogNorm infinite() { return LogNorm(Kind::Infinite, Rational(0)); }
    /// Magnitude p^(-v).
    static LogNorm from_valuation(const Rational& v) { return LogNorm(Kind::Finite, v); }
    static LogNorm from_valuation(long long v) { return LogNorm(Kind::Finite, Rational(v)); }

    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_one() const { return kind_ == Kind::Finite && val_.is_zero(); }

    const Rational& valuation() const {
        if (!is_finite()) throw Error("valuation of a non-finite magnitude");
        return val_;
    }

    friend LogNorm operator*(const LogNorm& a, const LogNorm& b) {
        if (a.is_zero() || b.is_zero()) {
            if (a.is_infinite() || b.is_infinite())
                throw Error("0 * infinity is undefined on the magnitude scale");
            return zero();
        }
        if (a.is_infinite() || b.is_infinite()) return infinite();
        return from_valuation(a.val_ + b.val_);
    }

    friend LogNorm operator/(const LogNorm& a, const LogNorm& b) {
        if (b.is_zero()) throw DivisionByZero("magnitude division by zero");
        if (a.is_zero()) return zero();
        if (a.is_infinite()) return infinite();
        if (b.is_infinite()) return zero();
        return from_valuation(a.val_ - b.val_);
    }

    /// Integer power; zero^0 = 1, zero^negative = infinite.
    LogNorm pow(long long e) const {
        if (e == 0) return one();
        if (is_zero()) return e > 0 ? zero() : infinite();
        if (is_infinite()) return e > 0 ? infinite() : zero();
        return from_valuation(val_ * Rational(e));
    }

    /// k-th root (k > 0); exact on the rational log scale.
    LogNorm root(long long k) const {
        if (k <= 0) throw Error("root index must be positive");
        if (!is_finite()) return *this;
        return from_valuation(val_ / Rational(k));
    }

    LogNorm inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of the zero magnitude");
        if (is_infinite()) return zero();
        return from_valuation(-val_);
    }

    // Total order by magnitude.
    friend bool operator==(const LogNorm& a, const LogNorm& b) {
        if (a.kind_ != b.kind_) return false;
        return !a.is_finite() || a.val_ == b.val_;
    }
    friend bool operator<(const LogNorm& a, const LogNorm& b) {
        if (a.kind_ == b.kind_)
            return a.is_finite() && a.val_ > b.val_; // larger valuation = smaller magnitude
        if (a.is_zero()) return true;
        if (a.is_infinite()) return false;
        return b.is_infinite();
    }
    friend bool operator<=(const LogNorm& a, const LogNorm& b) { return a < b || a == b; }
    friend bool operator>(const LogNorm& a, const LogNorm& b) { return b < a; }
    friend bool operator>=(const LogNorm& a, const LogNorm& b) { return b <= a; }
    friend bool operator!=(const LogNorm& a, const LogNorm& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        if (is_infinite()) return "+inf";
        if (val_.is_zero()) return "1";
        return "p^(" + (-val_).to_string() + ")";
    }

private:
    LogNorm(Kind k, const Rational& v) : kind_(k), val_(v) {}

    Kind kind_;
    Rational val_;
};

inline const LogNorm& max(const LogNorm& a, const LogNorm& b) { return a < b ? b : a; }
inline const LogNorm& min(const LogNorm& a, const LogNorm& b) { return b < a ? b : a; }

} // namespace qweyl
