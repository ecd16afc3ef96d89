#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

#include "qweyl/errors.hpp"
#include "qweyl/lognorm.hpp"

namespace qweyl {

using BigInt = boost::multiprecision::cpp_int;

/// An element of Q_p at a fixed working precision.
///
/// A value is stored as p^val * unit with the exact valuation val and the
/// unit part known modulo p^(abs - val); equivalently, the value is known
/// modulo p^abs ("absolute precision abs"). Freshly constructed scalars
/// have abs equal to the configured ceiling N; division by non-units
/// lowers abs and is never hidden.
///
/// Three states are distinguished:
///   - exact zero (constructed as the literal 0, or 0 * x),
///   - a value with known nonzero leading digit,
///   - "below precision": congruent to 0 modulo p^abs, so its norm is
///     only the upper bound p^(-abs).
///
/// Scalars built from integer or fraction literals additionally carry
/// their exact rational value while it stays small; arithmetic propagates
/// it so that cancellations like (x+1)(x-1) produce exact zeros instead
/// of below-precision residue. The payload never widens the reported
/// precision; it only proves zeros.
class PadicScalar {
public:
    enum class State { Zero, Nonzero, BelowPrecision };

    struct ExactValue {
        BigInt num;
        BigInt den; // positive
    };

    static PadicScalar zero(long long p, int n_cap) {
        PadicScalar z(p, n_cap);
        z.state_ = State::Zero;
        z.abs_ = n_cap;
        z.exact_ = ExactValue{0, 1};
        return z;
    }
    static PadicScalar one(long long p, int n_cap) { return from_long(1, p, n_cap); }
    static PadicScalar from_long(long long v, long long p, int n_cap) {
        return from_integer(BigInt(v), p, n_cap);
    }
    static PadicScalar from_integer(const BigInt& v, long long p, int n_cap);
    /// a/b with b a unit; non-unit denominators are rejected.
    static PadicScalar from_fraction(const BigInt& a, const BigInt& b, long long p, int n_cap);
    static PadicScalar below_precision(int abs, long long p, int n_cap) {
        PadicScalar z(p, n_cap);
        z.state_ = State::BelowPrecision;
        z.abs_ = abs;
        return z;
    }

    /// Accepts "0", signed decimal integers, fractions "a/b" (b a unit),
    /// the explicit form "p^V*U@A", and "~0@A" for below-precision values.
    static PadicScalar parse(const std::string& text, long long p, int n_cap);

    long long prime() const { return p_; }
    int precision_cap() const { return cap_; }
    int abs_precision() const { return abs_; }
    State state() const { return state_; }

    bool is_exact_zero() const { return state_ == State::Zero; }
    bool is_below_precision() const { return state_ == State::BelowPrecision; }
    /// True when the leading digit is known, i.e. the value is certainly nonzero.
    bool is_nonzero() const { return state_ == State::Nonzero; }
    bool is_unit() const { return state_ == State::Nonzero && val_ == 0; }
    bool is_one() const { return is_unit() && unit_ == 1; }

    long long valuation() const {
        if (state_ != State::Nonzero) throw Error("valuation of a zero-like scalar");
        return val_;
    }
    const BigInt& unit_part() const {
        if (state_ != State::Nonzero) throw Error("unit part of a zero-like scalar");
        return unit_;
    }

    /// p^(-val); for a below-precision value the upper bound p^(-abs),
    /// for exact zero the zero magnitude.
    LogNorm norm() const {
        switch (state_) {
        case State::Zero: return LogNorm::zero();
        case State::BelowPrecision: return LogNorm::from_valuation(abs_);
        default: return LogNorm::from_valuation(val_);
        }
    }
    bool norm_is_exact() const { return state_ != State::BelowPrecision; }

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b);
    PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
    PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
    PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }

    PadicScalar inverse() const;
    PadicScalar pow(unsigned long long e) const;

    /// Forgets information beyond p^new_abs (no-op if already coarser).
    PadicScalar reduced_to_abs(int new_abs) const;

    /// Congruence at the shared surviving precision: a == b iff a - b is
    /// not distinguishable from zero. This is the working equality.
    friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
        return !(a - b).is_nonzero();
    }
    friend bool operator!=(const PadicScalar& a, const PadicScalar& b) { return !(a == b); }

    /// Bit-identical representation (state, valuation, unit, precision);
    /// the exact-value refinement is not part of the representation.
    bool identical_to(const PadicScalar& o) const {
        return p_ == o.p_ && state_ == o.state_ && abs_ == o.abs_ &&
               (state_ != State::Nonzero || (val_ == o.val_ && unit_ == o.unit_));
    }

    bool has_exact_value() const { return exact_.has_value(); }

    /// Canonical text: "0", a plain decimal when val >= 0 and abs == N,
    /// otherwise "p^V*U@A"; below-precision prints "~0@A".
    std::string to_text() const;

    /// Canonical residue p^val * unit (requires val >= 0).
    BigInt residue() const;

    static BigInt ppow(long long p, int k);
    static long long bigint_valuation(const BigInt& v, long long p, BigInt& unit_out);

private:
    PadicScalar(long long p, int n_cap)
        : p_(p), cap_(n_cap), abs_(n_cap), state_(State::Zero), val_(0), unit_(0) {}

    static PadicScalar normalized(const BigInt& residue, int abs, long long p, int n_cap);
    BigInt residue_mod(int abs) const;
    void check_compatible(const PadicScalar& o) const {
        if (p_ != o.p_) throw ShapeError("scalars over different primes");
    }
    static std::optional<ExactValue> exact_reduced(BigInt num, BigInt den);

    long long p_;
    int cap_;
    int abs_;
    State state_;
    long long val_;
    BigInt unit_;
    std::optional<ExactValue> exact_;
};

/// Working prime and precision ceiling, threaded through factories.
struct PadicContext {
    long long p;
    int N;

    PadicScalar zero() const { return PadicScalar::zero(p, N); }
    PadicScalar one() const { return PadicScalar::one(p, N); }
    PadicScalar integer(long long v) const { return PadicScalar::from_long(v, p, N); }
    PadicScalar integer(const BigInt& v) const { return PadicScalar::from_integer(v, p, N); }
    PadicScalar parse(const std::string& text) const { return PadicScalar::parse(text, p, N); }

    friend bool operator==(const PadicContext& a, const PadicContext& b) {
        return a.p == b.p && a.N == b.N;
    }
};

/// Iwasawa logarithm of a unit q with v(q-1) > 1/(p-1); the series
/// log(q) = sum (-1)^(j+1) (q-1)^j / j truncated with its remainder
/// folded into the surviving precision. Throws LogDivergent otherwise.
PadicScalar padic_log(const PadicScalar& q);

} // namespace qweyl
