#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <string>

#include "qweyl/errors.hpp"

namespace qweyl {

/// Exact rational number on 64-bit integers, always kept normalized
/// (gcd 1, positive denominator). Used for log-scale exponents, where
/// numerators stay tiny; intermediate products go through __int128.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    Rational operator-() const { return Rational(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw DivisionByZero("rational division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = (__int128)a.num_ * b.den_;
        __int128 rhs = (__int128)b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "a" or "a/b" with optional leading sign.
    static Rational parse(const std::string& text) {
        if (text.empty()) throw ParseError("empty rational");
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos)
                return Rational(std::stoll(text));
            long long n = std::stoll(text.substr(0, slash));
            long long d = std::stoll(text.substr(slash + 1));
            if (d == 0) throw ParseError("rational with zero denominator: " + text);
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational: " + text);
        } catch (const std::out_of_range&) {
            throw ParseError("rational out of range: " + text);
        }
    }

private:
    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw DivisionByZero("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        if (den_ == 0) throw DivisionByZero("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    long long num_;
    long long den_;
};

} // namespace qweyl
