#include "qweyl/padic.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace qweyl {

BigInt PadicScalar::ppow(long long p, int k) {
    if (k < 0) throw Error("negative prime power");
    thread_local std::map<long long, std::vector<BigInt>> cache;
    std::vector<BigInt>& powers = cache[p];
    if (powers.empty()) powers.push_back(1);
    while ((int)powers.size() <= k) powers.push_back(powers.back() * p);
    return powers[k];
}

long long PadicScalar::bigint_valuation(const BigInt& v, long long p, BigInt& unit_out) {
    if (v == 0) throw Error("valuation of integer zero");
    BigInt u = v;
    long long val = 0;
    // Strip in chunks of 8 first, then singly.
    const BigInt p8 = ppow(p, 8);
    BigInt q, r;
    while (true) {
        boost::multiprecision::divide_qr(u, p8, q, r);
        if (r != 0) break;
        u.swap(q);
        val += 8;
    }
    while (true) {
        boost::multiprecision::divide_qr(u, BigInt(p), q, r);
        if (r != 0) break;
        u.swap(q);
        ++val;
    }
    unit_out = u;
    return val;
}

PadicScalar PadicScalar::normalized(const BigInt& residue, int abs, long long p, int n_cap) {
    if (abs <= 0) {
        // No digit survives; the value is only known to be bounded.
        return below_precision(abs, p, n_cap);
    }
    BigInt mod = ppow(p, abs);
    BigInt r = residue % mod;
    if (r < 0) r += mod;
    if (r == 0) return below_precision(abs, p, n_cap);
    PadicScalar z(p, n_cap);
    z.state_ = State::Nonzero;
    z.abs_ = abs;
    BigInt u;
    z.val_ = bigint_valuation(r, p, u);
    z.unit_ = u;
    return z;
}

std::optional<PadicScalar::ExactValue> PadicScalar::exact_reduced(BigInt num, BigInt den) {
    if (den == 0) return std::nullopt;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) return ExactValue{0, 1};
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    // Beyond this size the payload stops paying for itself.
    if (boost::multiprecision::msb(num < 0 ? BigInt(-num) : num) +
            boost::multiprecision::msb(den) >
        1024)
        return std::nullopt;
    return ExactValue{std::move(num), std::move(den)};
}

PadicScalar PadicScalar::from_integer(const BigInt& v, long long p, int n_cap) {
    if (p < 2) throw Error("prime must be at least 2");
    if (n_cap < 1) throw Error("precision must be positive");
    if (v == 0) return zero(p, n_cap);
    PadicScalar z = normalized(v, n_cap, p, n_cap);
    z.exact_ = exact_reduced(v, 1);
    return z;
}

static BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw Error("mod_inverse of a non-unit");
    BigInt inv = old_s % m;
    if (inv < 0) inv += m;
    return inv;
}

PadicScalar PadicScalar::from_fraction(const BigInt& a, const BigInt& b, long long p, int n_cap) {
    if (b == 0) throw ParseError("fraction with zero denominator");
    if (b % p == 0) throw ParseError("fraction denominator is not a unit");
    if (a == 0) return zero(p, n_cap);
    BigInt mod = ppow(p, n_cap);
    BigInt binv = mod_inverse(b % mod, mod);
    PadicScalar z = normalized(a * binv, n_cap, p, n_cap);
    z.exact_ = exact_reduced(a, b);
    return z;
}

PadicScalar PadicScalar::reduced_to_abs(int new_abs) const {
    if (state_ != State::BelowPrecision && new_abs >= abs_) return *this;
    if (state_ == State::Zero || state_ == State::BelowPrecision)
        return below_precision(std::min(new_abs, abs_), p_, cap_);
    if (new_abs <= val_) return below_precision(new_abs, p_, cap_);
    PadicScalar z = *this;
    z.abs_ = new_abs;
    z.unit_ = unit_ % ppow(p_, (int)(new_abs - val_));
    z.exact_.reset();
    return z;
}

BigInt PadicScalar::residue_mod(int abs) const {
    // Canonical representative of the coset modulo p^abs; callers ensure
    // val_ >= 0 or abs <= abs_ so the shift stays integral.
    if (state_ != State::Nonzero) return 0;
    if (val_ >= abs) return 0;
    if (val_ >= 0) {
        BigInt mod = ppow(p_, abs);
        return (ppow(p_, (int)val_) * unit_) % mod;
    }
    throw Error("integer residue of a scalar with negative valuation");
}

BigInt PadicScalar::residue() const {
    if (state_ == State::Zero) return 0;
    if (state_ == State::BelowPrecision) return 0;
    if (val_ < 0) throw Error("residue of a scalar with negative valuation");
    return residue_mod(abs_);
}

PadicScalar PadicScalar::operator-() const {
    if (state_ != State::Nonzero) return *this;
    PadicScalar z = *this;
    BigInt relmod = ppow(p_, (int)(abs_ - val_));
    z.unit_ = relmod - unit_;
    if (exact_) z.exact_ = ExactValue{-exact_->num, exact_->den};
    return z;
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    a.check_compatible(b);
    if (a.state_ == PadicScalar::State::Zero) return b;
    if (b.state_ == PadicScalar::State::Zero) return a;
    std::optional<PadicScalar::ExactValue> exact;
    if (a.exact_ && b.exact_)
        exact = PadicScalar::exact_reduced(
            a.exact_->num * b.exact_->den + b.exact_->num * a.exact_->den,
            a.exact_->den * b.exact_->den);
    if (exact && exact->num == 0)
        return PadicScalar::zero(a.p_, std::min(a.cap_, b.cap_));
    if (a.state_ == PadicScalar::State::BelowPrecision &&
        b.state_ == PadicScalar::State::BelowPrecision)
        return PadicScalar::below_precision(std::min(a.abs_, b.abs_), a.p_,
                                            std::min(a.cap_, b.cap_));

    // At least one operand has a known digit. Work modulo the coarser
    // precision; a negative shared valuation is factored out first so the
    // residues stay integral.
    long long shift = 0;
    if (a.state_ == PadicScalar::State::Nonzero) shift = std::min(shift, a.val_);
    if (b.state_ == PadicScalar::State::Nonzero) shift = std::min(shift, b.val_);
    int abs = std::min(a.abs_, b.abs_);
    int sabs = (int)(abs - shift);
    if (sabs <= 0)
        return PadicScalar::below_precision(abs, a.p_, std::min(a.cap_, b.cap_));
    auto shifted_residue = [&](const PadicScalar& x) -> BigInt {
        if (x.state_ != PadicScalar::State::Nonzero) return 0;
        long long v = x.val_ - shift;
        if (v >= sabs) return 0;
        BigInt r = PadicScalar::ppow(x.p_, (int)v) * x.unit_;
        // r < p^(v + rel) = p^(abs - shift); reduce only if that exceeds sabs.
        if (x.abs_ - shift > sabs) r %= PadicScalar::ppow(x.p_, sabs);
        return r;
    };
    BigInt sum = shifted_residue(a) + shifted_residue(b);
    PadicScalar r = PadicScalar::normalized(sum, sabs, a.p_, std::min(a.cap_, b.cap_));
    r.exact_ = std::move(exact);
    if (shift == 0) return r;
    // Undo the shift: multiply by p^shift (shift < 0).
    if (r.state_ == PadicScalar::State::Nonzero) {
        r.val_ += shift;
        r.abs_ += (int)shift;
    } else {
        r.abs_ += (int)shift;
    }
    return r;
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    a.check_compatible(b);
    int cap = std::min(a.cap_, b.cap_);
    if (a.state_ == PadicScalar::State::Zero || b.state_ == PadicScalar::State::Zero)
        return PadicScalar::zero(a.p_, cap);
    if (a.state_ == PadicScalar::State::BelowPrecision ||
        b.state_ == PadicScalar::State::BelowPrecision) {
        long long abound = a.state_ == PadicScalar::State::Nonzero ? a.val_ : a.abs_;
        long long bbound = b.state_ == PadicScalar::State::Nonzero ? b.val_ : b.abs_;
        return PadicScalar::below_precision((int)(abound + bbound), a.p_, cap);
    }
    int rel = std::min((int)(a.abs_ - a.val_), (int)(b.abs_ - b.val_));
    BigInt mod = PadicScalar::ppow(a.p_, rel);
    PadicScalar z = PadicScalar::zero(a.p_, cap);
    z.state_ = PadicScalar::State::Nonzero;
    z.val_ = a.val_ + b.val_;
    z.unit_ = (a.unit_ * b.unit_) % mod;
    z.abs_ = (int)(z.val_ + rel);
    if (a.exact_ && b.exact_)
        z.exact_ = PadicScalar::exact_reduced(a.exact_->num * b.exact_->num,
                                              a.exact_->den * b.exact_->den);
    return z;
}

PadicScalar PadicScalar::inverse() const {
    if (state_ == State::Zero) throw DivisionByZero("inverse of exact zero");
    if (state_ == State::BelowPrecision)
        throw PrecisionExhausted("inverse of a value indistinguishable from zero");
    int rel = (int)(abs_ - val_);
    BigInt mod = ppow(p_, rel);
    PadicScalar z = zero(p_, cap_);
    z.state_ = State::Nonzero;
    z.val_ = -val_;
    z.unit_ = mod_inverse(unit_, mod);
    z.abs_ = (int)(z.val_ + rel);
    if (exact_) z.exact_ = exact_reduced(exact_->den, exact_->num);
    return z;
}

PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
    if (b.state_ == PadicScalar::State::Zero) throw DivisionByZero("division by exact zero");
    if (b.state_ == PadicScalar::State::BelowPrecision)
        throw PrecisionExhausted("division by a value indistinguishable from zero");
    if (a.state_ == PadicScalar::State::Zero)
        return PadicScalar::zero(a.p_, std::min(a.cap_, b.cap_));
    if (a.state_ == PadicScalar::State::BelowPrecision)
        return PadicScalar::below_precision((int)(a.abs_ - b.val_), a.p_,
                                            std::min(a.cap_, b.cap_));
    return a * b.inverse();
}

PadicScalar PadicScalar::pow(unsigned long long e) const {
    PadicScalar r = one(p_, cap_);
    PadicScalar base = *this;
    while (e > 0) {
        if (e & 1ULL) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

std::string PadicScalar::to_text() const {
    if (state_ == State::Zero) return "0";
    if (state_ == State::BelowPrecision) return "~0@" + std::to_string(abs_);
    if (val_ >= 0 && abs_ == cap_) return residue().str();
    return "p^" + std::to_string(val_) + "*" + unit_.str() + "@" + std::to_string(abs_);
}

PadicScalar PadicScalar::parse(const std::string& text, long long p, int n_cap) {
    if (text.empty()) throw ParseError("empty scalar text");
    if (text == "0") return zero(p, n_cap);
    if (text.rfind("~0@", 0) == 0) {
        try {
            return below_precision(std::stoi(text.substr(3)), p, n_cap);
        } catch (const std::exception&) {
            throw ParseError("bad below-precision scalar: " + text);
        }
    }
    if (text.rfind("p^", 0) == 0) {
        auto star = text.find('*');
        if (star == std::string::npos) throw ParseError("bad scalar text: " + text);
        auto at = text.find('@', star);
        try {
            long long val = std::stoll(text.substr(2, star - 2));
            std::string unit_text =
                at == std::string::npos ? text.substr(star + 1) : text.substr(star + 1, at - star - 1);
            int abs = at == std::string::npos ? n_cap : std::stoi(text.substr(at + 1));
            BigInt u(unit_text);
            if (u <= 0 || u % p == 0) throw ParseError("unit part is not a unit: " + text);
            if (abs <= val) throw ParseError("absolute precision below valuation: " + text);
            PadicScalar z = zero(p, n_cap);
            z.state_ = State::Nonzero;
            z.val_ = val;
            z.abs_ = abs;
            z.unit_ = u % ppow(p, (int)(abs - val));
            if (z.unit_ == 0) throw ParseError("unit part reduced to zero: " + text);
            return z;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad scalar text: " + text);
        }
    }
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return from_integer(BigInt(text), p, n_cap);
        BigInt a(text.substr(0, slash));
        BigInt b(text.substr(slash + 1));
        return from_fraction(a, b, p, n_cap);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad scalar text: " + text);
    }
}

PadicScalar padic_log(const PadicScalar& q) {
    long long p = q.prime();
    int n_cap = q.precision_cap();
    PadicScalar t = q - PadicScalar::one(p, n_cap);
    if (!t.is_nonzero())
        return PadicScalar::below_precision(t.abs_precision(), p, n_cap);
    long long vt = t.valuation();
    // v(q-1) > 1/(p-1) guarantees convergence and v(log q) = v(q-1).
    if (vt * (p - 1) <= 1)
        throw LogDivergent("log(q) requires |q-1| < p^(-1/(p-1))");

    auto ilogp = [&](long long j) {
        int e = 0;
        while (j >= p) { j /= p; ++e; }
        return e;
    };
    // First index beyond which every term falls below the precision ceiling.
    int last = 1;
    while ((long long)(last + 1) * vt - ilogp(last + 1) < n_cap) ++last;

    PadicScalar sum = PadicScalar::zero(p, n_cap);
    PadicScalar tp = PadicScalar::one(p, n_cap);
    for (int j = 1; j <= last; ++j) {
        tp = tp * t;
        PadicScalar term = tp / PadicScalar::from_long(j, p, n_cap);
        sum = (j % 2 == 1) ? sum + term : sum - term;
    }
    // The omitted terms have valuation >= (last+1)*vt - ilogp(last+1) >= N,
    // which is at or above the surviving precision of the partial sum.
    long long rem = (long long)(last + 1) * vt - ilogp(last + 1);
    if (rem < sum.abs_precision()) sum = sum.reduced_to_abs((int)rem);
    return sum;
}

} // namespace qweyl
