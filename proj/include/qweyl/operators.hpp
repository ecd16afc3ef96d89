#pragma once

#include <map>
#include <vector>

#include "qweyl/xi.hpp"

namespace qweyl {

/// Evaluation engine for the standard twisted differential operators
/// d^[k] dual to the xi^(n) basis. Monomial values are produced by the
/// two-sided recurrence
///   d^[k](x^(n+1)) = sigma^k(x) d^[k](x^n) + d^[k-1](x^n)
/// (upward in n, downward via the truncated inverse of sigma^k(x)) and
/// memoized per (k, n).
///
/// On an annulus the engine requires the convergent regime |q| = 1,
/// |h| < r1 (or sigma = id), which guarantees |d^[k] z| <= |z| / r1^k;
/// that bound prices input tails. Disks only need admissibility.
class DividedDerivatives {
public:
    DividedDerivatives(const Endomorphism& endo, const Window& w, int trunc_order);

    const Endomorphism& endo() const { return endo_; }
    const Window& window() const { return window_; }
    int trunc_order() const { return trunc_; }

    /// d^[k](x^n).
    const LaurentElement& monomial(int k, int n);
    /// d^[k](z).
    LaurentElement apply(int k, const LaurentElement& z);
    /// d^[0](z), ..., d^[K](z).
    std::vector<LaurentElement> derivatives(const LaurentElement& z, int order);

    /// sigma^k(x) and its truncated inverse.
    const LaurentElement& sigma_power_x(int k);
    const LaurentElement& sigma_power_x_inverse(int k);

    /// Coefficients of d^[j] o (mult by x^(-1)) in the divided basis,
    /// cached per engine.
    const std::vector<LaurentElement>& commute_inverse_row(int j);

private:
    Endomorphism endo_;
    Window window_;
    int trunc_;
    std::map<int, LaurentElement> sigma_x_;
    std::map<int, LaurentElement> sigma_x_inv_;
    std::map<std::pair<int, int>, LaurentElement> memo_;
    std::vector<std::vector<LaurentElement>> commute_inv_;
};

/// A truncated twisted differential operator sum_k z_k d^[k] of level eta,
/// with one certified bound on the eta-norm of all omitted orders. Exact
/// operators (finite support, zero bound) have infinite level.
class TwistedOperator {
public:
    TwistedOperator(Endomorphism endo, LogNorm level, std::vector<LaurentElement> coeffs,
                    LogNorm truncation_tail = LogNorm::zero());

    static TwistedOperator zero(const Endomorphism& endo, const LogNorm& level, const Window& w);
    static TwistedOperator identity(const Endomorphism& endo, const LogNorm& level,
                                    const Window& w);
    /// The single divided power d^[k].
    static TwistedOperator divided_power(int k, const Endomorphism& endo, const LogNorm& level,
                                         const Window& w);
    /// Multiplication by z.
    static TwistedOperator multiplication(const LaurentElement& z, const Endomorphism& endo,
                                          const LogNorm& level);

    const Endomorphism& endo() const { return endo_; }
    const LogNorm& level() const { return level_; }
    int order() const { return (int)coeffs_.size() - 1; }
    const std::vector<LaurentElement>& coeffs() const { return coeffs_; }
    LaurentElement coeff(int k) const;
    const LogNorm& truncation_tail() const { return trunc_tail_; }
    const Window& window() const;
    bool is_exact() const;

    /// sup_k |z_k| / eta^k combined with the truncation tail.
    LogNorm norm(const LogNorm& eta) const;
    LogNorm norm() const { return norm(level_); }
    bool norm_is_exact() const;

    friend TwistedOperator operator+(const TwistedOperator& a, const TwistedOperator& b);
    friend TwistedOperator operator-(const TwistedOperator& a, const TwistedOperator& b);
    TwistedOperator operator-() const;
    /// Left multiplication by an element of A (coefficientwise).
    TwistedOperator left_scaled(const LaurentElement& z) const;
    TwistedOperator scaled(const PadicScalar& c) const;
    TwistedOperator with_added_tail(const LogNorm& extra) const;

    /// xi . (sum z_k d^[k]) = sum (z_{k+1} - z_k (x - sigma^k(x))) d^[k].
    TwistedOperator xi_action() const;

private:
    Endomorphism endo_;
    LogNorm level_;
    std::vector<LaurentElement> coeffs_;
    LogNorm trunc_tail_;
};

/// phi(z) = sum_k z_k d^[k](z); the result tail aggregates coefficient
/// tails, the priced truncation tail and window overflow.
LaurentElement op_apply(const TwistedOperator& phi, const LaurentElement& z,
                        DividedDerivatives& engine);

/// Coefficients c_0..c_k with d^[k] o (mult by z) = sum_j c_j d^[j],
/// from the base identity d^[k] o x = sigma^k(x) d^[k] + d^[k-1] and its
/// inversion for x^(-1).
std::vector<LaurentElement> commute_past(int k, const LaurentElement& z,
                                         DividedDerivatives& engine);

/// Composition via commute_past and the quantum rule
/// d^[k] o d^[l] = (k+l choose l)_q d^[k+l]; orders beyond order_cap fold
/// into the truncation tail.
TwistedOperator op_compose(const TwistedOperator& phi, const TwistedOperator& psi,
                           DividedDerivatives& engine, int order_cap);

/// The image (k)_q! d^[k] of the k-th Weyl power; non_unit_factorial is
/// set when (k)_q! has positive valuation at working precision.
struct WeylImage {
    TwistedOperator op;
    bool non_unit_factorial;
};
WeylImage weyl_to_divided(int k, const Endomorphism& endo, const LogNorm& level, const Window& w);

/// d o (mult by z) = d(z) + sigma(z) d^[1] in the Weyl algebra.
TwistedOperator weyl_commutation(const LaurentElement& z, DividedDerivatives& engine,
                                 const LogNorm& level);

/// Twisted Taylor data of z: derivatives[k] = d^[k](z) for k <= order,
/// computed by substituting x -> x + xi and changing to the divided basis
/// (the reference path, independent of DividedDerivatives).
struct TaylorExpansion {
    LaurentElement base;
    Endomorphism endo;
    LogNorm level;
    int order;
    std::vector<LaurentElement> derivatives;

    /// sum_k d^[k](z) xi^(k) as a divided-basis polynomial.
    XiPolynomial as_xi_polynomial() const;
};

TaylorExpansion taylor_expand(const LaurentElement& z, const Endomorphism& endo,
                              const LogNorm& level, int order);

/// Coefficientwise agreement of two operators over the same endomorphism
/// and level, with per-order tolerance (max of both truncation tails and
/// extra) * eta^k.
bool operators_agree(const TwistedOperator& a, const TwistedOperator& b,
                     const LogNorm& extra = LogNorm::zero());

} // namespace qweyl
