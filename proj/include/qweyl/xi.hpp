#pragma once

#include <optional>
#include <vector>

#include "qweyl/endomorphism.hpp"

namespace qweyl {

enum class XiBasis { Monomial, Divided };

/// A polynomial in the disk variable xi with Laurent coefficients, read in
/// one of the two bases of A{xi/eta}: the plain monomials xi^n, or the
/// twisted divided monomials
///   xi^(n) = prod_{i=0}^{n-1} (xi + x - sigma^i(x))
/// relative to a stored endomorphism. The eta-norm max |c_d| eta^d is the
/// same in both bases.
class XiPolynomial {
public:
    XiPolynomial(std::vector<LaurentElement> coeffs, XiBasis basis, const LogNorm& level,
                 std::optional<Endomorphism> endo = std::nullopt)
        : coeffs_(std::move(coeffs)), basis_(basis), level_(level), endo_(std::move(endo)) {
        if (basis_ == XiBasis::Divided && !endo_)
            throw ShapeError("divided-basis polynomial needs its endomorphism");
        if (coeffs_.empty()) throw ShapeError("xi polynomial needs at least degree 0");
    }

    int degree() const { return (int)coeffs_.size() - 1; }
    XiBasis basis() const { return basis_; }
    const LogNorm& level() const { return level_; }
    const std::vector<LaurentElement>& coeffs() const { return coeffs_; }
    const LaurentElement& coeff(int d) const { return coeffs_.at(d); }
    const Endomorphism& endo() const {
        if (!endo_) throw ShapeError("monomial-basis polynomial has no endomorphism");
        return *endo_;
    }

    LogNorm eta_norm() const {
        LogNorm m = LogNorm::zero();
        for (int d = 0; d < (int)coeffs_.size(); ++d)
            m = max(m, coeffs_[d].gauss_norm() * level_.pow(d));
        return m;
    }
    bool eta_norm_is_exact() const {
        for (const auto& c : coeffs_)
            if (!c.gauss_norm_is_exact()) return false;
        return true;
    }

    friend XiPolynomial operator+(const XiPolynomial& a, const XiPolynomial& b);
    /// Product in A{xi/eta}; both operands must be in the monomial basis.
    friend XiPolynomial operator*(const XiPolynomial& a, const XiPolynomial& b);

private:
    std::vector<LaurentElement> coeffs_;
    XiBasis basis_;
    LogNorm level_;
    std::optional<Endomorphism> endo_;
};

/// x - sigma^i(x) = (1 - q^i) x - (i)_q h.
LaurentElement xi_linear_offset(const Endomorphism& endo, unsigned i, const Window& w);

/// Cached monomial expansions of xi^(0), ..., xi^(order) for one
/// endomorphism, with the triangular basis changes running off the shared
/// table. Heavy callers (deformation plans, batch conversions) build one
/// of these instead of re-expanding per call.
class XiBasisTable {
public:
    XiBasisTable(const Endomorphism& endo, int order, const Window& w);

    const Endomorphism& endo() const { return endo_; }
    int order() const { return (int)rows_.size() - 1; }
    /// Monomial coefficients of xi^(n).
    const std::vector<LaurentElement>& expansion(int n) const { return rows_.at(n); }

    std::vector<LaurentElement> to_divided(std::vector<LaurentElement> mono) const;
    std::vector<LaurentElement> to_monomial(const std::vector<LaurentElement>& divided) const;

private:
    Endomorphism endo_;
    std::vector<std::vector<LaurentElement>> rows_;
};

/// The monomial-basis expansion of xi^(n); degree n, leading coefficient 1,
/// every lower coefficient of eta-norm at most eta^n. Requires
/// eta_admissible(endo, level).
XiPolynomial xi_expand(unsigned n, const Endomorphism& endo, const LogNorm& level,
                       const Window& w);

/// Triangular unipotent changes of basis; exact on polynomial inputs and
/// eta-norm preserving.
XiPolynomial xi_to_divided(const XiPolynomial& poly, const Endomorphism& endo);
XiPolynomial xi_to_monomial(const XiPolynomial& poly, const Endomorphism& endo);

namespace detail {
/// Expansions of xi^(0), ..., xi^(n) in the monomial basis, built by one
/// running product.
std::vector<std::vector<LaurentElement>> xi_expansion_table(unsigned n, const Endomorphism& endo,
                                                            const Window& w);
void require_eta_admissible(const Endomorphism& endo, const LogNorm& level);
} // namespace detail

} // namespace qweyl
