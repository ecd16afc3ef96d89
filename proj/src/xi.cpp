#include "qweyl/xi.hpp"

#include <algorithm>

#include "qweyl/qcomb.hpp"

namespace qweyl {

namespace detail {

void require_eta_admissible(const Endomorphism& endo, const LogNorm& level) {
    if (!endo.eta_admissible(level).ok)
        throw AdmissibilityError("level is below the x-radius of the endomorphism");
}

std::vector<std::vector<LaurentElement>> xi_expansion_table(unsigned n, const Endomorphism& endo,
                                                            const Window& w) {
    const AnnulusParams& params = endo.params();
    const PadicContext& ctx = endo.context();
    std::vector<std::vector<LaurentElement>> table;
    table.reserve(n + 1);
    table.push_back({LaurentElement::one(params, w, ctx)});
    for (unsigned k = 0; k < n; ++k) {
        // Multiply by (xi + (x - sigma^k(x))).
        LaurentElement off = xi_linear_offset(endo, k, w);
        const auto& prev = table.back();
        std::vector<LaurentElement> next;
        next.reserve(prev.size() + 1);
        next.push_back(prev[0] * off);
        for (size_t j = 1; j < prev.size(); ++j) next.push_back(prev[j] * off + prev[j - 1]);
        next.push_back(prev.back());
        table.push_back(std::move(next));
    }
    return table;
}

} // namespace detail

LaurentElement xi_linear_offset(const Endomorphism& endo, unsigned i, const Window& w) {
    return endo.iterate(i).x_minus_sigma_x(w);
}

XiBasisTable::XiBasisTable(const Endomorphism& endo, int order, const Window& w)
    : endo_(endo), rows_(detail::xi_expansion_table((unsigned)order, endo, w)) {}

std::vector<LaurentElement> XiBasisTable::to_divided(std::vector<LaurentElement> mono) const {
    int deg = (int)mono.size() - 1;
    if (deg > order()) throw ShapeError("degree exceeds the cached basis table");
    // Unipotent triangular solve from the top degree down.
    std::vector<LaurentElement> out;
    out.reserve(deg + 1);
    for (int n = deg; n >= 1; --n) {
        LaurentElement dn = mono[n];
        for (int j = 0; j < n; ++j) mono[j] -= dn * rows_[n][j];
        out.push_back(std::move(dn));
    }
    out.push_back(mono[0]);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<LaurentElement> XiBasisTable::to_monomial(
    const std::vector<LaurentElement>& divided) const {
    int deg = (int)divided.size() - 1;
    if (deg > order()) throw ShapeError("degree exceeds the cached basis table");
    const LaurentElement& model = divided[0];
    std::vector<LaurentElement> out(
        deg + 1, LaurentElement::zero(model.params(), model.window(), model.context()));
    for (int n = 0; n <= deg; ++n)
        for (int j = 0; j <= n; ++j) out[j] += divided[n] * rows_[n][j];
    return out;
}

XiPolynomial xi_expand(unsigned n, const Endomorphism& endo, const LogNorm& level,
                       const Window& w) {
    detail::require_eta_admissible(endo, level);
    auto table = detail::xi_expansion_table(n, endo, w);
    return XiPolynomial(std::move(table[n]), XiBasis::Monomial, level);
}

XiPolynomial xi_to_divided(const XiPolynomial& poly, const Endomorphism& endo) {
    detail::require_eta_admissible(endo, poly.level());
    if (poly.basis() == XiBasis::Divided) {
        if (!poly.endo().same_as(endo)) throw ShapeError("polynomial is divided for another endomorphism");
        return poly;
    }
    XiBasisTable table(endo, poly.degree(), poly.coeff(0).window());
    return XiPolynomial(table.to_divided(poly.coeffs()), XiBasis::Divided, poly.level(), endo);
}

XiPolynomial xi_to_monomial(const XiPolynomial& poly, const Endomorphism& endo) {
    detail::require_eta_admissible(endo, poly.level());
    if (poly.basis() == XiBasis::Monomial) return poly;
    if (!poly.endo().same_as(endo)) throw ShapeError("polynomial is divided for another endomorphism");
    XiBasisTable table(endo, poly.degree(), poly.coeff(0).window());
    return XiPolynomial(table.to_monomial(poly.coeffs()), XiBasis::Monomial, poly.level());
}

XiPolynomial operator+(const XiPolynomial& a, const XiPolynomial& b) {
    if (a.basis() != b.basis()) throw ShapeError("adding xi polynomials in different bases");
    if (!(a.level() == b.level())) throw ShapeError("adding xi polynomials at different levels");
    const XiPolynomial& lo = a.degree() <= b.degree() ? a : b;
    const XiPolynomial& hi = a.degree() <= b.degree() ? b : a;
    std::vector<LaurentElement> out = hi.coeffs();
    for (int d = 0; d <= lo.degree(); ++d) out[d] += lo.coeff(d);
    std::optional<Endomorphism> endo;
    if (a.basis() == XiBasis::Divided) endo = a.endo();
    return XiPolynomial(std::move(out), a.basis(), a.level(), endo);
}

XiPolynomial operator*(const XiPolynomial& a, const XiPolynomial& b) {
    if (a.basis() != XiBasis::Monomial || b.basis() != XiBasis::Monomial)
        throw ShapeError("xi product is defined on the monomial basis");
    if (!(a.level() == b.level())) throw ShapeError("multiplying xi polynomials at different levels");
    const AnnulusParams& params = a.coeff(0).params();
    const Window& w = a.coeff(0).window();
    const PadicContext& ctx = a.coeff(0).context();
    std::vector<LaurentElement> out(a.degree() + b.degree() + 1,
                                    LaurentElement::zero(params, w, ctx));
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) out[i + j] += a.coeff(i) * b.coeff(j);
    return XiPolynomial(std::move(out), XiBasis::Monomial, a.level());
}

} // namespace qweyl
