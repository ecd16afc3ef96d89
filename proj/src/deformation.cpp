#include "qweyl/deformation.hpp"

namespace qweyl {

DeformationPlan DeformationPlan::build(const Endomorphism& source, const Endomorphism& target,
                                       const LogNorm& level, int order, const Window& w) {
    detail::require_eta_admissible(source, level);
    detail::require_eta_admissible(target, level);
    if (!(source.params() == target.params()))
        throw ShapeError("deformation endomorphisms on different annuli");
    XiBasisTable source_table(source, order, w);
    XiBasisTable target_table(target, order, w);
    std::vector<std::vector<LaurentElement>> rows;
    rows.reserve(order + 1);
    for (int n = 0; n <= order; ++n)
        rows.push_back(target_table.to_divided(source_table.expansion(n)));
    return DeformationPlan(source, target, level, order, w, std::move(rows));
}

TwistedOperator deform_operator(const TwistedOperator& phi, const DeformationPlan& plan) {
    if (!phi.endo().same_as(plan.source()))
        throw PlanMismatch("operator endomorphism differs from the plan source");
    if (!(phi.level() == plan.level()))
        throw PlanMismatch("operator level differs from the plan level");
    if (phi.order() > plan.order())
        throw PlanMismatch("operator order exceeds the plan order");

    const Endomorphism& target = plan.target();
    const LogNorm& eta = plan.level();
    int order = plan.order();

    // Solve z_n = sum_{m<=n} C_{n,m} w_m with unit diagonal, top down in m.
    std::vector<LaurentElement> out;
    out.reserve(order + 1);
    for (int n = 0; n <= order; ++n) {
        LaurentElement wn = phi.coeff(n);
        for (int m = 0; m < n; ++m) wn -= plan.entry(n, m) * out[m];
        out.push_back(std::move(wn));
    }

    // Omitted coefficients w_m, m > order: |w_m| <= max_j |z_j| rho^(m-j),
    // so their eta-norm tail is largest right after the truncation point.
    LogNorm rho = plan.radius_bound();
    LogNorm tail = LogNorm::zero();
    if (!rho.is_zero()) {
        for (int j = 0; j <= phi.order(); ++j) {
            LogNorm zj = phi.coeff(j).gauss_norm();
            if (zj.is_zero()) continue;
            if (rho < eta)
                tail = max(tail, zj * rho.pow(order + 1 - j) / eta.pow(order + 1));
            else
                tail = max(tail, zj / eta.pow(j));
        }
    }
    // The image of the input's own omitted part keeps its eta-norm.
    tail = max(tail, phi.truncation_tail());
    return TwistedOperator(target, eta, std::move(out), tail);
}

TwistedOperator deform_order1_closed(const Endomorphism& sigma, const Endomorphism& tau,
                                     const LogNorm& level, int order, const Window& w) {
    detail::require_eta_admissible(sigma, level);
    detail::require_eta_admissible(tau, level);
    if (!(sigma.params() == tau.params()))
        throw ShapeError("deformation endomorphisms on different annuli");
    if (order < 1) throw ShapeError("order-1 deformation needs order >= 1");

    const AnnulusParams& params = tau.params();
    const PadicContext& ctx = tau.context();
    std::vector<LaurentElement> out;
    out.reserve(order + 1);
    out.push_back(LaurentElement::zero(params, w, ctx));
    LaurentElement sigma_x = sigma.sigma_x(w);
    LaurentElement running = LaurentElement::one(params, w, ctx);
    out.push_back(running); // k = 1: empty product
    if (sigma.same_as(tau)) {
        // every longer product contains the factor sigma(x) - tau(x) = 0
        return TwistedOperator(tau, level, std::move(out));
    }
    for (int k = 2; k <= order; ++k) {
        running *= sigma_x - tau.iterate(k - 1).sigma_x(w);
        out.push_back(running);
    }

    // |w_k| <= |sigma(x) - tau(x)| rho^(k-2) for k >= 2.
    LogNorm d1 = (sigma_x - tau.sigma_x(w)).gauss_norm();
    LogNorm rho = max(sigma.x_radius(), tau.x_radius());
    LogNorm tail = LogNorm::zero();
    if (!d1.is_zero()) {
        if (rho < level)
            tail = d1 * rho.pow(order - 1) / level.pow(order + 1);
        else
            tail = d1 / level.pow(2);
    }
    return TwistedOperator(tau, level, std::move(out), tail);
}

} // namespace qweyl
