#pragma once

#include "qweyl/operators.hpp"

namespace qweyl {

/// Change of divided bases between two endomorphisms sharing a level:
/// row n expands xi^(n) of the source endomorphism in the divided basis
/// of the target. The matrix is unit triangular and entry (n, m) has
/// Gauss norm at most rho^(n-m) for rho = max of the two x-radii.
class DeformationPlan {
public:
    /// Expands xi^(n)_source via xi_expand and xi_to_divided(target) for
    /// n = 0..order; both endomorphisms must be admissible at the level.
    static DeformationPlan build(const Endomorphism& source, const Endomorphism& target,
                                 const LogNorm& level, int order, const Window& w);

    const Endomorphism& source() const { return source_; }
    const Endomorphism& target() const { return target_; }
    const LogNorm& level() const { return level_; }
    int order() const { return order_; }
    const Window& window() const { return window_; }

    /// Coefficient of xi^(m)_target in xi^(n)_source (m <= n).
    const LaurentElement& entry(int n, int m) const { return rows_.at(n).at(m); }

    /// max(x_radius(source), x_radius(target)); the decay modulus of the
    /// off-diagonal entries.
    LogNorm radius_bound() const {
        return max(source_.x_radius(), target_.x_radius());
    }

private:
    DeformationPlan(Endomorphism source, Endomorphism target, LogNorm level, int order, Window w,
                    std::vector<std::vector<LaurentElement>> rows)
        : source_(std::move(source)),
          target_(std::move(target)),
          level_(std::move(level)),
          order_(order),
          window_(w),
          rows_(std::move(rows)) {}

    Endomorphism source_;
    Endomorphism target_;
    LogNorm level_;
    int order_;
    Window window_;
    std::vector<std::vector<LaurentElement>> rows_;
};

/// Rewrites an operator over plan.source() as the operator over
/// plan.target() with the same continuous linear form on A{xi/eta}: the
/// new coefficients solve the unit-triangular system
///   z_n = sum_m C_{n,m} w_m.
/// The omitted orders beyond plan.order() are certified from the entry
/// decay bound. Throws PlanMismatch on endomorphism/level disagreement or
/// when the input order exceeds the plan.
TwistedOperator deform_operator(const TwistedOperator& phi, const DeformationPlan& plan);

/// The closed-form deformation of the order-1 operator of sigma into the
/// divided basis of tau:
///   d_sigma = sum_{k>=1} ( prod_{i=1}^{k-1} (sigma(x) - tau^i(x)) ) d_tau^[k],
/// truncated at the given order with a certified tail.
TwistedOperator deform_order1_closed(const Endomorphism& sigma, const Endomorphism& tau,
                                     const LogNorm& level, int order, const Window& w);

} // namespace qweyl
