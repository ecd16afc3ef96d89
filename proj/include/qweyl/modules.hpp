#pragma once

#include "qweyl/convergence.hpp"
#include "qweyl/deformation.hpp"

namespace qweyl {

/// Small dense matrix of Laurent elements (row-major), the coordinate
/// form of connection and multiplier matrices. Desk-scale ranks only.
class ElemMatrix {
public:
    ElemMatrix(int rank, std::vector<LaurentElement> entries) : rank_(rank), e_(std::move(entries)) {
        if ((int)e_.size() != rank * rank) throw ShapeError("matrix entry count mismatch");
    }
    static ElemMatrix zero(int rank, const AnnulusParams& params, const Window& w,
                           const PadicContext& ctx);
    static ElemMatrix identity(int rank, const AnnulusParams& params, const Window& w,
                               const PadicContext& ctx);

    int rank() const { return rank_; }
    const LaurentElement& at(int i, int j) const { return e_[(size_t)i * rank_ + j]; }
    LaurentElement& at(int i, int j) { return e_[(size_t)i * rank_ + j]; }
    const std::vector<LaurentElement>& entries() const { return e_; }

    /// Max entry Gauss norm.
    LogNorm norm() const;
    bool is_exact() const;

    friend ElemMatrix operator+(const ElemMatrix& a, const ElemMatrix& b);
    friend ElemMatrix operator-(const ElemMatrix& a, const ElemMatrix& b);
    friend ElemMatrix operator*(const ElemMatrix& a, const ElemMatrix& b);
    ElemMatrix scaled(const LaurentElement& z) const;
    ElemMatrix scaled(const PadicScalar& c) const;
    /// Entrywise d/dx.
    ElemMatrix dx() const;
    /// Entrywise application of an endomorphism.
    ElemMatrix mapped(const Endomorphism& endo, int trunc) const;
    std::vector<LaurentElement> mul_vec(const std::vector<LaurentElement>& v) const;

private:
    int rank_;
    std::vector<LaurentElement> e_;
};

/// A rank-m module with connection, presented by the matrix G of the
/// derivation on the basis: d(e_j) = sum_i G_ij e_i, so the coordinate
/// action is v -> dv/dx + G v.
class ConnectionModule {
public:
    ConnectionModule(ElemMatrix g, Endomorphism endo, LogNorm level)
        : g_(std::move(g)), endo_(std::move(endo)), level_(std::move(level)) {
        if (!endo_.eta_admissible(level_).ok)
            throw AdmissibilityError("connection level below the x-radius");
    }

    int rank() const { return g_.rank(); }
    const ElemMatrix& matrix() const { return g_; }
    const Endomorphism& endo() const { return endo_; }
    const LogNorm& level() const { return level_; }

    /// Coordinate action of the derivation: dv/dx + G v.
    std::vector<LaurentElement> derivation(const std::vector<LaurentElement>& v) const;

private:
    ElemMatrix g_;
    Endomorphism endo_;
    LogNorm level_;
};

/// A rank-m module with a sigma-semilinear endomorphism, presented by the
/// multiplier matrix S: sigma_M(e_j) = sum_i S_ij e_i, coordinate action
/// v -> S sigma(v). Carries the truncation certificate of its producer.
class SigmaModule {
public:
    SigmaModule(ElemMatrix s, Endomorphism endo, LogNorm tail)
        : s_(std::move(s)), endo_(std::move(endo)), tail_(std::move(tail)) {}

    int rank() const { return s_.rank(); }
    const ElemMatrix& matrix() const { return s_; }
    const Endomorphism& endo() const { return endo_; }
    const LogNorm& tail() const { return tail_; }

    /// Coordinate action S sigma(v) (sigma applied entrywise first).
    std::vector<LaurentElement> action(const std::vector<LaurentElement>& v, int trunc) const;

private:
    ElemMatrix s_;
    Endomorphism endo_;
    LogNorm tail_;
};

/// Iterated derivation matrices: result[k] gives d_M^k on the basis,
/// via A_0 = Id, A_{k+1} = dx(A_k) + G A_k. Requires a usual connection
/// (identity endomorphism).
std::vector<ElemMatrix> connection_power_matrices(const ConnectionModule& m, int order);

/// The sequence m_k = |A_k / k!| eta'^k for k <= order. Division by k!
/// makes the sequence wiggle at multiples of p, so decay is certified by
/// comparing maxima: the trailing half must stay strictly below the
/// leading half (or vanish). trail_max also feeds the extrapolated tail
/// of the transform. Evidence up to order K only.
struct DecayCertificate {
    std::vector<LogNorm> weighted;
    LogNorm eta_prime;
    int order = 0;
    int decay_from = 0; // last index where the sequence increased
    LogNorm lead_max;
    LogNorm trail_max;
    bool ok = false;
};

DecayCertificate decay_certificate(const std::vector<ElemMatrix>& powers, long long p,
                                   const LogNorm& eta_prime);

/// The explicit confluence functor: S = sum_{k<=K} ((q-1)x+h)^k / k! * A_k
/// with a certified tail extrapolated from the decay sequence at eta'.
/// Requires rho(sigma) <= eta' < level, positive q-integers distinguishable
/// from zero up to K, and a passing decay certificate.
SigmaModule confluence_transform(const ConnectionModule& m, const Endomorphism& sigma, int order,
                                 const LogNorm& eta_prime);

/// x is strong when x - sigma(x) is a unit (dominant-monomial test).
bool strong_predicate(const Endomorphism& sigma, const Window& w);
/// The operator 1 - (x - sigma(x)) d^[1] realizing the sigma-module
/// structure inside the operator ring.
TwistedOperator strong_map(const Endomorphism& sigma, const LogNorm& level, const Window& w);

struct StructureReport {
    bool identity_ok = false;      // S - Id = (sigma(x)-x) D to certified tails
    bool semilinearity_ok = false; // action(z v) = sigma(z) action(v), exactly
    std::string detail;
};

/// Verifies S - Id = (sigma(x)-x) * D for the independently resummed
/// twisted derivation D = sum_{k>=1} (sigma(x)-x)^(k-1) A_k / k!, and
/// sigma-semilinearity of the action on the supplied exact samples
/// (pairs of a scalar z and a coordinate vector v).
StructureReport sigma_structure_identity_check(
    const ConnectionModule& m, const SigmaModule& s, const Endomorphism& sigma, int order,
    const std::vector<std::pair<LaurentElement, std::vector<LaurentElement>>>& samples);

struct H0Report {
    int horizontal_checked = 0;
    int horizontal_passed = 0;
    bool vacuous = false; // no horizontal samples supplied
    int fixed_checked = 0;
    int fixed_passed = 0;
    bool ok = true;
    std::string detail;
};

/// Sample-level H^0 compatibility: every supplied near-horizontal vector v
/// (with |d_M v| <= p^-t) must satisfy |S sigma(v) - v| within the derived
/// tolerance; when sigma is strong, supplied sigma-fixed vectors are
/// checked to be near-horizontal in the reverse direction.
H0Report h_complex_sample_check(const ConnectionModule& m, const SigmaModule& s,
                                const Endomorphism& sigma, int order,
                                const std::vector<std::vector<LaurentElement>>& horizontal_samples,
                                const std::vector<std::vector<LaurentElement>>& fixed_samples);

/// The logarithmic-derivative route for h = 0:
///   sigma_M = sum_k log(q)^k (x d_M)^k / k!,
/// truncated at the given order; must agree with confluence_transform up
/// to certified tails. Throws LogDivergent when |q-1| >= p^(-1/(p-1)).
SigmaModule log_derivative_form(const ConnectionModule& m, const PadicScalar& q, int order,
                                const LogNorm& eta_prime);

/// v(k!) = sum_i floor(k / p^i).
long long factorial_valuation(long long k, long long p);

} // namespace qweyl
