#include "qweyl/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "qweyl/convergence.hpp"
#include "qweyl/deformation.hpp"
#include "qweyl/modules.hpp"
#include "qweyl/qcomb.hpp"

namespace qweyl {

long long SampleGenerator::pick(long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    return d(rng_);
}

PadicScalar SampleGenerator::scalar(int min_val, int max_val) {
    long long u = pick(1, PadicScalar::ppow(cfg_.p, 4).convert_to<long long>());
    if (u % cfg_.p == 0) ++u;
    long long v = pick(min_val, max_val);
    PadicScalar s = cfg_.context().integer(u);
    if (pick(0, 1)) s = -s;
    if (v > 0) s = s * cfg_.context().integer(PadicScalar::ppow(cfg_.p, (int)v));
    if (v < 0) s = s * cfg_.context().integer(PadicScalar::ppow(cfg_.p, (int)-v)).inverse();
    return s;
}

PadicScalar SampleGenerator::unit() { return scalar(0, 0); }

LaurentElement SampleGenerator::element(int lo, int hi, int terms, int max_val) {
    AnnulusParams params = cfg_.annulus();
    LaurentElement f = LaurentElement::zero(params, cfg_.window, cfg_.context());
    for (int t = 0; t < terms; ++t) {
        int n = (int)pick(lo, hi);
        f += LaurentElement::monomial(scalar(0, max_val), n, params, cfg_.window);
    }
    return f;
}

TwistedOperator SampleGenerator::operator_sample(const Endomorphism& endo, const LogNorm& level,
                                                 int max_order, int coeff_lo, int coeff_hi) {
    int order = (int)pick(0, max_order);
    std::vector<LaurentElement> cs;
    cs.reserve(order + 1);
    for (int k = 0; k <= order; ++k) {
        if (pick(0, 3) == 0)
            cs.push_back(LaurentElement::zero(endo.params(), cfg_.window, cfg_.context()));
        else
            cs.push_back(element(coeff_lo, coeff_hi, (int)pick(1, 3), 3));
    }
    return TwistedOperator(endo, level, std::move(cs));
}

namespace {

struct Fixture {
    Config cfg;
    PadicContext ctx;
    AnnulusParams ann;
    Window w;
    LogNorm eta;
    Endomorphism ref;    // q = 1 + p^2, h = p^2
    Endomorphism qonly;  // q = 1 + p^2, h = 0
    Endomorphism ident;

    explicit Fixture(const Config& c)
        : cfg(c),
          ctx(c.context()),
          ann(c.annulus()),
          w(c.window),
          eta(c.eta()),
          ref(Endomorphism::create(ref_q(c), ref_h(c), c.annulus())),
          qonly(Endomorphism::create(ref_q(c), c.context().zero(), c.annulus())),
          ident(Endomorphism::identity(c.annulus(), c.context())) {}

    static PadicScalar ref_q(const Config& c) {
        return c.context().one() + pp(c, 2);
    }
    static PadicScalar ref_h(const Config& c) { return pp(c, 2); }
    static PadicScalar pp(const Config& c, int e) {
        return c.context().integer(PadicScalar::ppow(c.p, e));
    }

    // Confluence endomorphism sigma(x) = (1+p^2) x + p^2 together with a
    // module level strictly above its x-radius and the working eta'
    // strictly between them (geometric means on the log scale).
    Endomorphism conf_sigma() const { return ref; }
    LogNorm conf_level() const {
        Rational rho_val = ref.x_radius().valuation();
        Rational r1_val = ann.bound_radius().valuation();
        return LogNorm::from_valuation((rho_val + r1_val) / Rational(2));
    }
    LogNorm conf_eta_prime() const {
        Rational rho_val = ref.x_radius().valuation();
        return LogNorm::from_valuation((rho_val + conf_level().valuation()) / Rational(2));
    }

    LaurentElement mono(const PadicScalar& c, int n) const {
        return LaurentElement::monomial(c, n, ann, w);
    }
    LaurentElement mono(long long c, int n) const { return mono(ctx.integer(c), n); }
    LaurentElement one_el() const { return LaurentElement::one(ann, w, ctx); }
    LaurentElement zero_el() const { return LaurentElement::zero(ann, w, ctx); }

    ConnectionModule rank1(const LaurentElement& g, const LogNorm& level) const {
        return ConnectionModule(ElemMatrix(1, {g}), ident, level);
    }
};

std::string fail(const std::string& what) { return what; }

// 1. Quantum Pascal suite.
CriterionResult c1_pascal(const Fixture& fx) {
    CriterionResult res{1, "pascal", true, ""};
    SampleGenerator gen(fx.cfg, 1);
    const PadicContext& ctx = fx.ctx;

    std::vector<PadicScalar> qs;
    for (int i = 0; i < 20; ++i) qs.push_back(gen.scalar(i % 2 == 0 ? 0 : 1, 3));
    qs.push_back(ctx.integer(fx.cfg.p).inverse()); // |q| > 1 stresses the bound
    int checked = 0;

    for (const PadicScalar& q : qs) {
        for (unsigned n = 0; n <= 12 && res.pass; ++n) {
            for (unsigned k = 0; k <= n; ++k) {
                PadicScalar b = qbinom(n, k, q);
                if (k == 0 && !(b == ctx.one())) {
                    res.pass = false;
                    res.detail = fail("(n 0)_q != 1");
                    break;
                }
                if (n >= 1 && k >= 1) {
                    PadicScalar rhs = qbinom(n - 1, k - 1, q) + q.pow(k) * qbinom(n - 1, k, q);
                    if (!(b == rhs)) {
                        res.pass = false;
                        res.detail = fail("Pascal identity failed at n=" + std::to_string(n) +
                                          " k=" + std::to_string(k));
                        break;
                    }
                }
                if (!(qbinom_norm_bound(n, k, q.norm()) >= b.norm())) {
                    res.pass = false;
                    res.detail = fail("norm bound undercut at n=" + std::to_string(n) +
                                      " k=" + std::to_string(k));
                    break;
                }
                ++checked;
            }
        }
        if (!res.pass) break;
        for (unsigned k = 1; k <= 12; ++k)
            if (!qbinom(0, k, q).is_exact_zero()) {
                res.pass = false;
                res.detail = fail("(0 k)_q != 0");
            }
    }

    if (res.pass) {
        PadicScalar one = ctx.one();
        for (unsigned n = 0; n <= 12 && res.pass; ++n)
            for (unsigned k = 0; k <= n; ++k) {
                BigInt c = 1;
                for (unsigned i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
                if (!(qbinom(n, k, one) == ctx.integer(c))) {
                    res.pass = false;
                    res.detail = fail("q = 1 degeneration failed");
                    break;
                }
            }
    }
    if (res.pass)
        res.detail = std::to_string(checked) + " identities over " + std::to_string(qs.size()) +
                     " values of q, bound dominated everywhere";
    return res;
}

// 2. Divided-power oracle: d^[k](x^n) = (n k)_q x^(n-k) both ways.
CriterionResult c2_divided_power(const Fixture& fx) {
    CriterionResult res{2, "divided-power", true, ""};
    DividedDerivatives eng(fx.qonly, fx.w, fx.cfg.K);
    const PadicScalar& q = fx.qonly.q();
    for (int n = 0; n <= 12 && res.pass; ++n) {
        LaurentElement xn = fx.mono(fx.ctx.one(), n);
        TaylorExpansion tay = taylor_expand(xn, fx.qonly, fx.eta, 12);
        for (int k = 0; k <= n; ++k) {
            LaurentElement want = fx.mono(qbinom(n, k, q), n - k);
            if (!equal_at_precision(eng.monomial(k, n), want)) {
                res.pass = false;
                res.detail = fail("recurrence value wrong at n=" + std::to_string(n) +
                                  " k=" + std::to_string(k));
                break;
            }
            if (!equal_at_precision(tay.derivatives[k], want)) {
                res.pass = false;
                res.detail = fail("substitution oracle differs at n=" + std::to_string(n) +
                                  " k=" + std::to_string(k));
                break;
            }
        }
    }
    if (res.pass) res.detail = "recurrence and substitution agree on all 0<=k<=n<=12";
    return res;
}

// 3. Schauder isometry of the divided basis.
CriterionResult c3_schauder(const Fixture& fx) {
    CriterionResult res{3, "schauder", true, ""};
    SampleGenerator gen(fx.cfg, 3);
    for (int trial = 0; trial < 100 && res.pass; ++trial) {
        int deg = (int)gen.pick(0, 20);
        std::vector<LaurentElement> cs;
        for (int d = 0; d <= deg; ++d) cs.push_back(gen.element(-5, 5, (int)gen.pick(1, 3), 3));
        XiPolynomial poly(cs, XiBasis::Monomial, fx.eta);
        XiPolynomial div = xi_to_divided(poly, fx.ref);
        XiPolynomial back = xi_to_monomial(div, fx.ref);
        if (!(poly.eta_norm() == div.eta_norm()) || !(poly.eta_norm() == back.eta_norm())) {
            res.pass = false;
            res.detail = fail("eta-norm not preserved on trial " + std::to_string(trial));
            break;
        }
        for (int d = 0; d <= deg; ++d)
            if (!equal_at_precision(poly.coeff(d), back.coeff(d))) {
                res.pass = false;
                res.detail = fail("round trip failed on trial " + std::to_string(trial));
                break;
            }
    }
    if (res.pass) res.detail = "100 random polynomials of degree <= 20 round-trip isometrically";
    return res;
}

// 4. Annulus derivative bound |d^[k](z)| <= |z| r1^(-k).
CriterionResult c4_derivative_bound(const Fixture& fx) {
    CriterionResult res{4, "derivative-bound", true, ""};
    SampleGenerator gen(fx.cfg, 4);
    DividedDerivatives eng(fx.ref, fx.w, fx.cfg.K);
    const LogNorm& r1 = fx.ann.bound_radius();
    for (int trial = 0; trial < 100 && res.pass; ++trial) {
        LaurentElement z = gen.element(-10, 10, (int)gen.pick(1, 6), 4);
        LogNorm zn = z.gauss_norm();
        for (int k = 0; k <= fx.cfg.K; ++k) {
            if (eng.apply(k, z).gauss_norm() > zn / r1.pow(k)) {
                res.pass = false;
                res.detail = fail("bound violated at k=" + std::to_string(k) + " on trial " +
                                  std::to_string(trial));
                break;
            }
        }
    }
    if (res.pass) res.detail = "bound holds for 100 random elements, all k <= " +
                               std::to_string(fx.cfg.K);
    return res;
}

// 5. Deformation: closed form, round trip, linearization invariance.
CriterionResult c5_deformation(const Fixture& fx) {
    CriterionResult res{5, "deformation", true, ""};
    const PadicContext& ctx = fx.ctx;
    int order = fx.cfg.K;

    Endomorphism sig_a = Endomorphism::create(ctx.one() + Fixture::pp(fx.cfg, 3),
                                              Fixture::pp(fx.cfg, 3), fx.ann);
    Endomorphism sig_b = Endomorphism::create(ctx.one() + Fixture::pp(fx.cfg, 4),
                                              Fixture::pp(fx.cfg, 4), fx.ann);
    Endomorphism shift = Endomorphism::create(ctx.one(), Fixture::pp(fx.cfg, 2), fx.ann);

    // (a) order-1 closed form against the triangular solve.
    std::vector<std::pair<Endomorphism, Endomorphism>> pairs = {
        {fx.qonly, fx.ident}, {shift, fx.ident}, {sig_a, sig_b}};
    for (const auto& [sigma, tau] : pairs) {
        TwistedOperator closed = deform_order1_closed(sigma, tau, fx.eta, order, fx.w);
        DeformationPlan plan = DeformationPlan::build(sigma, tau, fx.eta, order, fx.w);
        TwistedOperator solved =
            deform_operator(TwistedOperator::divided_power(1, sigma, fx.eta, fx.w), plan);
        for (int k = 0; k <= order && res.pass; ++k)
            if (!equal_at_precision(closed.coeff(k), solved.coeff(k))) {
                res.pass = false;
                res.detail = fail("closed form differs from triangular solve at k=" +
                                  std::to_string(k));
            }
        if (!res.pass) return res;
    }

    // (b) round trip sigma -> tau -> sigma on 50 random exact operators.
    SampleGenerator gen(fx.cfg, 5);
    DeformationPlan fwd = DeformationPlan::build(sig_a, fx.ident, fx.eta, order, fx.w);
    DeformationPlan bwd = DeformationPlan::build(fx.ident, sig_a, fx.eta, order, fx.w);
    for (int trial = 0; trial < 50 && res.pass; ++trial) {
        TwistedOperator phi = gen.operator_sample(sig_a, fx.eta, 15, -4, 4);
        TwistedOperator rt = deform_operator(deform_operator(phi, fwd), bwd);
        if (!operators_agree(phi, rt)) {
            res.pass = false;
            res.detail = fail("round trip escaped its certificate on trial " +
                              std::to_string(trial));
        }
    }
    if (!res.pass) return res;

    // (c) the deformed operator acts identically on monomials.
    DividedDerivatives eng_a(sig_a, fx.w, order);
    DividedDerivatives eng_id(fx.ident, fx.w, order);
    for (int trial = 0; trial < 5 && res.pass; ++trial) {
        TwistedOperator phi = gen.operator_sample(sig_a, fx.eta, 6, -3, 3);
        TwistedOperator def = deform_operator(phi, fwd);
        for (int n = -10; n <= 10 && res.pass; ++n) {
            LaurentElement xn = fx.mono(ctx.one(), n);
            if (!agrees_up_to_tails(op_apply(phi, xn, eng_a), op_apply(def, xn, eng_id))) {
                res.pass = false;
                res.detail = fail("actions differ on x^" + std::to_string(n));
            }
        }
    }
    if (res.pass)
        res.detail = "closed form, 50 round trips and monomial actions all within certificates";
    return res;
}

// 6. Confluence of the exponential connection G = c, c = p.
CriterionResult c6_confluence_exp(const Fixture& fx) {
    CriterionResult res{6, "confluence-exp", true, ""};
    const PadicContext& ctx = fx.ctx;
    int order = fx.cfg.K;
    Endomorphism sigma = fx.conf_sigma();
    LogNorm level = fx.conf_level();
    LogNorm eta_prime = fx.conf_eta_prime();

    PadicScalar c = ctx.integer(fx.cfg.p);
    ConnectionModule m = fx.rank1(LaurentElement::constant(c, fx.ann, fx.w), level);
    SigmaModule s = confluence_transform(m, sigma, order, eta_prime);

    LaurentElement gamma = -sigma.x_minus_sigma_x(fx.w);
    LaurentElement cg = gamma.scaled(c);
    LaurentElement oracle = fx.one_el();
    LaurentElement pow = fx.one_el();
    BigInt kfact = 1;
    Rational inv_p1(-1, fx.cfg.p - 1);
    for (int k = 1; k <= order; ++k) {
        pow *= cg;
        kfact *= k;
        LaurentElement term = pow.scaled(ctx.integer(kfact).inverse());
        oracle += term;
        // term valuations grow at least like 2k - k/(p-1)
        LogNorm limit = LogNorm::from_valuation(Rational(2 * k) + Rational(k) * inv_p1);
        if (term.gauss_norm() > limit) {
            res.pass = false;
            res.detail = fail("term valuation too small at k=" + std::to_string(k));
        }
    }
    if (res.pass && !(s.matrix().at(0, 0) - oracle).is_indistinguishable_from_zero()) {
        res.pass = false;
        res.detail = fail("transform differs from the truncated exponential series");
    }
    if (res.pass)
        res.detail = "matches exp(c((q-1)x+h)) through order " + std::to_string(order) +
                     ", valuation growth confirmed";
    return res;
}

// 7. Confluence of the power connection G = a/x.
CriterionResult c7_confluence_power(const Fixture& fx) {
    CriterionResult res{7, "confluence-power", true, ""};
    int order = fx.cfg.K;
    Endomorphism sigma = fx.conf_sigma();
    LogNorm level = fx.conf_level();
    LogNorm eta_prime = fx.conf_eta_prime();

    LaurentElement base = fx.mono(sigma.q(), 0) + fx.mono(sigma.h(), -1); // q + h/x
    for (int a = -3; a <= 5 && res.pass; ++a) {
        ConnectionModule m = fx.rank1(fx.mono(a, -1), level);
        SigmaModule s = confluence_transform(m, sigma, order, eta_prime);
        LaurentElement oracle = fx.one_el();
        for (int i = 0; i < std::abs(a); ++i) oracle *= base;
        if (a < 0) oracle = oracle.inverted(order);
        if (!agrees_up_to_tails(s.matrix().at(0, 0), oracle, s.tail())) {
            res.pass = false;
            res.detail = fail("multiplier differs from (q + h/x)^a at a=" + std::to_string(a));
        }
    }
    if (res.pass) res.detail = "multipliers match (q + h/x)^a for a in {-3..5}";
    return res;
}

// 8. Structure identity S - Id = (sigma(x)-x) D and semilinearity.
CriterionResult c8_structure(const Fixture& fx) {
    CriterionResult res{8, "structure-identity", true, ""};
    const PadicContext& ctx = fx.ctx;
    int order = fx.cfg.K;
    Endomorphism sigma = fx.conf_sigma();
    LogNorm level = fx.conf_level();
    LogNorm eta_prime = fx.conf_eta_prime();
    SampleGenerator gen(fx.cfg, 8);

    std::vector<std::pair<LaurentElement, std::vector<LaurentElement>>> samples1 = {
        {fx.mono(1, 1), {fx.one_el()}},
        {fx.one_el() + fx.mono(1, 2), {fx.mono(1, 1)}}};

    std::vector<ConnectionModule> mods;
    mods.push_back(fx.rank1(LaurentElement::constant(ctx.integer(fx.cfg.p), fx.ann, fx.w), level));
    mods.push_back(fx.rank1(fx.mono(2, -1), level));
    mods.push_back(fx.rank1(fx.mono(-3, -1), level));
    int done = 0;
    for (const auto& m : mods) {
        SigmaModule s = confluence_transform(m, sigma, order, eta_prime);
        StructureReport rep = sigma_structure_identity_check(m, s, sigma, order, samples1);
        if (!rep.identity_ok || !rep.semilinearity_ok) {
            res.pass = false;
            res.detail = fail("rank-1 case " + std::to_string(done) + ": " + rep.detail);
            return res;
        }
        ++done;
    }

    for (int trial = 0; trial < 10 && res.pass; ++trial) {
        // rank-2 polynomial connections scaled by p^2 so the decay
        // certificate passes
        std::vector<LaurentElement> entries;
        for (int e = 0; e < 4; ++e) entries.push_back(gen.element(0, 2, 2, 1).scaled(Fixture::pp(fx.cfg, 2)));
        ConnectionModule m(ElemMatrix(2, entries), fx.ident, level);
        SigmaModule s = confluence_transform(m, sigma, order, eta_prime);
        std::vector<std::pair<LaurentElement, std::vector<LaurentElement>>> samples2 = {
            {fx.mono(1, 1), {fx.one_el(), fx.zero_el()}},
            {fx.one_el() + fx.mono(1, 2), {fx.mono(1, 1), fx.one_el()}}};
        StructureReport rep = sigma_structure_identity_check(m, s, sigma, order, samples2);
        if (!rep.identity_ok || !rep.semilinearity_ok) {
            res.pass = false;
            res.detail = fail("rank-2 trial " + std::to_string(trial) + ": " + rep.detail);
        }
        ++done;
    }
    if (res.pass)
        res.detail = std::to_string(done) + " modules satisfy the identity and semilinearity";
    return res;
}

// 9. Operator algebra: associativity, norm submultiplicativity, q-rule.
CriterionResult c9_operator_algebra(const Fixture& fx) {
    CriterionResult res{9, "operator-algebra", true, ""};
    SampleGenerator gen(fx.cfg, 9);
    int cap = fx.cfg.K;
    // a coarser inverse truncation keeps the certified tails small enough
    // for every comparison below while bounding coefficient growth
    DividedDerivatives eng(fx.ref, fx.w, 10);

    for (int trial = 0; trial < 50 && res.pass; ++trial) {
        // mostly polynomial coefficients; every fifth triple reaches into
        // the inverse path through an x^(-1) term (at lower order, since
        // iterated inverse series widen quadratically under composition)
        bool neg = trial % 5 == 0;
        int lo = neg ? -1 : 0;
        int max_order = neg ? 3 : 6;
        TwistedOperator f = gen.operator_sample(fx.ref, fx.eta, max_order, lo, 3);
        TwistedOperator g = gen.operator_sample(fx.ref, fx.eta, max_order, lo, 3);
        TwistedOperator h = gen.operator_sample(fx.ref, fx.eta, max_order, lo, 3);
        TwistedOperator left = op_compose(op_compose(f, g, eng, cap), h, eng, cap);
        TwistedOperator right = op_compose(f, op_compose(g, h, eng, cap), eng, cap);
        if (!operators_agree(left, right)) {
            res.pass = false;
            res.detail = fail("associativity escaped tails on trial " + std::to_string(trial));
        }
        if (op_compose(f, g, eng, cap).norm() > f.norm() * g.norm()) {
            res.pass = false;
            res.detail = fail("norm submultiplicativity violated on trial " +
                              std::to_string(trial));
        }
    }
    if (!res.pass) return res;

    for (int k = 0; k <= 12 && res.pass; ++k) {
        for (int l = 0; k + l <= 12; ++l) {
            TwistedOperator dk = TwistedOperator::divided_power(k, fx.ref, fx.eta, fx.w);
            TwistedOperator dl = TwistedOperator::divided_power(l, fx.ref, fx.eta, fx.w);
            TwistedOperator comp = op_compose(dk, dl, eng, cap);
            TwistedOperator want = TwistedOperator::divided_power(k + l, fx.ref, fx.eta, fx.w)
                                       .scaled(qbinom(k + l, l, fx.ref.q()));
            if (!operators_agree(comp, want)) {
                res.pass = false;
                res.detail = fail("q-composition rule failed at k=" + std::to_string(k) +
                                  " l=" + std::to_string(l));
                break;
            }
            for (int n : {-3, -1, 0, 2, 5}) {
                LaurentElement xn = fx.mono(fx.ctx.one(), n);
                if (!agrees_up_to_tails(op_apply(comp, xn, eng), op_apply(want, xn, eng))) {
                    res.pass = false;
                    res.detail = fail("q-rule action mismatch at k=" + std::to_string(k) +
                                      " l=" + std::to_string(l) + " on x^" + std::to_string(n));
                    break;
                }
            }
            if (!res.pass) break;
        }
    }
    if (res.pass)
        res.detail = "50 associativity triples, submultiplicativity and the q-rule for k+l <= 12";
    return res;
}

// 10. x-radius monotonicity and the level comparison grid.
CriterionResult c10_radius(const Fixture& fx) {
    CriterionResult res{10, "radius-admissibility", true, ""};
    const PadicContext& ctx = fx.ctx;
    std::vector<Endomorphism> sigmas = {
        fx.ref, fx.qonly,
        Endomorphism::create(ctx.one(), Fixture::pp(fx.cfg, 2), fx.ann),
        Endomorphism::create(ctx.integer(fx.cfg.p), ctx.zero(), fx.ann)};
    for (const auto& s : sigmas)
        for (unsigned n = 0; n <= 10; ++n)
            if (s.iterate(n).x_radius() > s.x_radius()) {
                res.pass = false;
                res.detail = fail("x-radius grew under iteration at n=" + std::to_string(n));
                return res;
            }

    std::vector<PadicScalar> qs = {ctx.one(), ctx.one() + Fixture::pp(fx.cfg, 1),
                                   ctx.one() + Fixture::pp(fx.cfg, 2),
                                   ctx.one() + Fixture::pp(fx.cfg, 3), ctx.integer(2)};
    std::vector<PadicScalar> hs = {ctx.zero(), Fixture::pp(fx.cfg, 1), Fixture::pp(fx.cfg, 2),
                                   Fixture::pp(fx.cfg, 3), ctx.one()};
    std::vector<LogNorm> etas = {LogNorm::one(), LogNorm::from_valuation(1),
                                 LogNorm::from_valuation(Rational(3, 2)),
                                 LogNorm::from_valuation(2), LogNorm::from_valuation(3)};
    int grid = 0;
    for (const auto& q : qs)
        for (const auto& h : hs) {
            if (!Endomorphism::validate(q, h, fx.ann).admissible) continue;
            Endomorphism s = Endomorphism::create(q, h, fx.ann);
            for (const auto& e : etas) {
                EtaAdmissibility rep = s.eta_admissible(e);
                bool direct = e >= s.x_radius();
                bool components =
                    (fx.ctx.one() - q).norm() <= e / fx.ann.outer() && h.norm() <= e;
                if (rep.ok != direct || rep.ok != components) {
                    res.pass = false;
                    res.detail = fail("eta comparison grid mismatch");
                    return res;
                }
                ++grid;
            }
        }
    res.detail = "iterates contract for n <= 10; " + std::to_string(grid) +
                 " grid comparisons agree with the two inequalities";
    return res;
}

// 11. Logarithmic-derivative route against the confluence transform.
CriterionResult c11_log_derivative(const Fixture& fx) {
    CriterionResult res{11, "log-derivative", true, ""};
    const PadicContext& ctx = fx.ctx;
    int order = fx.cfg.K;
    PadicScalar q = Fixture::ref_q(fx.cfg);
    Endomorphism sigma = fx.qonly;
    LogNorm level = fx.conf_level();
    LogNorm eta_prime = fx.conf_eta_prime();

    std::vector<LaurentElement> gs = {fx.zero_el(),
                                      LaurentElement::constant(ctx.integer(fx.cfg.p), fx.ann, fx.w),
                                      fx.mono(2, -1)};
    for (const auto& g : gs) {
        ConnectionModule m = fx.rank1(g, level);
        SigmaModule via_log = log_derivative_form(m, q, order, eta_prime);
        SigmaModule via_conf = confluence_transform(m, sigma, order, eta_prime);
        LogNorm tol = max(via_log.tail(), via_conf.tail());
        if (!agrees_up_to_tails(via_log.matrix().at(0, 0), via_conf.matrix().at(0, 0), tol)) {
            res.pass = false;
            res.detail = fail("routes disagree for G = " + g.to_string());
            return res;
        }
    }

    // monomial identity: sum_k log(q)^k n^k / k! x^n = q^n x^n
    PadicScalar lq = padic_log(q);
    for (int n = 0; n <= 6 && res.pass; ++n) {
        PadicScalar acc = ctx.zero();
        PadicScalar pw = ctx.one();
        BigInt kfact = 1;
        for (int k = 0; k <= order; ++k) {
            if (k > 0) {
                pw = pw * lq * ctx.integer(n);
                kfact *= k;
            }
            acc += k == 0 ? ctx.one() : pw * ctx.integer(kfact).inverse();
        }
        if (!(acc == q.pow(n))) {
            res.pass = false;
            res.detail = fail("q^(x d/dx) monomial identity failed at n=" + std::to_string(n));
        }
    }
    if (res.pass) res.detail = "log route matches the confluence route on 3 rank-1 modules";
    return res;
}

// 12. Serialization round trips and deterministic reports.
CriterionResult c12_serialization(const Fixture& fx) {
    CriterionResult res{12, "serialization", true, ""};
    SampleGenerator gen(fx.cfg, 12);
    const PadicContext& ctx = fx.ctx;
    const Config& cfg = fx.cfg;

    auto roundtrip = [&](const Json& doc, auto reader, auto writer) {
        auto obj = reader(doc);
        Json again = writer(obj);
        return doc.dump() == again.dump();
    };

    // scalars, including reduced precision and negative valuation
    std::vector<PadicScalar> scalars = {
        ctx.zero(), ctx.one(), ctx.integer(-7), Fixture::pp(cfg, 3),
        PadicScalar::from_fraction(3, 7, cfg.p, cfg.N),
        ctx.integer(7) / Fixture::pp(cfg, 2),
        (ctx.one() + Fixture::pp(cfg, 2)) * Fixture::pp(cfg, 5).inverse(),
        PadicScalar::below_precision(17, cfg.p, cfg.N)};
    for (int i = 0; i < 10; ++i) scalars.push_back(gen.scalar(0, 5));
    for (const auto& s : scalars) {
        PadicScalar back = PadicScalar::parse(s.to_text(), cfg.p, cfg.N);
        if (!back.identical_to(s)) {
            res.pass = false;
            res.detail = fail("scalar text round trip failed for " + s.to_text());
            return res;
        }
    }

    LaurentElement f = gen.element(-6, 6, 5, 3).with_added_tail(LogNorm::from_valuation(Rational(31, 2)));
    if (!roundtrip(series_to_json(f), [&](const Json& j) { return series_from_json(j, cfg); },
                   [&](const LaurentElement& e) { return series_to_json(e); })) {
        res.pass = false;
        res.detail = fail("series document round trip failed");
        return res;
    }

    TwistedOperator op = gen.operator_sample(fx.ref, fx.eta, 6, -4, 4)
                             .with_added_tail(LogNorm::from_valuation(9));
    if (!roundtrip(operator_to_json(op), [&](const Json& j) { return operator_from_json(j, cfg); },
                   [&](const TwistedOperator& o) { return operator_to_json(o); })) {
        res.pass = false;
        res.detail = fail("operator document round trip failed");
        return res;
    }

    XiPolynomial poly = xi_expand(4, fx.ref, fx.eta, fx.w);
    if (!roundtrip(xipoly_to_json(poly), [&](const Json& j) { return xipoly_from_json(j, cfg); },
                   [&](const XiPolynomial& p) { return xipoly_to_json(p); })) {
        res.pass = false;
        res.detail = fail("xi-polynomial document round trip failed");
        return res;
    }
    XiPolynomial div = xi_to_divided(poly, fx.ref);
    if (!roundtrip(xipoly_to_json(div), [&](const Json& j) { return xipoly_from_json(j, cfg); },
                   [&](const XiPolynomial& p) { return xipoly_to_json(p); })) {
        res.pass = false;
        res.detail = fail("divided xi-polynomial round trip failed");
        return res;
    }

    ConnectionModule m = fx.rank1(fx.mono(2, -1), fx.conf_level());
    if (!roundtrip(connection_to_json(m, cfg.K),
                   [&](const Json& j) { return connection_from_json(j, cfg); },
                   [&](const ConnectionModule& c) { return connection_to_json(c, cfg.K); })) {
        res.pass = false;
        res.detail = fail("connection document round trip failed");
        return res;
    }
    SigmaModule s = confluence_transform(m, fx.conf_sigma(), cfg.K, fx.conf_eta_prime());
    if (!roundtrip(sigma_module_to_json(s, cfg.K),
                   [&](const Json& j) { return sigma_module_from_json(j, cfg); },
                   [&](const SigmaModule& x) { return sigma_module_to_json(x, cfg.K); })) {
        res.pass = false;
        res.detail = fail("sigma-module document round trip failed");
        return res;
    }

    Config cfg2 = Config::from_json_text(cfg.to_json_text());
    if (cfg.to_json_text() != cfg2.to_json_text()) {
        res.pass = false;
        res.detail = fail("config round trip failed");
        return res;
    }

    // deterministic reports: same config, same bytes
    std::string r1 = format_text_report(run_suite(cfg, "pascal"));
    std::string r2 = format_text_report(run_suite(cfg, "pascal"));
    if (r1 != r2) {
        res.pass = false;
        res.detail = fail("reports are not deterministic");
        return res;
    }

    res.detail = "all document types round-trip bit-exactly; reports deterministic";
    return res;
}

using CriterionFn = std::function<CriterionResult(const Fixture&)>;

const std::vector<std::pair<std::string, CriterionFn>>& criterion_table() {
    static const std::vector<std::pair<std::string, CriterionFn>> table = {
        {"pascal", c1_pascal},
        {"divided-power", c2_divided_power},
        {"schauder", c3_schauder},
        {"derivative-bound", c4_derivative_bound},
        {"deformation", c5_deformation},
        {"confluence-exp", c6_confluence_exp},
        {"confluence-power", c7_confluence_power},
        {"structure-identity", c8_structure},
        {"operator-algebra", c9_operator_algebra},
        {"radius-admissibility", c10_radius},
        {"log-derivative", c11_log_derivative},
        {"serialization", c12_serialization},
    };
    return table;
}

} // namespace

std::vector<std::string> available_suites() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : criterion_table()) names.push_back(name);
    names.push_back("all");
    return names;
}

std::vector<CriterionResult> run_suite(const Config& cfg, const std::string& suite) {
    cfg.validate();
    Fixture fx(cfg);
    std::vector<CriterionResult> out;
    bool found = false;
    int id = 0;
    for (const auto& [name, fn] : criterion_table()) {
        ++id;
        if (suite != "all" && suite != name) continue;
        found = true;
        try {
            out.push_back(fn(fx));
        } catch (const Error& e) {
            out.push_back(CriterionResult{id, name, false, std::string("error: ") + e.what()});
        }
    }
    if (!found) throw ParseError("unknown suite: " + suite);
    return out;
}

std::string format_text_report(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    int passed = 0;
    for (const auto& r : results) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name;
        if (!r.detail.empty()) os << ": " << r.detail;
        os << "\n";
        if (r.pass) ++passed;
    }
    os << passed << "/" << results.size() << " criteria passed\n";
    return os.str();
}

std::string format_json_report(const std::vector<CriterionResult>& results) {
    Json j = Json::array();
    int passed = 0;
    for (const auto& r : results) {
        j.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        if (r.pass) ++passed;
    }
    Json top;
    top["criteria"] = std::move(j);
    top["passed"] = passed;
    top["total"] = results.size();
    return top.dump(2);
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

} // namespace qweyl
