#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qweyl/convergence.hpp"
#include "qweyl/deformation.hpp"
#include "qweyl/qcomb.hpp"
#include "qweyl/verify.hpp"

using namespace qweyl;

namespace {

struct GlobalOpts {
    std::string config_path;
    std::string output_path;
    std::string format = "text";
    std::optional<unsigned long long> seed;

    Config config() const {
        Config cfg = config_path.empty() ? Config::reference() : Config::load(config_path);
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }
    bool json() const { return format == "json"; }
};

void emit(const GlobalOpts& g, const Json& doc, const std::string& text_form) {
    if (!g.output_path.empty()) {
        save_json_file(doc, g.output_path);
        std::cout << "wrote " << g.output_path << "\n";
        return;
    }
    if (g.json())
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text_form;
}

Endomorphism endo_from_flags(const Config& cfg, const std::string& q_text,
                             const std::string& h_text) {
    PadicScalar q = PadicScalar::parse(q_text, cfg.p, cfg.N);
    PadicScalar h = PadicScalar::parse(h_text, cfg.p, cfg.N);
    return Endomorphism::create(q, h, cfg.annulus());
}

int cmd_qbinom(const GlobalOpts& g, int n, int k, const std::string& q_text) {
    Config cfg = g.config();
    PadicScalar q = PadicScalar::parse(q_text, cfg.p, cfg.N);
    PadicScalar b = qbinom((unsigned)n, (unsigned)k, q);
    LogNorm bound = qbinom_norm_bound((unsigned)n, (unsigned)k, q.norm());
    Json j{{"value", b.to_text()},
           {"norm", b.norm().to_string()},
           {"norm_exact", b.norm_is_exact()},
           {"norm_bound", bound.to_string()}};
    std::ostringstream os;
    os << b.to_text() << "\n|value| = " << b.norm().to_string()
       << (b.norm_is_exact() ? "" : " (upper bound)") << ", certified bound "
       << bound.to_string() << "\n";
    emit(g, j, os.str());
    return 0;
}

int cmd_radius(const GlobalOpts& g, const std::string& file, const std::string& q_text,
               const std::string& h_text, int order) {
    Config cfg = g.config();
    if (order <= 0) order = cfg.K;
    LaurentElement z = series_from_json(load_json_file(file), cfg);
    Endomorphism sigma = endo_from_flags(cfg, q_text, h_text);
    DividedDerivatives engine(sigma, cfg.window, cfg.K);
    RadiusCertificate cert = radius_estimate(z, sigma, order, engine);
    EtaConvergenceReport conv = eta_convergent_check(z, sigma, cfg.eta(), order, engine);

    Json table = Json::array();
    for (int k = 0; k <= order; ++k)
        table.push_back({{"k", k},
                         {"derivative_norm", conv.derivative_norms[k].to_string()},
                         {"weighted", conv.weighted[k].to_string()}});
    Json j{{"radius_estimate", cert.radius.to_string()},
           {"witness_k", cert.witness_k},
           {"order", cert.order},
           {"exact", cert.exact},
           {"eta", cfg.eta().to_string()},
           {"eta_convergent_evidence", conv.verdict},
           {"annulus_bound_ok", conv.annulus_bound_ok},
           {"table", std::move(table)}};

    std::ostringstream os;
    os << "radius estimate (order " << cert.order << "): "
       << (cert.radius.is_infinite() ? "+infinity" : cert.radius.to_string());
    if (cert.witness_k > 0) os << "  [witness k = " << cert.witness_k << "]";
    if (!cert.exact) os << "  (bound only)";
    os << "\n|d^[k] z| eta^k at eta = " << cfg.eta().to_string() << ":\n";
    for (int k = 0; k <= order; ++k)
        os << "  k = " << k << ": |d^[k] z| = " << conv.derivative_norms[k].to_string()
           << ", weighted = " << conv.weighted[k].to_string() << "\n";
    os << "annulus bound " << (conv.annulus_bound_ok ? "holds" : "VIOLATED")
       << ", decay evidence " << (conv.verdict ? "yes" : "no") << "\n";
    emit(g, j, os.str());
    return conv.annulus_bound_ok ? 0 : 1;
}

int cmd_apply(const GlobalOpts& g, const std::string& op_file, const std::string& series_file) {
    Config cfg = g.config();
    TwistedOperator op = operator_from_json(load_json_file(op_file), cfg);
    LaurentElement z = series_from_json(load_json_file(series_file), cfg);
    DividedDerivatives engine(op.endo(), cfg.window, cfg.K);
    LaurentElement out = op_apply(op, z, engine);
    emit(g, series_to_json(out), out.to_string() + "\n");
    return 0;
}

int cmd_compose(const GlobalOpts& g, const std::string& f1, const std::string& f2) {
    Config cfg = g.config();
    TwistedOperator a = operator_from_json(load_json_file(f1), cfg);
    TwistedOperator b = operator_from_json(load_json_file(f2), cfg);
    DividedDerivatives engine(a.endo(), cfg.window, cfg.K);
    TwistedOperator c = op_compose(a, b, engine, cfg.K);
    std::ostringstream os;
    os << "order " << c.order() << ", |.|_eta = " << c.norm().to_string() << ", tail "
       << c.truncation_tail().to_string() << "\n";
    emit(g, operator_to_json(c), os.str());
    return 0;
}

int cmd_deform(const GlobalOpts& g, const std::string& op_file, const std::string& q_text,
               const std::string& h_text) {
    Config cfg = g.config();
    TwistedOperator op = operator_from_json(load_json_file(op_file), cfg);
    Endomorphism target = endo_from_flags(cfg, q_text, h_text);
    DeformationPlan plan =
        DeformationPlan::build(op.endo(), target, op.level(), cfg.K, cfg.window);
    TwistedOperator out = deform_operator(op, plan);
    std::ostringstream os;
    os << "input  |.|_eta = " << op.norm().to_string() << (op.norm_is_exact() ? "" : " (bound)")
       << "\n"
       << "output |.|_eta = " << out.norm().to_string() << (out.norm_is_exact() ? "" : " (bound)")
       << ", tail " << out.truncation_tail().to_string() << "\n";
    emit(g, operator_to_json(out), os.str());
    return 0;
}

int cmd_confluence(const GlobalOpts& g, const std::string& conn_file, const std::string& q_text,
                   const std::string& h_text, int order, const std::string& eta_prime_text) {
    Config cfg = g.config();
    if (order <= 0) order = cfg.K;
    ConnectionModule m = connection_from_json(load_json_file(conn_file), cfg);
    Endomorphism sigma = endo_from_flags(cfg, q_text, h_text);
    LogNorm eta_prime = eta_prime_text.empty()
                            ? cfg.eta_prime()
                            : LogNorm::from_valuation(-Rational::parse(eta_prime_text));
    SigmaModule s = confluence_transform(m, sigma, order, eta_prime);

    const PadicContext ctx = cfg.context();
    LaurentElement xel = LaurentElement::monomial(ctx.one(), 1, sigma.params(), cfg.window);
    std::vector<LaurentElement> e1;
    for (int i = 0; i < m.rank(); ++i)
        e1.push_back(i == 0 ? LaurentElement::one(sigma.params(), cfg.window, ctx)
                            : LaurentElement::zero(sigma.params(), cfg.window, ctx));
    std::vector<std::pair<LaurentElement, std::vector<LaurentElement>>> samples = {{xel, e1}};
    StructureReport structure = sigma_structure_identity_check(m, s, sigma, order, samples);

    std::ostringstream os;
    os << "multiplier of rank " << s.rank() << ", tail " << s.tail().to_string() << "\n"
       << "structure identity: " << (structure.identity_ok ? "ok" : "FAILED") << "\n"
       << "semilinearity:      " << (structure.semilinearity_ok ? "ok" : "FAILED") << "\n";
    emit(g, sigma_module_to_json(s, order), os.str());
    return structure.identity_ok && structure.semilinearity_ok ? 0 : 1;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
    Config cfg = g.config();
    std::vector<CriterionResult> results = run_suite(cfg, suite);
    std::string report =
        g.json() ? format_json_report(results) + "\n" : format_text_report(results);
    if (!g.output_path.empty()) {
        std::ofstream out(g.output_path);
        out << report;
        std::cout << "wrote " << g.output_path << "\n";
    } else {
        std::cout << report;
    }
    return all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"twisted differential operators over p-adic annuli"};
    app.set_help_flag("--help", "print usage"); // frees -h / --h for the shift parameter
    app.require_subcommand(1);

    GlobalOpts g;
    unsigned long long seed_flag = 0;
    app.add_option("--config", g.config_path, "configuration file (json)");
    auto* seed_opt = app.add_option("--seed", seed_flag, "override the config seed");
    app.add_option("--output", g.output_path, "write the produced document to this file");
    app.add_option("--format", g.format, "text|json")->check(CLI::IsMember({"text", "json"}));

    int arg_n = 0, arg_k = 0, arg_order = 0;
    std::string arg_q = "1", arg_h = "0", arg_file, arg_file2, arg_eta_prime, arg_suite;

    auto* qb = app.add_subcommand("qbinom", "quantum binomial coefficient and its norm");
    qb->add_option("n", arg_n)->required();
    qb->add_option("k", arg_k)->required();
    qb->add_option("q", arg_q)->required();

    auto* rad = app.add_subcommand("radius", "order-K radius certificate for a series");
    rad->add_option("series", arg_file)->required();
    rad->add_option("--q", arg_q, "endomorphism q (default 1)");
    rad->add_option("--h", arg_h, "endomorphism h (default 0)");
    rad->add_option("--K", arg_order, "certificate order (default config K)");

    auto* ap = app.add_subcommand("apply", "apply an operator file to a series file");
    ap->add_option("operator", arg_file)->required();
    ap->add_option("series", arg_file2)->required();

    auto* co = app.add_subcommand("compose", "compose two operator files");
    co->add_option("left", arg_file)->required();
    co->add_option("right", arg_file2)->required();

    auto* de = app.add_subcommand("deform", "rewrite an operator over another endomorphism");
    de->add_option("operator", arg_file)->required();
    de->add_option("--q", arg_q, "target endomorphism q")->required();
    de->add_option("--h", arg_h, "target endomorphism h (default 0)");

    auto* cf = app.add_subcommand("confluence", "turn a connection into a sigma-module");
    cf->add_option("connection", arg_file)->required();
    cf->add_option("--q", arg_q, "endomorphism q")->required();
    cf->add_option("--h", arg_h, "endomorphism h (default 0)");
    cf->add_option("--K", arg_order, "truncation order (default config K)");
    cf->add_option("--eta-prime", arg_eta_prime, "decay-certificate level (log_p, rational)");

    auto* ve = app.add_subcommand("verify", "run a named verification suite");
    ve->add_option("suite", arg_suite, "suite name or 'all'")->required();

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (seed_opt->count() > 0) g.seed = seed_flag;

    try {
        if (qb->parsed()) return cmd_qbinom(g, arg_n, arg_k, arg_q);
        if (rad->parsed()) return cmd_radius(g, arg_file, arg_q, arg_h, arg_order);
        if (ap->parsed()) return cmd_apply(g, arg_file, arg_file2);
        if (co->parsed()) return cmd_compose(g, arg_file, arg_file2);
        if (de->parsed()) return cmd_deform(g, arg_file, arg_q, arg_h);
        if (cf->parsed())
            return cmd_confluence(g, arg_file, arg_q, arg_h, arg_order, arg_eta_prime);
        if (ve->parsed()) return cmd_verify(g, arg_suite);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
