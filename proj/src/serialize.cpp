#include "qweyl/serialize.hpp"

#include <fstream>
#include <sstream>

namespace qweyl {

namespace {

std::string require_string(const Json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_string())
        throw ParseError(std::string("missing or non-string field: ") + field);
    return j.at(field).get<std::string>();
}

void require_type(const Json& j, const char* type) {
    if (!j.contains("type") || j.at("type") != type)
        throw ParseError(std::string("document is not of type ") + type);
}

} // namespace

Json lognorm_to_log_field(const LogNorm& n) {
    if (n.is_zero()) return nullptr;
    if (n.is_infinite()) throw Error("an infinite magnitude has no log field");
    return (-n.valuation()).to_string();
}

LogNorm lognorm_from_log_field(const Json& j) {
    if (j.is_null()) return LogNorm::zero();
    if (!j.is_string()) throw ParseError("log field must be rational text or null");
    return LogNorm::from_valuation(-Rational::parse(j.get<std::string>()));
}

Json params_to_json(const AnnulusParams& params) {
    Json j;
    j["r_log"] = lognorm_to_log_field(params.outer());
    j["r1_log"] = params.is_disk() ? Json(nullptr) : lognorm_to_log_field(params.inner());
    return j;
}

AnnulusParams params_from_json(const Json& j) {
    LogNorm outer = lognorm_from_log_field(j.at("r_log"));
    if (!j.contains("r1_log") || j.at("r1_log").is_null()) return AnnulusParams::disk(outer);
    return AnnulusParams::annulus(lognorm_from_log_field(j.at("r1_log")), outer);
}

Json series_to_json(const LaurentElement& f) {
    Json j;
    j["type"] = "series";
    j["params"] = params_to_json(f.params());
    Json coeffs = Json::object();
    for (const auto& [n, c] : f.coeffs()) coeffs[std::to_string(n)] = c.to_text();
    j["coeffs"] = std::move(coeffs);
    j["tail_log"] = lognorm_to_log_field(f.tail_bound());
    return j;
}

LaurentElement series_from_json(const Json& j, const Config& cfg) {
    require_type(j, "series");
    AnnulusParams params = params_from_json(j.at("params"));
    LaurentElement f(params, cfg.window, cfg.context());
    if (j.contains("coeffs")) {
        for (auto it = j.at("coeffs").begin(); it != j.at("coeffs").end(); ++it) {
            int n = 0;
            try {
                n = std::stoi(it.key());
            } catch (const std::exception&) {
                throw ParseError("bad exponent key: " + it.key());
            }
            if (!cfg.window.contains(n))
                throw ParseError("exponent " + it.key() + " outside the configured window");
            PadicScalar c = PadicScalar::parse(it.value().get<std::string>(), cfg.p, cfg.N);
            f += LaurentElement::monomial(c, n, params, cfg.window);
        }
    }
    LogNorm tail = lognorm_from_log_field(j.value("tail_log", Json(nullptr)));
    return tail.is_zero() ? f : f.with_added_tail(tail);
}

Json endo_to_json(const Endomorphism& endo) {
    Json j;
    j["q"] = endo.q().to_text();
    j["h"] = endo.h().to_text();
    return j;
}

Endomorphism endo_from_json(const Json& j, const AnnulusParams& params, const Config& cfg) {
    PadicScalar q = PadicScalar::parse(require_string(j, "q"), cfg.p, cfg.N);
    PadicScalar h = PadicScalar::parse(require_string(j, "h"), cfg.p, cfg.N);
    return Endomorphism::create(q, h, params);
}

Json operator_to_json(const TwistedOperator& op) {
    Json j;
    j["type"] = "operator";
    j["endo"] = endo_to_json(op.endo());
    j["params"] = params_to_json(op.endo().params());
    j["eta_log"] = lognorm_to_log_field(op.level());
    Json coeffs = Json::array();
    for (const auto& c : op.coeffs()) coeffs.push_back(series_to_json(c));
    j["coeffs"] = std::move(coeffs);
    j["tail_log"] = lognorm_to_log_field(op.truncation_tail());
    return j;
}

TwistedOperator operator_from_json(const Json& j, const Config& cfg) {
    require_type(j, "operator");
    AnnulusParams params = params_from_json(j.at("params"));
    Endomorphism endo = endo_from_json(j.at("endo"), params, cfg);
    LogNorm level = lognorm_from_log_field(j.at("eta_log"));
    std::vector<LaurentElement> coeffs;
    for (const auto& cj : j.at("coeffs")) coeffs.push_back(series_from_json(cj, cfg));
    if (coeffs.empty())
        coeffs.push_back(LaurentElement::zero(params, cfg.window, cfg.context()));
    LogNorm tail = lognorm_from_log_field(j.value("tail_log", Json(nullptr)));
    return TwistedOperator(endo, level, std::move(coeffs), tail);
}

Json xipoly_to_json(const XiPolynomial& poly) {
    Json j;
    j["type"] = "xi_polynomial";
    j["basis"] = poly.basis() == XiBasis::Monomial ? "monomial" : "divided";
    j["endo"] = poly.basis() == XiBasis::Divided ? endo_to_json(poly.endo()) : Json(nullptr);
    j["params"] = params_to_json(poly.coeff(0).params());
    j["eta_log"] = lognorm_to_log_field(poly.level());
    Json coeffs = Json::array();
    for (const auto& c : poly.coeffs()) coeffs.push_back(series_to_json(c));
    j["coeffs"] = std::move(coeffs);
    return j;
}

XiPolynomial xipoly_from_json(const Json& j, const Config& cfg) {
    require_type(j, "xi_polynomial");
    AnnulusParams params = params_from_json(j.at("params"));
    LogNorm level = lognorm_from_log_field(j.at("eta_log"));
    std::string basis_text = require_string(j, "basis");
    XiBasis basis;
    if (basis_text == "monomial")
        basis = XiBasis::Monomial;
    else if (basis_text == "divided")
        basis = XiBasis::Divided;
    else
        throw ParseError("unknown basis: " + basis_text);
    std::vector<LaurentElement> coeffs;
    for (const auto& cj : j.at("coeffs")) coeffs.push_back(series_from_json(cj, cfg));
    if (coeffs.empty())
        coeffs.push_back(LaurentElement::zero(params, cfg.window, cfg.context()));
    std::optional<Endomorphism> endo;
    if (basis == XiBasis::Divided) endo = endo_from_json(j.at("endo"), params, cfg);
    return XiPolynomial(std::move(coeffs), basis, level, endo);
}

namespace {

Json matrix_to_json(const ElemMatrix& m) {
    Json rows = Json::array();
    for (const auto& e : m.entries()) rows.push_back(series_to_json(e));
    return rows;
}

ElemMatrix matrix_from_json(const Json& j, int rank, const Config& cfg) {
    std::vector<LaurentElement> entries;
    for (const auto& ej : j) entries.push_back(series_from_json(ej, cfg));
    if ((int)entries.size() != rank * rank)
        throw ParseError("matrix entry count does not match rank");
    return ElemMatrix(rank, std::move(entries));
}

} // namespace

Json connection_to_json(const ConnectionModule& m, int order_k) {
    Json j;
    j["type"] = "connection";
    j["rank"] = m.rank();
    j["matrix"] = matrix_to_json(m.matrix());
    j["endo"] = endo_to_json(m.endo());
    j["params"] = params_to_json(m.endo().params());
    j["eta_log"] = lognorm_to_log_field(m.level());
    j["order_K"] = order_k;
    j["tail_log"] = nullptr;
    return j;
}

ConnectionModule connection_from_json(const Json& j, const Config& cfg) {
    require_type(j, "connection");
    AnnulusParams params = params_from_json(j.at("params"));
    int rank = j.at("rank").get<int>();
    ElemMatrix g = matrix_from_json(j.at("matrix"), rank, cfg);
    Endomorphism endo = endo_from_json(j.at("endo"), params, cfg);
    LogNorm level = lognorm_from_log_field(j.at("eta_log"));
    return ConnectionModule(std::move(g), std::move(endo), level);
}

Json sigma_module_to_json(const SigmaModule& s, int order_k) {
    Json j;
    j["type"] = "sigma_module";
    j["rank"] = s.rank();
    j["matrix"] = matrix_to_json(s.matrix());
    j["endo"] = endo_to_json(s.endo());
    j["params"] = params_to_json(s.endo().params());
    j["order_K"] = order_k;
    j["tail_log"] = lognorm_to_log_field(s.tail());
    return j;
}

SigmaModule sigma_module_from_json(const Json& j, const Config& cfg) {
    require_type(j, "sigma_module");
    AnnulusParams params = params_from_json(j.at("params"));
    int rank = j.at("rank").get<int>();
    ElemMatrix s = matrix_from_json(j.at("matrix"), rank, cfg);
    Endomorphism endo = endo_from_json(j.at("endo"), params, cfg);
    LogNorm tail = lognorm_from_log_field(j.value("tail_log", Json(nullptr)));
    return SigmaModule(std::move(s), std::move(endo), tail);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError("bad json in " + path + ": " + e.what());
    }
}

void save_json_file(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace qweyl
