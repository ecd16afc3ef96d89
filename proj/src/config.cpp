#include "qweyl/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace qweyl {

namespace {

bool is_small_prime(long long p) {
    if (p < 2 || p > 97) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

void Config::validate() const {
    if (!is_small_prime(p)) throw Error("p must be a prime at most 97");
    if (N < 8) throw Error("precision N must be at least 8");
    if (K < 1) throw Error("truncation order K must be positive");
    if (window.lo > -K || window.hi < K)
        throw Error("window must contain [-K, K]");
    if (r1_log && *r1_log > r_log) throw Error("annulus requires r1 <= r");
    annulus(); // radius construction re-checks shape
}

std::string Config::to_json_text() const {
    nlohmann::json j;
    j["p"] = p;
    j["N"] = N;
    j["r_log"] = r_log.to_string();
    j["r1_log"] = r1_log ? nlohmann::json(r1_log->to_string()) : nlohmann::json(nullptr);
    j["window"] = {window.lo, window.hi};
    j["K"] = K;
    j["eta_log"] = eta_log.to_string();
    j["eta_prime_log"] =
        eta_prime_log ? nlohmann::json(eta_prime_log->to_string()) : nlohmann::json(nullptr);
    j["seed"] = seed;
    return j.dump(2);
}

Config Config::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad config json: ") + e.what());
    }
    Config cfg;
    try {
        if (j.contains("p")) cfg.p = j.at("p").get<long long>();
        if (j.contains("N")) cfg.N = j.at("N").get<int>();
        if (j.contains("r_log")) cfg.r_log = Rational::parse(j.at("r_log").get<std::string>());
        if (j.contains("r1_log")) {
            if (j.at("r1_log").is_null())
                cfg.r1_log.reset();
            else
                cfg.r1_log = Rational::parse(j.at("r1_log").get<std::string>());
        }
        if (j.contains("window")) {
            cfg.window.lo = j.at("window").at(0).get<int>();
            cfg.window.hi = j.at("window").at(1).get<int>();
        }
        if (j.contains("K")) cfg.K = j.at("K").get<int>();
        if (j.contains("eta_log")) cfg.eta_log = Rational::parse(j.at("eta_log").get<std::string>());
        if (j.contains("eta_prime_log") && !j.at("eta_prime_log").is_null())
            cfg.eta_prime_log = Rational::parse(j.at("eta_prime_log").get<std::string>());
        if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned long long>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad config field: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void Config::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write config file: " + path);
    out << to_json_text() << "\n";
}

} // namespace qweyl
