#pragma once

#include <random>
#include <string>
#include <vector>

#include "qweyl/serialize.hpp"

namespace qweyl {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Deterministic sample factory; every draw is a pure function of the
/// config seed and the salt, so reports are reproducible byte for byte.
class SampleGenerator {
public:
    SampleGenerator(const Config& cfg, unsigned long long salt)
        : cfg_(cfg), rng_(cfg.seed ^ (salt * 0x9e3779b97f4a7c15ULL)) {}

    long long pick(long long lo, long long hi);
    /// Exact nonzero scalar p^v * u with v in [min_val, max_val].
    PadicScalar scalar(int min_val, int max_val);
    PadicScalar unit();
    /// Exact Laurent polynomial with the given support range and term count.
    LaurentElement element(int lo, int hi, int terms, int max_val);
    /// Exact operator of order <= max_order with polynomial coefficients.
    TwistedOperator operator_sample(const Endomorphism& endo, const LogNorm& level, int max_order,
                                    int coeff_lo, int coeff_hi);

private:
    Config cfg_;
    std::mt19937_64 rng_;
};

std::vector<std::string> available_suites();

/// Runs one named suite ("pascal", "divided-power", ..., "all"); throws
/// ParseError on an unknown name.
std::vector<CriterionResult> run_suite(const Config& cfg, const std::string& suite);

std::string format_text_report(const std::vector<CriterionResult>& results);
std::string format_json_report(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace qweyl
