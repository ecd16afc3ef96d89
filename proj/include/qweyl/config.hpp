#pragma once

#include <optional>
#include <string>

#include "qweyl/annulus.hpp"

namespace qweyl {

/// Global run configuration: the working prime and precision, the annulus
/// (radii as base-p logarithms of magnitudes), the coefficient window,
/// the truncation order K, the operator level eta, and the seed driving
/// every randomized suite.
struct Config {
    long long p = 5;
    int N = 40;
    Rational r_log{0};                    // r = p^r_log
    std::optional<Rational> r1_log{Rational(-1)}; // absent: disk
    Window window{-40, 40};
    int K = 30;
    Rational eta_log{-2};                 // eta = p^eta_log
    std::optional<Rational> eta_prime_log;
    unsigned long long seed = 20260809;

    static Config reference() { return Config{}; }

    PadicContext context() const { return PadicContext{p, N}; }
    AnnulusParams annulus() const {
        LogNorm outer = LogNorm::from_valuation(-r_log);
        if (!r1_log) return AnnulusParams::disk(outer);
        return AnnulusParams::annulus(LogNorm::from_valuation(-*r1_log), outer);
    }
    LogNorm eta() const { return LogNorm::from_valuation(-eta_log); }
    /// eta' for decay certificates; defaults to eta * p^(-1/4).
    LogNorm eta_prime() const {
        if (eta_prime_log) return LogNorm::from_valuation(-*eta_prime_log);
        return LogNorm::from_valuation(-eta_log + Rational(1, 4));
    }

    /// Throws Error on an unusable configuration (p not a small prime,
    /// N < 8, window not containing [-K, K], radii out of order).
    void validate() const;

    std::string to_json_text() const;
    static Config from_json_text(const std::string& text);
    static Config load(const std::string& path);
    void save(const std::string& path) const;
};

} // namespace qweyl
