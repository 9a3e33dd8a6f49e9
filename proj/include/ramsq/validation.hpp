// Self-check suite: closed-form identities on a parameter grid plus Monte
// Carlo oracle agreement. Backs the `validate` subcommand.

#pragma once

#include "ramsq/ensemble.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ramsq {

struct ParameterGrid {
    std::vector<double> thickness{2.0, 5.0, 10.0, 20.0};
    std::vector<double> gain{0.0, 0.5, 1.0, 2.0, 2.5, 3.0};
    std::vector<double> squeeze{0.0, 0.5, 1.0, 1.5, 2.0};
};

enum class CheckStatus { Pass, Warning, Fail };
const char* to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double metric = 0.0;     // worst error, or worst sigma distance for oracle checks
    double threshold = 0.0;  // pass bound for `metric`
    std::string unit;        // "abs", "sigma" or "count"
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 42;
    std::size_t realizations = 10000;
    int channels = 4;
    std::vector<SamplerMode> samplers{SamplerMode::MeanMagnitudes,
                                      SamplerMode::ExponentialMagnitudes};
    unsigned workers = 0;
    // Test hook: perturbs V by 1e-6 before the flux identity check.
    bool corrupt_flux = false;
};

// Oracle checks pass at <= 3 sigma, warn up to 4 sigma, fail beyond.
inline constexpr double kOraclePassSigma = 3.0;
inline constexpr double kOracleFailSigma = 4.0;
// Below this many realizations the oracle checks only warn.
inline constexpr std::size_t kMinPreciseRealizations = 1000;

struct ValidationReport {
    std::vector<CheckResult> checks;
    CheckStatus overall = CheckStatus::Pass;
    std::vector<std::string> warnings;

    bool passed() const { return overall != CheckStatus::Fail; }
    const CheckResult* find(const std::string& name) const;
};

ValidationReport run_validation(const ValidationOptions& options,
                                const ParameterGrid& grid = {});

}  // namespace ramsq
