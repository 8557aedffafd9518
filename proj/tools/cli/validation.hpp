#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qkd_dissipation/analytics.hpp"

namespace qkd::cli {

struct ValidationOptions {
    std::uint64_t pulses = 1'000'000;
    std::uint64_t seed = 42;
    std::vector<double> alphas{0.1, 0.25, 0.5, 0.9};
    /// Allowed deviation in standard errors.
    double sigma = 4.0;
    unsigned max_threads = 0;
};

struct CheckResult {
    AttackScheme scheme;
    /// Absent for checks that do not depend on a single alpha (the information/QBER bound).
    std::optional<double> alpha;
    std::string statistic;
    double expected = 0.0;
    double observed = 0.0;
    double standard_error = 0.0;
    bool passed = false;
};

/// Upper bound that the adversary-information to QBER ratio must stay below.
inline constexpr double kInfoQberBound = 2.9;

/// Maximum of info_qber_ratio over alpha in [1e-4, 1 - 1e-4] with step 1e-4.
double max_info_qber_ratio(AttackScheme scheme);

/// Simulates every (scheme, alpha) pair on an ideal channel and compares the empirical
/// statistics with the closed forms, then checks the information/QBER bound.
std::vector<CheckResult> run_validation(const ValidationOptions& options);

void print_validation_table(std::ostream& out, const std::vector<CheckResult>& results,
                            double sigma);

}  // namespace qkd::cli
