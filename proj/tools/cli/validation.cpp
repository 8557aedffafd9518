#include "cli/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "qkd_dissipation/protocol.hpp"

namespace qkd::cli {

namespace {

CheckResult statistical_check(AttackScheme scheme, double alpha, std::string name,
                              double expected, const Estimate& observed, double sigma) {
    const double delta = std::abs(observed.value - expected);
    return {scheme,         alpha, std::move(name), expected, observed.value,
            observed.standard_error, delta <= sigma * observed.standard_error};
}

}  // namespace

double max_info_qber_ratio(AttackScheme scheme) {
    double best = 0.0;
    for (int i = 1; i <= 9999; ++i) {
        best = std::max(best, info_qber_ratio(scheme, i * 1e-4));
    }
    return best;
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    std::vector<CheckResult> results;
    for (AttackScheme scheme : kAttackSchemes) {
        for (double alpha : options.alphas) {
            SimulationConfig config;
            config.attack = scheme;
            config.alpha = alpha;
            config.pulses = options.pulses;
            config.seed = options.seed;
            config.max_threads = options.max_threads;
            const SimulationReport report = run_simulation(config);
            const AnalyticProfile expected = profile(scheme, alpha);
            const double k = options.sigma;

            results.push_back(statistical_check(scheme, alpha, "qber", expected.qber, report.qber(), k));
            results.push_back(statistical_check(scheme, alpha, "strong_bias", expected.strong_bias,
                                                report.strong_bias(), k));
            results.push_back(statistical_check(scheme, alpha, "transmission",
                                                expected.mean_intensity, report.transmission(), k));
            if (scheme == AttackScheme::BreidbartDissipation) {
                const ConditionalQber cond = breidbart_conditional_qber(alpha);
                results.push_back(statistical_check(scheme, alpha, "strong_qber", cond.strong,
                                                    report.strong_qber(), k));
                results.push_back(statistical_check(scheme, alpha, "weak_qber", cond.weak,
                                                    report.weak_qber(), k));
            }
            results.push_back(statistical_check(scheme, alpha, "alice_ones", 0.5,
                                                report.alice_ones_fraction(), k));
            results.push_back(statistical_check(scheme, alpha, "bob_ones", 0.5,
                                                report.bob_ones_fraction(), k));
        }
        const double worst = max_info_qber_ratio(scheme);
        results.push_back({scheme, std::nullopt, "info_qber_ratio_max", kInfoQberBound, worst, 0.0,
                           worst < kInfoQberBound});
    }
    return results;
}

void print_validation_table(std::ostream& out, const std::vector<CheckResult>& results,
                            double sigma) {
    char line[160];
    std::snprintf(line, sizeof line, "%-11s %-7s %-20s %12s %12s %12s %8s  %s\n", "scheme", "alpha",
                  "statistic", "expected", "observed", "std_err", "z", "result");
    out << line;
    std::size_t failures = 0;
    for (const auto& r : results) {
        char alpha[16] = "-";
        if (r.alpha) std::snprintf(alpha, sizeof alpha, "%g", *r.alpha);
        char z[16] = "-";
        if (r.standard_error > 0.0) {
            std::snprintf(z, sizeof z, "%.2f", (r.observed - r.expected) / r.standard_error);
        }
        std::snprintf(line, sizeof line, "%-11s %-7s %-20s %12.6f %12.6f %12.6f %8s  %s\n",
                      std::string(to_string(r.scheme)).c_str(), alpha, r.statistic.c_str(),
                      r.expected, r.observed, r.standard_error, z, r.passed ? "PASS" : "FAIL");
        out << line;
        failures += !r.passed;
    }
    out << (results.size() - failures) << "/" << results.size() << " checks passed (tolerance "
        << sigma << " standard errors)\n";
}

}  // namespace qkd::cli
