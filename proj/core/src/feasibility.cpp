#include "qkd_dissipation/feasibility.hpp"

#include <cmath>
#include <string>

#include "qkd_dissipation/errors.hpp"

namespace qkd {

double loss_db(double transmission) { return -10.0 * std::log10(transmission); }

FeasibilityReport plan(const FeasibilityQuery& query) {
    if (!(query.system_qber > 0.0 && query.system_qber <= 0.25)) {
        throw DomainError("system QBER must lie in (0, 0.25], got " +
                          std::to_string(query.system_qber) +
                          "; dissipation alone cannot induce more than 25% errors");
    }
    if (query.system_loss_db && !(*query.system_loss_db >= 0.0)) {
        throw DomainError("system loss must be non-negative, got " +
                          std::to_string(*query.system_loss_db) + " dB");
    }
    if (!(query.fiber_attenuation_db_per_km > 0.0) || !std::isfinite(query.fiber_attenuation_db_per_km)) {
        throw DomainError("fiber attenuation must be positive, got " +
                          std::to_string(query.fiber_attenuation_db_per_km) + " dB/km");
    }

    FeasibilityReport report;
    report.alpha_max = alpha_from_qber(query.system_qber);
    report.induced_loss_db = loss_db(intensities(AttackScheme::FourStateDissipation, report.alpha_max).mean);
    // -0.0 for alpha = 1 reads oddly in reports
    if (report.induced_loss_db == 0.0) report.induced_loss_db = 0.0;
    report.equivalent_fiber_km = report.induced_loss_db / query.fiber_attenuation_db_per_km;
    for (std::size_t i = 0; i < kAttackSchemes.size(); ++i) {
        const AttackScheme scheme = kAttackSchemes[i];
        const double bias = strong_bit_bias(scheme, report.alpha_max);
        report.leakage[i] = {scheme, bias, information_from_bias(bias)};
    }
    if (query.system_loss_db) {
        report.feasible = report.induced_loss_db <= *query.system_loss_db;
        report.required_superchannel_transmission =
            std::pow(10.0, -(*query.system_loss_db - report.induced_loss_db) / 10.0);
    }
    return report;
}

}  // namespace qkd
