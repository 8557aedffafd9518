#pragma once

#include <array>
#include <optional>

#include "qkd_dissipation/analytics.hpp"

namespace qkd {

inline constexpr double kStandardFiberDbPerKm = 0.2;

/// A legitimate system's error and loss budget that the adversary wants to hide behind.
struct FeasibilityQuery {
    /// Intrinsic QBER, in (0, 0.25].
    double system_qber = 0.0;
    /// Intrinsic loss in dB; when absent, only the error budget is considered.
    std::optional<double> system_loss_db;
    double fiber_attenuation_db_per_km = kStandardFiberDbPerKm;
};

struct SchemeLeakage {
    AttackScheme scheme;
    double strong_bias;
    double adversary_info;
};

struct FeasibilityReport {
    double alpha_max = 1.0;
    /// Loss caused by the mean transmission (1 + alpha) / 2.
    double induced_loss_db = 0.0;
    double equivalent_fiber_km = 0.0;
    /// Indexed like kAttackSchemes.
    std::array<SchemeLeakage, 2> leakage{};
    /// Transmission the adversary's replacement channel must reach so that total loss matches
    /// the system's loss. Present iff a loss budget was given; above 1 when infeasible.
    std::optional<double> required_superchannel_transmission;
    bool feasible = true;
};

/// Loss in dB of a channel with the given transmission.
[[nodiscard]] double loss_db(double transmission);

/// Largest hideable dissipation ratio and its consequences.
/// Throws DomainError when the query is outside the model's range.
[[nodiscard]] FeasibilityReport plan(const FeasibilityQuery& query);

}  // namespace qkd
