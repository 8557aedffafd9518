#pragma once

#include <array>
#include <string_view>

#include "qkd_dissipation/polarization.hpp"

namespace qkd {

enum class AttackScheme {
    /// Dissipation axis drawn uniformly from the four BB84 state directions.
    FourStateDissipation,
    /// Dissipation axis drawn uniformly from the two Breidbart directions pi/8, 5pi/8.
    BreidbartDissipation,
};

inline constexpr std::array<AttackScheme, 2> kAttackSchemes{AttackScheme::FourStateDissipation,
                                                           AttackScheme::BreidbartDissipation};

[[nodiscard]] std::string_view to_string(AttackScheme scheme) noexcept;

/// Closed-form quantities for one (scheme, alpha) pair. Intensities are in units of the
/// undisturbed pulse intensity; information is in bits per sifted key bit.
struct AnalyticProfile {
    AttackScheme scheme = AttackScheme::FourStateDissipation;
    double alpha = 1.0;
    double strong_intensity = 1.0;
    double weak_intensity = 1.0;
    double mean_intensity = 1.0;
    double strong_bias = 0.5;
    double weak_bias = 0.5;
    double qber = 0.0;
    double adversary_info = 0.0;
    double info_qber_ratio = 0.0;
};

struct BitIntensities {
    double strong;
    double weak;
    double mean;
};

struct ConditionalQber {
    double strong;
    double weak;
};

/// Closed interval of strong-bit bias values reachable by `scheme` for alpha in [0, 1].
struct BiasInterval {
    double lower;
    double upper;
};

[[nodiscard]] BiasInterval bias_interval(AttackScheme scheme) noexcept;

/// Mean arrival intensity of the strong-dissipation and weak-dissipation bit values, and of all
/// pulses. Throws DomainError if alpha is outside [0, 1].
[[nodiscard]] BitIntensities intensities(AttackScheme scheme, double alpha);

/// Probability that an arriving photon carries the strong-dissipation bit value.
[[nodiscard]] double strong_bit_bias(AttackScheme scheme, double alpha);

/// Sifted-key error rate induced by the attack; identical for both schemes.
[[nodiscard]] double qber(double alpha);

/// The error rate rebuilt from the scheme's own per-state sin^2 error kernel rather than from the
/// shared closed form. Used to check that both schemes really produce the same error rate.
[[nodiscard]] double scheme_qber_from_kernel(AttackScheme scheme, double alpha);

/// Breidbart scheme error rates conditioned on the transmitted bit being the strong or the weak
/// dissipation bit.
[[nodiscard]] ConditionalQber breidbart_conditional_qber(double alpha);

/// Inverse of strong_bit_bias. Inputs within 1e-12 outside the interval are clamped.
[[nodiscard]] double alpha_from_bias(AttackScheme scheme, double strong_bias);

/// Error rate expressed directly as a function of the strong-bit bias.
[[nodiscard]] double qber_from_bias(AttackScheme scheme, double strong_bias);

/// Inverse of qber(alpha) on eta in [0, 1/4].
[[nodiscard]] double alpha_from_qber(double eta);

/// Binary Shannon entropy in bits, with 0 log 0 = 0.
[[nodiscard]] double binary_entropy(double p);

/// 1 - binary_entropy(p), evaluated without cancellation near p = 1/2.
[[nodiscard]] double information_from_bias(double p);

/// Adversary information 1 - H(p_b), bits per sifted key bit.
[[nodiscard]] double adversary_information(AttackScheme scheme, double alpha);

/// adversary_information / qber. Near alpha = 1 both vanish and the analytic limit is returned.
[[nodiscard]] double info_qber_ratio(AttackScheme scheme, double alpha);

/// The alpha -> 1 limit of info_qber_ratio: 1/ln2 for four-state, 2/ln2 for Breidbart.
[[nodiscard]] double info_qber_ratio_limit(AttackScheme scheme) noexcept;

[[nodiscard]] AnalyticProfile profile(AttackScheme scheme, double alpha);

}  // namespace qkd
