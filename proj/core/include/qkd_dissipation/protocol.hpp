#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "qkd_dissipation/analytics.hpp"
#include "qkd_dissipation/polarization.hpp"

namespace qkd {

/// The legitimate system's own imperfections, independent of any attack.
struct ChannelModel {
    /// Per-photon survival probability of the intrinsic channel.
    double system_transmission = 1.0;
    /// Probability that a measured bit is flipped after detection.
    double system_qber = 0.0;

    void validate() const;
};

inline constexpr std::uint64_t kDefaultShardSize = 1u << 16;

struct SimulationConfig {
    /// Absent for a run without an eavesdropper.
    std::optional<AttackScheme> attack;
    /// Required iff `attack` is set.
    std::optional<double> alpha;
    std::uint64_t pulses = 0;
    std::uint64_t seed = 0;
    ChannelModel channel;
    /// Pulses per independently seeded shard. Part of the experiment definition: changing it
    /// changes the random stream, changing the thread count does not.
    std::uint64_t shard_size = kDefaultShardSize;
    /// Upper bound on worker threads; 0 selects the hardware concurrency.
    unsigned max_threads = 0;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;
};

using Rng = std::mt19937_64;

/// Generator for shard `shard_index` of a run seeded with `seed`.
[[nodiscard]] Rng shard_rng(std::uint64_t seed, std::uint64_t shard_index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
[[nodiscard]] double uniform01(Rng& rng) noexcept;

struct EveChoice {
    PolarizationAngle axis;
    /// Bit value whose encoding states are attenuated most by `axis`.
    int strong_bit = 0;
    /// Position of `axis` in the scheme's axis list (see eve_axes).
    int axis_index = 0;
};

/// Candidate dissipation axes of a scheme, in draw order.
[[nodiscard]] std::span<const double> eve_axes(AttackScheme scheme) noexcept;

struct PulseRecord {
    int alice_bit = 0;
    Basis alice_basis = Basis::Rectilinear;
    std::optional<PolarizationAngle> eve_axis;
    int eve_axis_index = 0;
    int eve_strong_bit = 0;
    /// Maximum-likelihood guess: the weak-dissipation bit of the chosen axis.
    int eve_guess = 0;
    bool arrived = false;
    Basis bob_basis = Basis::Rectilinear;
    std::optional<int> bob_bit;
    bool sifted = false;
};

struct Estimate {
    double value = 0.0;
    double standard_error = 0.0;
};

/// Sifted-key tallies restricted to pulses attacked along one axis.
struct AxisTally {
    std::uint64_t sent = 0;
    std::uint64_t arrived = 0;
    std::uint64_t sifted = 0;
    std::uint64_t strong = 0;
    std::uint64_t errors = 0;

    friend bool operator==(const AxisTally&, const AxisTally&) = default;
};

/// Aggregated counts of a simulation run. Every estimate is derived from the counts, so merging
/// two reports of disjoint pulse sets is plain addition.
struct SimulationReport {
    std::uint64_t pulses_sent = 0;
    std::uint64_t arrived_count = 0;
    std::uint64_t sifted_count = 0;
    /// Sifted bits where Bob's bit differs from Alice's.
    std::uint64_t error_count = 0;
    /// Sifted bits where Alice's bit equals Eve's strong bit.
    std::uint64_t strong_count = 0;
    /// Sifted bits where Eve's guess equals Alice's bit.
    std::uint64_t eve_correct_count = 0;
    /// Errors among the sifted bits counted in strong_count.
    std::uint64_t strong_error_count = 0;
    /// Errors among the remaining (weak) sifted bits.
    std::uint64_t weak_error_count = 0;
    std::uint64_t alice_ones_count = 0;
    std::uint64_t bob_ones_count = 0;
    /// Bob-side variant of strong_count: sifted bits where Bob's bit equals Eve's strong bit.
    std::uint64_t bob_strong_count = 0;
    std::array<AxisTally, 4> per_axis{};

    void record(const PulseRecord& pulse);
    SimulationReport& operator+=(const SimulationReport& other);

    [[nodiscard]] std::uint64_t weak_count() const noexcept { return sifted_count - strong_count; }

    [[nodiscard]] Estimate transmission() const noexcept;
    [[nodiscard]] Estimate sift_rate() const noexcept;
    [[nodiscard]] Estimate qber() const noexcept;
    [[nodiscard]] Estimate strong_bias() const noexcept;
    [[nodiscard]] Estimate bob_strong_bias() const noexcept;
    [[nodiscard]] Estimate eve_accuracy() const noexcept;
    /// 1 - H(strong_bias); standard error by the delta method.
    [[nodiscard]] Estimate eve_info() const;
    [[nodiscard]] Estimate strong_qber() const noexcept;
    [[nodiscard]] Estimate weak_qber() const noexcept;
    [[nodiscard]] Estimate alice_ones_fraction() const noexcept;
    [[nodiscard]] Estimate bob_ones_fraction() const noexcept;

    friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Binomial proportion estimate successes / trials with standard error sqrt(p(1-p)/n).
/// Zero trials give a zero estimate with zero error.
[[nodiscard]] Estimate proportion(std::uint64_t successes, std::uint64_t trials) noexcept;

[[nodiscard]] Bb84State encode(int bit, Basis basis);

/// Draws the adversary's dissipation axis for one pulse.
[[nodiscard]] EveChoice eve_select(AttackScheme scheme, Rng& rng);

/// Sends one photon through the optional adversary channel and then the system channel.
/// Returns the polarization on arrival, or nothing if the photon was lost.
[[nodiscard]] std::optional<PolarizationAngle> transmit(const Bb84State& state,
                                                        const std::optional<DissipationChannel>& eve,
                                                        const ChannelModel& channel, Rng& rng);

/// Projective measurement in `basis` followed by the system's bit-flip noise.
[[nodiscard]] int bob_measure(PolarizationAngle angle, Basis basis, const ChannelModel& channel,
                              Rng& rng);

/// Runs one complete pulse (Alice, Eve, channel, Bob, sifting). `config` must be valid.
[[nodiscard]] PulseRecord simulate_pulse(const SimulationConfig& config, Rng& rng);

/// Runs the full Monte-Carlo. Pulses are processed in fixed-size shards, each seeded from
/// (seed, shard index), so the report is identical for any thread count.
/// Throws ConfigError for an invalid configuration.
[[nodiscard]] SimulationReport run_simulation(const SimulationConfig& config);

}  // namespace qkd
