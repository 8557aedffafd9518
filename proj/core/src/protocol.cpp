#include "qkd_dissipation/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "qkd_dissipation/errors.hpp"

namespace qkd {

namespace {

constexpr std::array<double, 4> kFourStateAxes{0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};
constexpr std::array<int, 4> kFourStateStrongBits{0, 0, 1, 1};
constexpr std::array<double, 2> kBreidbartAxes{kPi / 8.0, 5.0 * kPi / 8.0};
constexpr std::array<int, 2> kBreidbartStrongBits{0, 1};

int coin(Rng& rng) noexcept { return static_cast<int>(rng() >> 63); }

Basis random_basis(Rng& rng) noexcept { return coin(rng) ? Basis::Diagonal : Basis::Rectilinear; }

bool bernoulli(Rng& rng, double p) noexcept { return uniform01(rng) < p; }

SimulationReport run_shard(const SimulationConfig& config, std::uint64_t shard_index) {
    Rng rng = shard_rng(config.seed, shard_index);
    const std::uint64_t first = shard_index * config.shard_size;
    const std::uint64_t count = std::min(config.shard_size, config.pulses - first);
    SimulationReport report;
    for (std::uint64_t i = 0; i < count; ++i) {
        report.record(simulate_pulse(config, rng));
    }
    return report;
}

}  // namespace

void ChannelModel::validate() const {
    if (!(system_transmission >= 0.0 && system_transmission <= 1.0)) {
        throw ConfigError("system transmission must lie in [0, 1], got " +
                          std::to_string(system_transmission));
    }
    if (!(system_qber >= 0.0 && system_qber <= 0.5)) {
        throw ConfigError("system qber must lie in [0, 0.5], got " + std::to_string(system_qber));
    }
}

void SimulationConfig::validate() const {
    if (pulses == 0) throw ConfigError("pulse count must be positive");
    if (shard_size == 0) throw ConfigError("shard size must be positive");
    if (attack && !alpha) throw ConfigError("alpha is required when an attack scheme is selected");
    if (!attack && alpha) throw ConfigError("alpha must not be given without an attack scheme");
    if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) {
        throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(*alpha));
    }
    channel.validate();
}

Rng shard_rng(std::uint64_t seed, std::uint64_t shard_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard_index),
                      static_cast<std::uint32_t>(shard_index >> 32)};
    return Rng(seq);
}

double uniform01(Rng& rng) noexcept { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::span<const double> eve_axes(AttackScheme scheme) noexcept {
    if (scheme == AttackScheme::FourStateDissipation) return kFourStateAxes;
    return kBreidbartAxes;
}

Estimate proportion(std::uint64_t successes, std::uint64_t trials) noexcept {
    if (trials == 0) return {};
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

void SimulationReport::record(const PulseRecord& pulse) {
    ++pulses_sent;
    AxisTally* axis = pulse.eve_axis ? &per_axis[static_cast<std::size_t>(pulse.eve_axis_index)]
                                     : nullptr;
    if (axis) ++axis->sent;
    if (!pulse.arrived) return;
    ++arrived_count;
    if (axis) ++axis->arrived;
    if (!pulse.sifted) return;

    const int bob = *pulse.bob_bit;
    const bool error = bob != pulse.alice_bit;
    ++sifted_count;
    error_count += error;
    alice_ones_count += pulse.alice_bit;
    bob_ones_count += bob;

    if (!axis) return;
    const bool strong = pulse.alice_bit == pulse.eve_strong_bit;
    ++axis->sifted;
    axis->strong += strong;
    axis->errors += error;
    strong_count += strong;
    eve_correct_count += pulse.eve_guess == pulse.alice_bit;
    bob_strong_count += bob == pulse.eve_strong_bit;
    (strong ? strong_error_count : weak_error_count) += error;
}

SimulationReport& SimulationReport::operator+=(const SimulationReport& other) {
    pulses_sent += other.pulses_sent;
    arrived_count += other.arrived_count;
    sifted_count += other.sifted_count;
    error_count += other.error_count;
    strong_count += other.strong_count;
    eve_correct_count += other.eve_correct_count;
    strong_error_count += other.strong_error_count;
    weak_error_count += other.weak_error_count;
    alice_ones_count += other.alice_ones_count;
    bob_ones_count += other.bob_ones_count;
    bob_strong_count += other.bob_strong_count;
    for (std::size_t i = 0; i < per_axis.size(); ++i) {
        per_axis[i].sent += other.per_axis[i].sent;
        per_axis[i].arrived += other.per_axis[i].arrived;
        per_axis[i].sifted += other.per_axis[i].sifted;
        per_axis[i].strong += other.per_axis[i].strong;
        per_axis[i].errors += other.per_axis[i].errors;
    }
    return *this;
}

Estimate SimulationReport::transmission() const noexcept {
    return proportion(arrived_count, pulses_sent);
}
Estimate SimulationReport::sift_rate() const noexcept {
    return proportion(sifted_count, arrived_count);
}
Estimate SimulationReport::qber() const noexcept { return proportion(error_count, sifted_count); }
Estimate SimulationReport::strong_bias() const noexcept {
    return proportion(strong_count, sifted_count);
}
Estimate SimulationReport::bob_strong_bias() const noexcept {
    return proportion(bob_strong_count, sifted_count);
}
Estimate SimulationReport::eve_accuracy() const noexcept {
    return proportion(eve_correct_count, sifted_count);
}
Estimate SimulationReport::strong_qber() const noexcept {
    return proportion(strong_error_count, strong_count);
}
Estimate SimulationReport::weak_qber() const noexcept {
    return proportion(weak_error_count, weak_count());
}
Estimate SimulationReport::alice_ones_fraction() const noexcept {
    return proportion(alice_ones_count, sifted_count);
}
Estimate SimulationReport::bob_ones_fraction() const noexcept {
    return proportion(bob_ones_count, sifted_count);
}

Estimate SimulationReport::eve_info() const {
    const Estimate bias = strong_bias();
    const double p = bias.value;
    // dI/dp = log2(p / (1 - p)); unbounded at the endpoints, where the estimate is degenerate.
    const double slope = (p > 0.0 && p < 1.0) ? std::abs(std::log2(p / (1.0 - p))) : 0.0;
    return {information_from_bias(p), slope * bias.standard_error};
}

Bb84State encode(int bit, Basis basis) {
    if (basis == Basis::Rectilinear) return bit ? Bb84State::vertical() : Bb84State::horizontal();
    return bit ? Bb84State::diagonal135() : Bb84State::diagonal45();
}

EveChoice eve_select(AttackScheme scheme, Rng& rng) {
    if (scheme == AttackScheme::FourStateDissipation) {
        const auto i = static_cast<std::size_t>(rng() >> 62);
        return {PolarizationAngle(kFourStateAxes[i]), kFourStateStrongBits[i], static_cast<int>(i)};
    }
    const auto i = static_cast<std::size_t>(rng() >> 63);
    return {PolarizationAngle(kBreidbartAxes[i]), kBreidbartStrongBits[i], static_cast<int>(i)};
}

std::optional<PolarizationAngle> transmit(const Bb84State& state,
                                          const std::optional<DissipationChannel>& eve,
                                          const ChannelModel& channel, Rng& rng) {
    PolarizationAngle angle = state.angle;
    if (eve) {
        const AttenuationOutcome outcome = dissipate(angle, *eve);
        if (!bernoulli(rng, outcome.survival_probability)) return std::nullopt;
        angle = outcome.output_angle;
    }
    if (!bernoulli(rng, channel.system_transmission)) return std::nullopt;
    return angle;
}

int bob_measure(PolarizationAngle angle, Basis basis, const ChannelModel& channel, Rng& rng) {
    // P(1) = sin^2 of the offset from the bit-0 state; exact 0 and 1 for aligned photons.
    const double p_one = measurement_error_probability(angle, encode(0, basis));
    int bit = bernoulli(rng, p_one) ? 1 : 0;
    if (bernoulli(rng, channel.system_qber)) bit ^= 1;
    return bit;
}

PulseRecord simulate_pulse(const SimulationConfig& config, Rng& rng) {
    PulseRecord pulse;
    pulse.alice_bit = coin(rng);
    pulse.alice_basis = random_basis(rng);

    std::optional<DissipationChannel> eve;
    if (config.attack) {
        const EveChoice choice = eve_select(*config.attack, rng);
        pulse.eve_axis = choice.axis;
        pulse.eve_axis_index = choice.axis_index;
        pulse.eve_strong_bit = choice.strong_bit;
        pulse.eve_guess = 1 - choice.strong_bit;
        eve = DissipationChannel{choice.axis, *config.alpha};
    }

    const auto arrival =
        transmit(encode(pulse.alice_bit, pulse.alice_basis), eve, config.channel, rng);
    pulse.bob_basis = random_basis(rng);
    if (arrival) {
        pulse.arrived = true;
        pulse.bob_bit = bob_measure(*arrival, pulse.bob_basis, config.channel, rng);
        pulse.sifted = pulse.bob_basis == pulse.alice_basis;
    }
    return pulse;
}

SimulationReport run_simulation(const SimulationConfig& config) {
    config.validate();

    const std::uint64_t shards = (config.pulses + config.shard_size - 1) / config.shard_size;
    unsigned threads = config.max_threads ? config.max_threads : std::thread::hardware_concurrency();
    threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, shards));

    std::vector<SimulationReport> partial(shards);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t s = next++; s < shards; s = next++) partial[s] = run_shard(config, s);
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SimulationReport total;
    for (const auto& r : partial) total += r;
    return total;
}

}  // namespace qkd
