#include "qkd_dissipation/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qkd_dissipation/errors.hpp"

namespace qkd {

namespace {

double normalize(double radians) {
    double r = std::fmod(radians, kPi);
    if (r < 0.0) r += kPi;
    // fmod of a value just below a multiple of pi can round up to pi itself
    if (r >= kPi) r = 0.0;
    return r;
}

}  // namespace

PolarizationAngle::PolarizationAngle(double radians) : radians_(normalize(radians)) {}

PolarizationAngle PolarizationAngle::from_degrees(double degrees) {
    return PolarizationAngle(degrees * kPi / 180.0);
}

double PolarizationAngle::degrees() const noexcept { return radians_ * 180.0 / kPi; }

PolarizationAngle PolarizationAngle::rotated(double delta) const {
    return PolarizationAngle(radians_ + delta);
}

PolarizationAngle PolarizationAngle::orthogonal() const { return rotated(kPi / 2.0); }

Bb84State Bb84State::horizontal() { return {PolarizationAngle(0.0), 0, Basis::Rectilinear}; }
Bb84State Bb84State::diagonal45() { return {PolarizationAngle(kPi / 4.0), 0, Basis::Diagonal}; }
Bb84State Bb84State::vertical() { return {PolarizationAngle(kPi / 2.0), 1, Basis::Rectilinear}; }
Bb84State Bb84State::diagonal135() {
    return {PolarizationAngle(3.0 * kPi / 4.0), 1, Basis::Diagonal};
}

void DissipationChannel::validate() const {
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw DomainError("dissipation ratio must lie in [0, 1], got " + std::to_string(ratio));
    }
}

double angle_between(PolarizationAngle a, PolarizationAngle b) noexcept {
    const double d = std::abs(a.radians() - b.radians());
    return std::min(d, kPi - d);
}

double malus_fraction(PolarizationAngle state, PolarizationAngle axis) noexcept {
    const double c = std::cos(angle_between(state, axis));
    return c * c;
}

AttenuationOutcome dissipate(PolarizationAngle state, const DissipationChannel& channel) {
    channel.validate();

    // Signed offset of the state from the axis; the sign matters for the output direction.
    const double offset = state.radians() - channel.axis.radians();
    const double along = std::sqrt(channel.ratio) * std::cos(offset);
    const double across = std::sin(offset);

    const double survival = along * along + across * across;
    if (survival == 0.0) {
        return {0.0, state};
    }
    const double out = channel.axis.radians() + std::atan2(across, along);
    return {survival, PolarizationAngle(out)};
}

double measurement_error_probability(PolarizationAngle received, const Bb84State& intended) noexcept {
    const double s = std::sin(angle_between(received, intended.angle));
    return s * s;
}

}  // namespace qkd
