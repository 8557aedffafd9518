#pragma once

#include <numbers>

namespace qkd {

inline constexpr double kPi = std::numbers::pi;

/// A linear polarization direction in radians. Directions are identified modulo pi, so
/// the stored value is always normalized into [0, pi).
class PolarizationAngle {
public:
    constexpr PolarizationAngle() = default;
    explicit PolarizationAngle(double radians);

    static PolarizationAngle from_degrees(double degrees);

    [[nodiscard]] constexpr double radians() const noexcept { return radians_; }
    [[nodiscard]] double degrees() const noexcept;

    /// Direction rotated by `delta` radians (result renormalized).
    [[nodiscard]] PolarizationAngle rotated(double delta) const;
    /// The orthogonal direction, i.e. rotated by pi/2.
    [[nodiscard]] PolarizationAngle orthogonal() const;

    friend constexpr bool operator==(PolarizationAngle, PolarizationAngle) = default;

private:
    double radians_ = 0.0;
};

enum class Basis { Rectilinear, Diagonal };

/// One of the four BB84 signal states. Only the four constants below exist.
struct Bb84State {
    PolarizationAngle angle;
    int bit;
    Basis basis;

    static Bb84State horizontal();
    static Bb84State diagonal45();
    static Bb84State vertical();
    static Bb84State diagonal135();

    friend bool operator==(const Bb84State&, const Bb84State&) = default;
};

/// The adversary's per-pulse attenuation: the intensity component along `axis` is
/// multiplied by `ratio` (alpha); the orthogonal component passes untouched.
struct DissipationChannel {
    PolarizationAngle axis;
    double ratio = 1.0;

    /// Throws DomainError unless ratio is in [0, 1].
    void validate() const;
};

struct AttenuationOutcome {
    double survival_probability = 1.0;
    PolarizationAngle output_angle;
};

/// Smallest angle between two directions, in [0, pi/2].
[[nodiscard]] double angle_between(PolarizationAngle a, PolarizationAngle b) noexcept;

/// Malus-law intensity fraction of `state` transmitted along `axis`.
[[nodiscard]] double malus_fraction(PolarizationAngle state, PolarizationAngle axis) noexcept;

/// Applies the anisotropic attenuation to a unit-intensity photon polarized along `state`.
///
/// The amplitude along the channel axis is scaled by sqrt(alpha), the orthogonal amplitude is
/// kept, and the output direction is that of the surviving amplitude vector. Measured from the
/// orthogonal complement of the axis, tan(out) = sqrt(alpha) * tan(in). For total absorption
/// (alpha = 0 with the state parallel to the axis) the output angle is the input angle.
///
/// Throws DomainError if the channel ratio is outside [0, 1].
[[nodiscard]] AttenuationOutcome dissipate(PolarizationAngle state, const DissipationChannel& channel);

/// Probability that a projective measurement in `intended`'s basis returns the opposite bit
/// for a photon arriving with polarization `received`.
[[nodiscard]] double measurement_error_probability(PolarizationAngle received,
                                                   const Bb84State& intended) noexcept;

}  // namespace qkd
