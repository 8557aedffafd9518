#include "qkd_dissipation/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qkd_dissipation/errors.hpp"

namespace qkd {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kEndpointSlack = 1e-12;
// Above this alpha the ratio is replaced by its limit; both numerator and denominator are O(1e-13).
constexpr double kRatioLimitThreshold = 1.0 - 1e-6;

const double kSin2PiOver8 = std::pow(std::sin(kPi / 8.0), 2);
const double kCos2PiOver8 = std::pow(std::cos(kPi / 8.0), 2);

void require_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
}

// Scale factor k of the bias deviation: p_b = 1/2 - k (1 - alpha) / (1 + alpha).
double bias_slope(AttackScheme scheme) noexcept {
    return scheme == AttackScheme::FourStateDissipation ? 0.25 : kSqrt2 / 4.0;
}

double clamp_bias(AttackScheme scheme, double p) {
    const auto [lo, hi] = bias_interval(scheme);
    if (p < lo - kEndpointSlack || p > hi + kEndpointSlack || std::isnan(p)) {
        throw DomainError("strong-bit bias " + std::to_string(p) + " is outside [" +
                          std::to_string(lo) + ", " + std::to_string(hi) + "] for scheme " +
                          std::string(to_string(scheme)));
    }
    return std::clamp(p, lo, hi);
}

}  // namespace

std::string_view to_string(AttackScheme scheme) noexcept {
    switch (scheme) {
        case AttackScheme::FourStateDissipation: return "four-state";
        case AttackScheme::BreidbartDissipation: return "breidbart";
    }
    return "unknown";
}

BiasInterval bias_interval(AttackScheme scheme) noexcept {
    const double k = bias_slope(scheme);
    return {0.5 - k, 0.5};
}

BitIntensities intensities(AttackScheme scheme, double alpha) {
    require_alpha(alpha);
    const double mean = 0.5 * (1.0 + alpha);
    if (scheme == AttackScheme::FourStateDissipation) {
        return {0.25 * (1.0 + 3.0 * alpha), 0.25 * (3.0 + alpha), mean};
    }
    return {alpha * kCos2PiOver8 + kSin2PiOver8, alpha * kSin2PiOver8 + kCos2PiOver8, mean};
}

double strong_bit_bias(AttackScheme scheme, double alpha) {
    require_alpha(alpha);
    return 0.5 - bias_slope(scheme) * (1.0 - alpha) / (1.0 + alpha);
}

double qber(double alpha) {
    require_alpha(alpha);
    // (1/4)(1-a)/(1+a) * (1-s)/(1+s) with s = sqrt(a), using 1-s = (1-a)/(1+s).
    const double s = std::sqrt(alpha);
    const double one_minus = 1.0 - alpha;
    return one_minus * one_minus / (4.0 * (1.0 + alpha) * (1.0 + s) * (1.0 + s));
}

double scheme_qber_from_kernel(AttackScheme scheme, double alpha) {
    require_alpha(alpha);
    if (scheme == AttackScheme::FourStateDissipation) {
        // Only the diagonal pair is rotated, from pi/4 to atan(sqrt(alpha)); half of the sifted
        // key comes from that pair.
        const double deviation = kPi / 4.0 - std::atan(std::sqrt(alpha));
        const double s = std::sin(deviation);
        return 0.5 * s * s;
    }
    const auto [strong, weak, mean] = intensities(scheme, alpha);
    const auto cond = breidbart_conditional_qber(alpha);
    return (strong * cond.strong + weak * cond.weak) / (strong + weak);
}

ConditionalQber breidbart_conditional_qber(double alpha) {
    require_alpha(alpha);
    const double s = std::sqrt(alpha);
    const double miss = (1.0 - s) * (1.0 - s);
    const double strong_den = std::pow(kSqrt2 - 1.0 + (kSqrt2 + 1.0) * s, 2) + miss;
    const double weak_den = std::pow(kSqrt2 + 1.0 + (kSqrt2 - 1.0) * s, 2) + miss;
    return {miss / strong_den, miss / weak_den};
}

double alpha_from_bias(AttackScheme scheme, double strong_bias) {
    const double p = clamp_bias(scheme, strong_bias);
    if (scheme == AttackScheme::FourStateDissipation) {
        return (4.0 * p - 1.0) / (3.0 - 4.0 * p);
    }
    const double u = kSqrt2 * (1.0 - 2.0 * p);
    return (1.0 - u) / (1.0 + u);
}

double qber_from_bias(AttackScheme scheme, double strong_bias) {
    const double p = clamp_bias(scheme, strong_bias);
    const double lo = bias_interval(scheme).lower;
    // 1 - lo is the largest weak-bit bias, the mirror of lo about 1/2.
    const double d = std::sqrt(std::max(0.0, 1.0 - lo - p)) - std::sqrt(std::max(0.0, p - lo));
    const double weight = scheme == AttackScheme::FourStateDissipation ? 0.5 : kSqrt2 / 4.0;
    return weight * d * d;
}

double alpha_from_qber(double eta) {
    if (!(eta >= -kEndpointSlack && eta <= 0.25 + kEndpointSlack)) {
        throw DomainError("error rate " + std::to_string(eta) +
                          " is outside [0, 0.25]; no dissipation ratio produces it");
    }
    eta = std::clamp(eta, 0.0, 0.25);
    // (1 - s)^2 = 4 eta (1 + s^2) rearranges to c s^2 - 2 s + c = 0 with c = 1 - 4 eta.
    const double c = 1.0 - 4.0 * eta;
    const double s = c / (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    return s * s;
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("probability must lie in [0, 1], got " + std::to_string(p));
    }
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double information_from_bias(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("probability must lie in [0, 1], got " + std::to_string(p));
    }
    const double x = 1.0 - 2.0 * p;
    const double ax = std::abs(x);
    if (ax == 1.0) return 1.0;
    if (ax < 1e-3) {
        // (1+x)ln(1+x) + (1-x)ln(1-x) = sum_n x^(2n) / (n (2n - 1))
        const double x2 = x * x;
        const double series = x2 * (1.0 + x2 * (1.0 / 6.0 + x2 * (1.0 / 15.0 + x2 / 28.0)));
        return series / (2.0 * kLn2);
    }
    return ((1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x)) / (2.0 * kLn2);
}

double adversary_information(AttackScheme scheme, double alpha) {
    return information_from_bias(strong_bit_bias(scheme, alpha));
}

double info_qber_ratio_limit(AttackScheme scheme) noexcept {
    // Near alpha = 1 with t = (1-a)/(1+a): eta ~ t^2/8 and 1 - H(1/2 - k t) ~ 2 k^2 t^2 / ln 2.
    const double k = bias_slope(scheme);
    return 16.0 * k * k / kLn2;
}

double info_qber_ratio(AttackScheme scheme, double alpha) {
    require_alpha(alpha);
    if (alpha > kRatioLimitThreshold) return info_qber_ratio_limit(scheme);
    return adversary_information(scheme, alpha) / qber(alpha);
}

AnalyticProfile profile(AttackScheme scheme, double alpha) {
    const auto [strong, weak, mean] = intensities(scheme, alpha);
    AnalyticProfile out;
    out.scheme = scheme;
    out.alpha = alpha;
    out.strong_intensity = strong;
    out.weak_intensity = weak;
    out.mean_intensity = mean;
    out.strong_bias = strong_bit_bias(scheme, alpha);
    out.weak_bias = 1.0 - out.strong_bias;
    out.qber = qber(alpha);
    out.adversary_info = information_from_bias(out.strong_bias);
    out.info_qber_ratio = info_qber_ratio(scheme, alpha);
    return out;
}

}  // namespace qkd
