#include "cli/output.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace qkd::cli {

namespace {

constexpr std::string_view kAnalyticHeader =
    "alpha,scheme,i_strong,i_weak,i_mean,p_b,p_bbar,qber,eve_info,info_qber_ratio";
constexpr std::string_view kSimulationExtra =
    "qber_hat,qber_se,p_b_hat,p_b_se,transmission_hat,transmission_se,eve_info_hat,sifted_count";

Json estimate_json(const Estimate& e) {
    return Json{{"value", e.value}, {"standard_error", e.standard_error}};
}

}  // namespace

std::string csv_number(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 6);
    if (ec != std::errc{}) return "nan";
    std::string s(buf, end);
    if (s == "-0") s = "0";
    return s;
}

std::string analytic_csv_header() { return std::string(kAnalyticHeader); }

std::string simulation_csv_header() {
    return std::string(kAnalyticHeader) + "," + std::string(kSimulationExtra);
}

std::string analytic_csv_row(const AnalyticProfile& p, std::string_view scheme_name) {
    std::string row = csv_number(p.alpha);
    row += ',';
    row += scheme_name;
    for (double v : {p.strong_intensity, p.weak_intensity, p.mean_intensity, p.strong_bias,
                     p.weak_bias, p.qber, p.adversary_info, p.info_qber_ratio}) {
        row += ',';
        row += csv_number(v);
    }
    return row;
}

std::string simulation_csv_row(const AnalyticProfile& p, std::string_view scheme_name,
                               const SimulationReport& r) {
    std::string row = analytic_csv_row(p, scheme_name);
    const Estimate q = r.qber();
    const Estimate b = r.strong_bias();
    const Estimate t = r.transmission();
    for (double v : {q.value, q.standard_error, b.value, b.standard_error, t.value, t.standard_error,
                     r.eve_info().value}) {
        row += ',';
        row += csv_number(v);
    }
    row += ',';
    row += std::to_string(r.sifted_count);
    return row;
}

Json profile_json(const AnalyticProfile& p, std::string_view scheme_name) {
    return Json{{"alpha", p.alpha},
                {"scheme", scheme_name},
                {"i_strong", p.strong_intensity},
                {"i_weak", p.weak_intensity},
                {"i_mean", p.mean_intensity},
                {"p_b", p.strong_bias},
                {"p_bbar", p.weak_bias},
                {"qber", p.qber},
                {"eve_info", p.adversary_info},
                {"info_qber_ratio", p.info_qber_ratio}};
}

std::string_view scheme_label(const std::optional<AttackScheme>& attack) {
    return attack ? to_string(*attack) : std::string_view("no-attack");
}

Json simulation_json(const SimulationConfig& config, const SimulationReport& r,
                     const AnalyticProfile& profile) {
    const std::string_view label = scheme_label(config.attack);

    Json cfg{{"scheme", label},
             {"alpha", config.alpha ? Json(*config.alpha) : Json(nullptr)},
             {"pulses", config.pulses},
             {"seed", config.seed},
             {"shard_size", config.shard_size},
             {"system_transmission", config.channel.system_transmission},
             {"system_qber", config.channel.system_qber}};

    Json counts{{"pulses_sent", r.pulses_sent},
                {"arrived_count", r.arrived_count},
                {"sifted_count", r.sifted_count},
                {"error_count", r.error_count},
                {"strong_count", r.strong_count},
                {"eve_correct_count", r.eve_correct_count},
                {"strong_error_count", r.strong_error_count},
                {"weak_error_count", r.weak_error_count},
                {"alice_ones_count", r.alice_ones_count},
                {"bob_ones_count", r.bob_ones_count},
                {"bob_strong_count", r.bob_strong_count}};

    Json estimates{{"transmission_hat", estimate_json(r.transmission())},
                   {"sift_rate_hat", estimate_json(r.sift_rate())},
                   {"qber_hat", estimate_json(r.qber())},
                   {"strong_bias_hat", estimate_json(r.strong_bias())},
                   {"bob_strong_bias_hat", estimate_json(r.bob_strong_bias())},
                   {"eve_accuracy_hat", estimate_json(r.eve_accuracy())},
                   {"eve_info_hat", estimate_json(r.eve_info())},
                   {"strong_qber_hat", estimate_json(r.strong_qber())},
                   {"weak_qber_hat", estimate_json(r.weak_qber())},
                   {"alice_ones_fraction", estimate_json(r.alice_ones_fraction())},
                   {"bob_ones_fraction", estimate_json(r.bob_ones_fraction())}};

    Json per_axis = Json::array();
    if (config.attack) {
        const std::size_t n = eve_axes(*config.attack).size();
        for (std::size_t i = 0; i < n; ++i) {
            const AxisTally& a = r.per_axis[i];
            per_axis.push_back(Json{{"axis_index", i},
                                    {"sent", a.sent},
                                    {"arrived", a.arrived},
                                    {"sifted", a.sifted},
                                    {"strong", a.strong},
                                    {"errors", a.errors}});
        }
    }

    return Json{{"config", std::move(cfg)},
                {"counts", std::move(counts)},
                {"estimates", std::move(estimates)},
                {"per_axis", std::move(per_axis)},
                {"analytic", profile_json(profile, label)}};
}

Json feasibility_json(const FeasibilityQuery& query, const FeasibilityReport& report) {
    Json schemes = Json::array();
    for (const auto& l : report.leakage) {
        schemes.push_back(Json{{"scheme", to_string(l.scheme)},
                               {"strong_bias", l.strong_bias},
                               {"adversary_info", l.adversary_info}});
    }
    auto optional_json = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    return Json{{"system_qber", query.system_qber},
                {"system_loss_db", optional_json(query.system_loss_db)},
                {"fiber_attenuation_db_per_km", query.fiber_attenuation_db_per_km},
                {"alpha_max", report.alpha_max},
                {"induced_loss_db", report.induced_loss_db},
                {"equivalent_fiber_km", report.equivalent_fiber_km},
                {"schemes", std::move(schemes)},
                {"required_superchannel_transmission",
                 optional_json(report.required_superchannel_transmission)},
                {"feasible", report.feasible}};
}

}  // namespace qkd::cli
