#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "qkd_dissipation/analytics.hpp"
#include "qkd_dissipation/feasibility.hpp"
#include "qkd_dissipation/protocol.hpp"

namespace qkd::cli {

using Json = nlohmann::ordered_json;

/// Locale-independent, 6 significant digits.
std::string csv_number(double value);

std::string analytic_csv_header();
std::string simulation_csv_header();

/// `scheme_name` overrides the profile's scheme label (used for the no-attack baseline).
std::string analytic_csv_row(const AnalyticProfile& profile, std::string_view scheme_name);
std::string simulation_csv_row(const AnalyticProfile& profile, std::string_view scheme_name,
                               const SimulationReport& report);

Json profile_json(const AnalyticProfile& profile, std::string_view scheme_name);
Json simulation_json(const SimulationConfig& config, const SimulationReport& report,
                     const AnalyticProfile& profile);
Json feasibility_json(const FeasibilityQuery& query, const FeasibilityReport& report);

/// Scheme label used on the command line and in all output.
std::string_view scheme_label(const std::optional<AttackScheme>& attack);

}  // namespace qkd::cli
