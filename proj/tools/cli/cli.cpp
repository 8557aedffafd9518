#include "cli/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli/output.hpp"
#include "cli/validation.hpp"
#include "qkd_dissipation/errors.hpp"
#include "qkd_dissipation/feasibility.hpp"
#include "qkd_dissipation/protocol.hpp"

namespace qkd::cli {

namespace {

/// Bad flag values discovered after CLI11 has accepted the syntax.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
        throw UsageError("malformed " + what + ": '" + text + "'");
    }
    return value;
}

void require_unit_interval(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw UsageError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
}

std::vector<AttackScheme> parse_analysis_schemes(const std::string& name) {
    if (name == "four-state") return {AttackScheme::FourStateDissipation};
    if (name == "breidbart") return {AttackScheme::BreidbartDissipation};
    if (name == "both") return {kAttackSchemes.begin(), kAttackSchemes.end()};
    throw UsageError("unknown scheme '" + name + "' (expected four-state, breidbart or both)");
}

std::optional<AttackScheme> parse_simulation_scheme(const std::string& name) {
    if (name == "no-attack") return std::nullopt;
    if (name == "four-state") return AttackScheme::FourStateDissipation;
    if (name == "breidbart") return AttackScheme::BreidbartDissipation;
    throw UsageError("unknown scheme '" + name + "' (expected no-attack, four-state or breidbart)");
}

/// START:STOP:STEP with both endpoints included; the last point may overshoot STOP by at most
/// half a step and is then pinned to STOP.
std::vector<double> parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("sweep must be START:STOP:STEP, got '" + text + "'");
    const double start = parse_real(parts[0], "sweep start");
    const double stop = parse_real(parts[1], "sweep stop");
    const double step = parse_real(parts[2], "sweep step");
    require_unit_interval(start);
    require_unit_interval(stop);
    if (!(step > 0.0)) throw UsageError("sweep step must be positive");
    if (start > stop) throw UsageError("sweep start must not exceed stop");

    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5));
    std::vector<double> alphas;
    alphas.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        alphas.push_back(std::min(start + static_cast<double>(i) * step, stop));
    }
    return alphas;
}

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> alphas;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        const double a = parse_real(part, "alpha");
        require_unit_interval(a);
        alphas.push_back(a);
    }
    if (alphas.empty()) throw UsageError("alpha list is empty");
    return alphas;
}

unsigned thread_cap_from_env() {
    const char* raw = std::getenv(kThreadsEnv);
    if (raw == nullptr || *raw == '\0') return 0;
    const std::string text(raw);
    if (text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError(std::string(kThreadsEnv) + " must be a positive integer, got '" + text + "'");
    }
    const unsigned long value = std::stoul(text);
    if (value == 0 || value > 4096) {
        throw UsageError(std::string(kThreadsEnv) + " must be a positive integer, got '" + text + "'");
    }
    return static_cast<unsigned>(value);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    file << text;
}

struct AnalyzeArgs {
    std::string scheme;
    std::optional<double> alpha;
    std::string sweep;
    std::string format = "csv";
    std::string out_path;
};

int analyze(const AnalyzeArgs& a, std::ostream& out) {
    const auto schemes = parse_analysis_schemes(a.scheme);
    std::vector<double> alphas;
    if (a.alpha) {
        require_unit_interval(*a.alpha);
        alphas.push_back(*a.alpha);
    } else {
        alphas = parse_sweep(a.sweep);
    }

    std::string text;
    if (a.format == "csv") {
        text = analytic_csv_header() + "\n";
        for (AttackScheme s : schemes) {
            for (double alpha : alphas) text += analytic_csv_row(profile(s, alpha), to_string(s)) + "\n";
        }
    } else {
        Json rows = Json::array();
        for (AttackScheme s : schemes) {
            for (double alpha : alphas) rows.push_back(profile_json(profile(s, alpha), to_string(s)));
        }
        text = rows.dump(2) + "\n";
    }
    emit(text, a.out_path, out);
    return kSuccess;
}

struct SimulateArgs {
    std::string scheme;
    std::optional<double> alpha;
    std::uint64_t pulses = 0;
    std::uint64_t seed = 0;
    double system_transmission = 1.0;
    double system_qber = 0.0;
    std::string format = "json";
};

int simulate(const SimulateArgs& a, std::ostream& out) {
    SimulationConfig config;
    config.attack = parse_simulation_scheme(a.scheme);
    if (config.attack && !a.alpha) throw UsageError("--alpha is required for scheme " + a.scheme);
    if (!config.attack && a.alpha) throw UsageError("--alpha is not accepted for scheme no-attack");
    if (a.alpha) require_unit_interval(*a.alpha);
    config.alpha = a.alpha;
    config.pulses = a.pulses;
    config.seed = a.seed;
    config.channel = {a.system_transmission, a.system_qber};
    config.max_threads = thread_cap_from_env();

    const SimulationReport report = run_simulation(config);
    // The baseline is compared against the undisturbed profile.
    const AnalyticProfile expected = profile(
        config.attack.value_or(AttackScheme::FourStateDissipation), config.alpha.value_or(1.0));

    if (a.format == "csv") {
        out << simulation_csv_header() << "\n"
            << simulation_csv_row(expected, scheme_label(config.attack), report) << "\n";
    } else {
        out << simulation_json(config, report, expected).dump(2) << "\n";
    }
    return kSuccess;
}

struct FeasibilityArgs {
    double system_qber = 0.0;
    std::optional<double> system_loss_db;
    double fiber_db_per_km = kStandardFiberDbPerKm;
};

int feasibility(const FeasibilityArgs& a, std::ostream& out) {
    FeasibilityQuery query{a.system_qber, a.system_loss_db, a.fiber_db_per_km};
    out << feasibility_json(query, plan(query)).dump(2) << "\n";
    return kSuccess;
}

struct ValidateArgs {
    std::uint64_t pulses = 1'000'000;
    std::uint64_t seed = 42;
    std::string alphas = "0.1,0.25,0.5,0.9";
    double sigma = 4.0;
};

int validate(const ValidateArgs& a, std::ostream& out) {
    ValidationOptions options;
    options.pulses = a.pulses;
    options.seed = a.seed;
    options.alphas = parse_alpha_list(a.alphas);
    if (!(a.sigma > 0.0)) throw UsageError("--sigma must be positive");
    options.sigma = a.sigma;
    options.max_threads = thread_cap_from_env();

    const auto results = run_validation(options);
    print_validation_table(out, results, options.sigma);
    for (const auto& r : results) {
        if (!r.passed) return kValidationFailure;
    }
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dissipation attack on BB84: closed-form analytics, Monte-Carlo simulation and "
                 "feasibility planning",
                 "qkd-dissipation"};
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    auto* analyze_cmd = app.add_subcommand("analyze", "Closed-form profile per (scheme, alpha)");
    analyze_cmd->add_option("--scheme", analyze_args.scheme, "four-state, breidbart or both")->required();
    auto* alpha_opt = analyze_cmd->add_option("--alpha", analyze_args.alpha, "Dissipation ratio in [0, 1]");
    auto* sweep_opt = analyze_cmd->add_option("--sweep", analyze_args.sweep, "START:STOP:STEP (inclusive)");
    alpha_opt->excludes(sweep_opt);
    analyze_cmd->add_option("--format", analyze_args.format)->check(CLI::IsMember({"csv", "json"}));
    analyze_cmd->add_option("--out", analyze_args.out_path, "Write to this file instead of stdout");

    SimulateArgs sim_args;
    auto* simulate_cmd = app.add_subcommand("simulate", "Single-photon Monte-Carlo of the protocol");
    simulate_cmd->add_option("--scheme", sim_args.scheme, "no-attack, four-state or breidbart")->required();
    simulate_cmd->add_option("--alpha", sim_args.alpha, "Dissipation ratio in [0, 1]");
    simulate_cmd->add_option("--pulses", sim_args.pulses)->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", sim_args.seed)->required();
    simulate_cmd->add_option("--system-transmission", sim_args.system_transmission);
    simulate_cmd->add_option("--system-qber", sim_args.system_qber);
    simulate_cmd->add_option("--format", sim_args.format)->check(CLI::IsMember({"json", "csv"}));

    FeasibilityArgs feas_args;
    auto* feas_cmd = app.add_subcommand("feasibility", "Largest dissipation hidden by a system's budget");
    feas_cmd->add_option("--system-qber", feas_args.system_qber)->required();
    feas_cmd->add_option("--system-loss-db", feas_args.system_loss_db);
    feas_cmd->add_option("--fiber-db-per-km", feas_args.fiber_db_per_km);

    ValidateArgs val_args;
    auto* validate_cmd = app.add_subcommand("validate", "Cross-check simulation against closed forms");
    validate_cmd->add_option("--pulses", val_args.pulses)->check(CLI::PositiveNumber);
    validate_cmd->add_option("--seed", val_args.seed);
    validate_cmd->add_option("--alphas", val_args.alphas, "Comma-separated alpha values");
    validate_cmd->add_option("--sigma", val_args.sigma, "Tolerance in standard errors");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (analyze_cmd->parsed()) {
            if (!alpha_opt->count() && !sweep_opt->count()) {
                throw UsageError("analyze needs --alpha or --sweep");
            }
            return analyze(analyze_args, out);
        }
        if (simulate_cmd->parsed()) return simulate(sim_args, out);
        if (feas_cmd->parsed()) return feasibility(feas_args, out);
        if (validate_cmd->parsed()) return validate(val_args, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace qkd::cli
