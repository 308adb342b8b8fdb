#pragma once

// Scenario configuration, orchestration and result files.
//
// Config files are INI-style with one section per module:
//   [thermo] [hugoniot] [profile] [halfline_solver] [shift_weight]
//   [diagnostics] [scenario_cli]
// Unknown sections or keys are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nsf/diagnostics.hpp"
#include "nsf/halfline_solver.hpp"
#include "nsf/hugoniot.hpp"
#include "nsf/profile.hpp"

namespace nsf {

struct ScenarioConfig {
    GasParams gas;

    // hugoniot
    BoundaryKind boundary = BoundaryKind::Outflow;
    State right{1.0, -1.2, 1.0};
    std::optional<double> delta;
    std::optional<double> rho_minus;
    std::optional<double> u_minus;
    std::optional<double> theta_minus;
    double rh_tol = 1e-10;
    double on_curve_tol = 1e-8;

    // profile
    ProfileOptions profile;
    std::vector<double> delta_sweep{0.2, 0.1, 0.05, 0.025};

    // halfline_solver
    double L = 0.0;     ///< 0 selects beta + sigma T + 60/delta
    std::size_t N = 0;  ///< 0 selects h <= min(0.5/delta, h_max)
    double h_max = 0.25;
    double T_final = 200.0;
    double cfl = 0.4;
    double cfl_diffusive = 0.25;
    double dt_safety = 0.9;
    PerturbationShape perturbation = PerturbationShape::Gaussian;
    double pert_rho = 0.0, pert_u = 0.01, pert_theta = 0.0;
    std::optional<double> pert_center; ///< unset places the bump at beta
    double pert_width = 20.0;

    // shift_weight
    std::optional<double> beta; ///< unset selects 40/delta
    bool shift_active = true;

    // diagnostics
    std::size_t record_every = 1;
    double dissipation_rel_tol = 1e-3;
    double dissipation_atol = 1e-14;
    CStarFit cstar_fit = CStarFit::OneSided;
    double transient = 0.0;

    // scenario_cli
    std::string output_dir = "out";
    std::vector<double> snapshot_times;
    bool write_profile = true;
    bool write_outputs = true;
    unsigned long long seed = 0;
    std::string sweep_parameter;
    std::vector<std::string> sweep_values;
    std::size_t poincare_samples = 1000;
    std::size_t poincare_points = 4001;
};

/// Reads an INI file; ValidationError names the offending section.key.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Parses INI text (same rules as load_config).
ScenarioConfig parse_config(const std::string& text);

/// Applies one "section.key=value" override.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

/// Sets section.key to the textual value, with the same validation as the file parser.
void set_config_value(ScenarioConfig& cfg, const std::string& dotted_key, const std::string& value);

/// Range and consistency checks; ValidationError names the field.
void validate_config(const ScenarioConfig& cfg);

/// Closure selected by the config (delta, rho_minus, or (u_minus, theta_minus)).
ShockData solve_closure(const ScenarioConfig& cfg);

struct ScenarioSummary {
    std::string boundary;
    double delta = 0, sigma = 0, rho_minus = 0, u_minus = 0, theta_minus = 0;
    double beta = 0, L = 0, h = 0, T_final = 0, dt = 0;
    std::size_t N = 0, steps = 0;
    double M = 0;
    double sup_err_initial = 0, sup_err_peak = 0, peak_time = 0, sup_err_final = 0;
    double decay_ratio = 0; ///< sup_err_final / sup_err_peak
    double xdot_trend = 0;
    double xdot_final = 0;
    double X_final = 0;
    double max_abs_X = 0;
    std::size_t X_bound_violations = 0;
    double shift_identity_max = 0;
    double dissipation_pass_fraction = 0;
    double c_star = 0;
    bool gronwall_ok = false;
    double P1_max = 0;      ///< max over steps of P1
    double P1_abs_max = 0;  ///< max over steps of |P1|
    double P45_time_avg = 0;
    double truncation_tail = 0;
};

struct ScenarioResult {
    ShockData shock;
    ScenarioSummary summary;
    std::vector<DiagnosticsRecord> records;
    DissipationReport dissipation;
    Field final_field;
};

/// Closure, profile, simulation and diagnostics. Writes files under
/// cfg.output_dir when cfg.write_outputs is set. Throws ValidationError,
/// NumericalError or IoError.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

const std::vector<std::string>& summary_field_names();
std::vector<std::string> summary_values(const ScenarioSummary& s);

struct SweepPoint {
    std::string value;
    bool ok = false;
    std::string error;
    int error_kind = 0; ///< 0 ok, 1 validation, 2 numerical, 3 io
    ScenarioSummary summary;
};

struct SweepFit {
    std::string metric;
    double loglog_slope = 0.0;   ///< d log(metric) / d log(parameter)
    double semilog_rate = 0.0;   ///< -d log(metric) / d parameter
    std::size_t points = 0;
};

struct SweepReport {
    std::string parameter;
    std::vector<SweepPoint> points;
    std::vector<SweepFit> fits;
};

/// One scenario per value of cfg.sweep_parameter; failures are recorded and
/// the sweep continues. Points write to output_dir/point_<k>.
SweepReport run_sweep(const ScenarioConfig& cfg);

struct ProfileCheckReport {
    ProfilePropertyReport properties;
    std::vector<double> jacobian_deltas;
    std::vector<double> jacobian_deviation;
    double jacobian_slope = 0.0;
    bool ok = false;
    std::vector<std::string> failures;
};

/// Builds the configured profile (written as profile.csv) and runs the
/// property and Jacobian-identity checks over cfg.delta_sweep.
ProfileCheckReport check_profile(const ScenarioConfig& cfg);

struct PoincareSuiteReport {
    std::size_t samples = 0;
    std::size_t failures = 0;
    double linear_lhs = 0.0;
    double linear_rhs = 0.0;
    bool ok = false;
};

/// Random trigonometric polynomials on random intervals (seeded) plus the
/// linear extremal case on [0, 1].
PoincareSuiteReport check_poincare(const ScenarioConfig& cfg);

void write_profile_csv(const ShockProfile& p, const std::filesystem::path& path);

} // namespace nsf
