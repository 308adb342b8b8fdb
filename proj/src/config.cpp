#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nsf/errors.hpp"
#include "nsf/scenario.hpp"

namespace nsf {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool is_auto(const std::string& v)
{
    return v.empty() || v == "auto";
}

double to_double(const std::string& key, const std::string& text)
{
    const std::string v = trim(text);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out))
        throw ValidationError(key + ": expected a finite number, got '" + text + "'");
    return out;
}

std::size_t to_count(const std::string& key, const std::string& text)
{
    const std::string v = trim(text);
    unsigned long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw ValidationError(key + ": expected a nonnegative integer, got '" + text + "'");
    return static_cast<std::size_t>(out);
}

bool to_bool(const std::string& key, const std::string& text)
{
    const std::string v = trim(text);
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
        return false;
    throw ValidationError(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty())
            out.push_back(trim(item));
    return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text))
        out.push_back(to_double(key, item));
    return out;
}

std::optional<double> to_optional(const std::string& key, const std::string& text)
{
    if (is_auto(trim(text)))
        return std::nullopt;
    return to_double(key, text);
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key, const std::string& value)>;

Setter num(double ScenarioConfig::*m)
{
    return [m](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*m = to_double(k, v); };
}

Setter opt(std::optional<double> ScenarioConfig::*m)
{
    return [m](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*m = to_optional(k, v); };
}

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"thermo.R", [](ScenarioConfig& c, auto& k, auto& v) { c.gas.R = to_double(k, v); }},
        {"thermo.gamma", [](ScenarioConfig& c, auto& k, auto& v) { c.gas.gamma = to_double(k, v); }},
        {"thermo.mu", [](ScenarioConfig& c, auto& k, auto& v) { c.gas.mu = to_double(k, v); }},
        {"thermo.kappa", [](ScenarioConfig& c, auto& k, auto& v) { c.gas.kappa = to_double(k, v); }},

        {"hugoniot.boundary",
         [](ScenarioConfig& c, auto& k, auto& v) {
             const std::string s = trim(v);
             if (s == "outflow")
                 c.boundary = BoundaryKind::Outflow;
             else if (s == "impermeable")
                 c.boundary = BoundaryKind::Impermeable;
             else
                 throw ValidationError(k + ": expected outflow or impermeable, got '" + v + "'");
         }},
        {"hugoniot.right_rho", [](ScenarioConfig& c, auto& k, auto& v) { c.right.rho = to_double(k, v); }},
        {"hugoniot.right_u", [](ScenarioConfig& c, auto& k, auto& v) { c.right.u = to_double(k, v); }},
        {"hugoniot.right_theta", [](ScenarioConfig& c, auto& k, auto& v) { c.right.theta = to_double(k, v); }},
        {"hugoniot.delta", opt(&ScenarioConfig::delta)},
        {"hugoniot.rho_minus", opt(&ScenarioConfig::rho_minus)},
        {"hugoniot.u_minus", opt(&ScenarioConfig::u_minus)},
        {"hugoniot.theta_minus", opt(&ScenarioConfig::theta_minus)},
        {"hugoniot.rh_tol", num(&ScenarioConfig::rh_tol)},
        {"hugoniot.on_curve_tol", num(&ScenarioConfig::on_curve_tol)},

        {"profile.halfwidth", [](ScenarioConfig& c, auto& k, auto& v) { c.profile.halfwidth = is_auto(trim(v)) ? 0.0 : to_double(k, v); }},
        {"profile.spacing", [](ScenarioConfig& c, auto& k, auto& v) { c.profile.spacing = to_double(k, v); }},
        {"profile.tail_tol", [](ScenarioConfig& c, auto& k, auto& v) { c.profile.tail_tol = to_double(k, v); }},
        {"profile.rtol", [](ScenarioConfig& c, auto& k, auto& v) { c.profile.rtol = to_double(k, v); }},
        {"profile.atol", [](ScenarioConfig& c, auto& k, auto& v) { c.profile.atol = to_double(k, v); }},
        {"profile.delta_sweep", [](ScenarioConfig& c, auto& k, auto& v) { c.delta_sweep = to_doubles(k, v); }},

        {"halfline_solver.L", [](ScenarioConfig& c, auto& k, auto& v) { c.L = is_auto(trim(v)) ? 0.0 : to_double(k, v); }},
        {"halfline_solver.N", [](ScenarioConfig& c, auto& k, auto& v) { c.N = is_auto(trim(v)) ? 0 : to_count(k, v); }},
        {"halfline_solver.h_max", num(&ScenarioConfig::h_max)},
        {"halfline_solver.T_final", num(&ScenarioConfig::T_final)},
        {"halfline_solver.cfl", num(&ScenarioConfig::cfl)},
        {"halfline_solver.cfl_diffusive", num(&ScenarioConfig::cfl_diffusive)},
        {"halfline_solver.dt_safety", num(&ScenarioConfig::dt_safety)},
        {"halfline_solver.perturbation",
         [](ScenarioConfig& c, auto& k, auto& v) {
             const std::string s = trim(v);
             if (s == "gaussian")
                 c.perturbation = PerturbationShape::Gaussian;
             else if (s == "none")
                 c.perturbation = PerturbationShape::None;
             else
                 throw ValidationError(k + ": expected gaussian or none, got '" + v + "'");
         }},
        {"halfline_solver.perturbation_rho", num(&ScenarioConfig::pert_rho)},
        {"halfline_solver.perturbation_u", num(&ScenarioConfig::pert_u)},
        {"halfline_solver.perturbation_theta", num(&ScenarioConfig::pert_theta)},
        {"halfline_solver.perturbation_center", opt(&ScenarioConfig::pert_center)},
        {"halfline_solver.perturbation_width", num(&ScenarioConfig::pert_width)},

        {"shift_weight.beta", opt(&ScenarioConfig::beta)},
        {"shift_weight.active", [](ScenarioConfig& c, auto& k, auto& v) { c.shift_active = to_bool(k, v); }},

        {"diagnostics.record_every", [](ScenarioConfig& c, auto& k, auto& v) { c.record_every = to_count(k, v); }},
        {"diagnostics.dissipation_rel_tol", num(&ScenarioConfig::dissipation_rel_tol)},
        {"diagnostics.dissipation_atol", num(&ScenarioConfig::dissipation_atol)},
        {"diagnostics.cstar_fit",
         [](ScenarioConfig& c, auto& k, auto& v) {
             const std::string s = trim(v);
             if (s == "one_sided")
                 c.cstar_fit = CStarFit::OneSided;
             else if (s == "least_squares")
                 c.cstar_fit = CStarFit::LeastSquares;
             else
                 throw ValidationError(k + ": expected one_sided or least_squares, got '" + v + "'");
         }},
        {"diagnostics.transient", num(&ScenarioConfig::transient)},

        {"scenario_cli.output_dir", [](ScenarioConfig& c, auto&, auto& v) { c.output_dir = trim(v); }},
        {"scenario_cli.snapshot_times", [](ScenarioConfig& c, auto& k, auto& v) { c.snapshot_times = to_doubles(k, v); }},
        {"scenario_cli.write_profile", [](ScenarioConfig& c, auto& k, auto& v) { c.write_profile = to_bool(k, v); }},
        {"scenario_cli.write_outputs", [](ScenarioConfig& c, auto& k, auto& v) { c.write_outputs = to_bool(k, v); }},
        {"scenario_cli.seed", [](ScenarioConfig& c, auto& k, auto& v) { c.seed = to_count(k, v); }},
        {"scenario_cli.sweep_parameter", [](ScenarioConfig& c, auto&, auto& v) { c.sweep_parameter = trim(v); }},
        {"scenario_cli.sweep_values", [](ScenarioConfig& c, auto&, auto& v) { c.sweep_values = split_list(v); }},
        {"scenario_cli.poincare_samples", [](ScenarioConfig& c, auto& k, auto& v) { c.poincare_samples = to_count(k, v); }},
        {"scenario_cli.poincare_points", [](ScenarioConfig& c, auto& k, auto& v) { c.poincare_points = to_count(k, v); }},
    };
    return table;
}

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw ValidationError(msg);
}

} // namespace

void set_config_value(ScenarioConfig& cfg, const std::string& dotted_key, const std::string& value)
{
    const std::string key = trim(dotted_key);
    const auto it = setters().find(key);
    if (it == setters().end()) {
        const auto dot = key.find('.');
        if (dot == std::string::npos)
            throw ValidationError("unknown key '" + key + "' (expected section.key)");
        const std::string section = key.substr(0, dot);
        const bool known_section = std::any_of(setters().begin(), setters().end(), [&](const auto& kv) {
            return kv.first.compare(0, section.size() + 1, section + ".") == 0;
        });
        throw ValidationError(known_section ? "unknown key '" + key + "'" : "unknown section '" + section + "'");
    }
    it->second(cfg, key, value);
}

void apply_override(ScenarioConfig& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("override '" + assignment + "' is not of the form section.key=value");
    set_config_value(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

ScenarioConfig parse_config(const std::string& text)
{
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ValidationError("config syntax: " + e.message() + " at line " + std::to_string(e.line()));
    }
    ScenarioConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty())
            throw ValidationError("key '" + section + "' outside of any section");
        for (const auto& [key, value] : body)
            set_config_value(cfg, section + "." + key, value.data());
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ScenarioConfig& c)
{
    require(c.gas.R > 0.0, "thermo.R must be positive");
    require(c.gas.gamma > 1.0, "thermo.gamma must exceed 1");
    require(c.gas.mu > 0.0, "thermo.mu must be positive");
    require(c.gas.kappa > 0.0, "thermo.kappa must be positive");

    require(c.right.rho > 0.0, "hugoniot.right_rho must be positive");
    require(c.right.theta > 0.0, "hugoniot.right_theta must be positive");
    require(c.right.u < 0.0, "hugoniot.right_u must be negative");
    require(c.rh_tol > 0.0, "hugoniot.rh_tol must be positive");
    require(c.on_curve_tol > 0.0, "hugoniot.on_curve_tol must be positive");
    if (c.theta_minus)
        require(*c.theta_minus > 0.0, "hugoniot.theta_minus must be positive");
    if (c.boundary == BoundaryKind::Impermeable) {
        require(!c.delta, "hugoniot.delta is not used with boundary=impermeable");
        require(!c.rho_minus, "hugoniot.rho_minus is not used with boundary=impermeable");
        require(!c.u_minus, "hugoniot.u_minus is not used with boundary=impermeable");
        require(!c.theta_minus, "hugoniot.theta_minus is not used with boundary=impermeable");
    } else {
        const int modes = (c.delta ? 1 : 0) + (c.rho_minus ? 1 : 0) + ((c.u_minus || c.theta_minus) ? 1 : 0);
        require(modes <= 1, "hugoniot: set only one of delta, rho_minus or (u_minus, theta_minus)");
        require(!c.u_minus == !c.theta_minus, "hugoniot.u_minus and hugoniot.theta_minus must be set together");
        if (c.delta)
            require(*c.delta > 0.0, "hugoniot.delta must be positive");
        if (c.rho_minus)
            require(*c.rho_minus > c.right.rho, "hugoniot.rho_minus must exceed hugoniot.right_rho");
        if (c.u_minus)
            require(*c.u_minus < 0.0, "hugoniot.u_minus must be negative");
    }

    require(c.profile.halfwidth >= 0.0, "profile.halfwidth must be nonnegative");
    require(c.profile.spacing > 0.0, "profile.spacing must be positive");
    require(c.profile.tail_tol > 0.0, "profile.tail_tol must be positive");
    require(c.profile.rtol > 0.0, "profile.rtol must be positive");
    require(c.profile.atol > 0.0, "profile.atol must be positive");
    for (double d : c.delta_sweep)
        require(d > 0.0, "profile.delta_sweep entries must be positive");

    require(c.L >= 0.0, "halfline_solver.L must be nonnegative");
    require(c.N == 0 || c.N >= 16, "halfline_solver.N must be at least 16");
    require(c.h_max > 0.0, "halfline_solver.h_max must be positive");
    require(c.T_final > 0.0, "halfline_solver.T_final must be positive");
    require(c.cfl > 0.0 && c.cfl <= 1.0, "halfline_solver.cfl must lie in (0, 1]");
    require(c.cfl_diffusive > 0.0 && c.cfl_diffusive <= 0.5, "halfline_solver.cfl_diffusive must lie in (0, 0.5]");
    require(c.dt_safety > 0.0 && c.dt_safety <= 1.0, "halfline_solver.dt_safety must lie in (0, 1]");
    require(c.pert_width > 0.0, "halfline_solver.perturbation_width must be positive");

    if (c.beta)
        require(*c.beta >= 0.0, "shift_weight.beta must be nonnegative");

    require(c.record_every >= 1, "diagnostics.record_every must be at least 1");
    require(c.dissipation_rel_tol >= 0.0, "diagnostics.dissipation_rel_tol must be nonnegative");
    require(c.dissipation_atol >= 0.0, "diagnostics.dissipation_atol must be nonnegative");
    require(c.transient >= 0.0 && c.transient < c.T_final, "diagnostics.transient must lie in [0, T_final)");

    require(!c.output_dir.empty(), "scenario_cli.output_dir must not be empty");
    for (double t : c.snapshot_times)
        require(t >= 0.0 && t <= c.T_final, "scenario_cli.snapshot_times entries must lie in [0, T_final]");
    require(c.poincare_points >= 3, "scenario_cli.poincare_points must be at least 3");
    if (!c.sweep_parameter.empty())
        require(setters().count(c.sweep_parameter) == 1,
                "scenario_cli.sweep_parameter: unknown key '" + c.sweep_parameter + "'");
}

} // namespace nsf
