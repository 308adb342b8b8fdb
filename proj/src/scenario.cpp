#include "nsf/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "nsf/errors.hpp"
#include "nsf/numerics.hpp"
#include "nsf/shift_weight.hpp"

namespace nsf {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << std::setprecision(17);
    return out;
}

void finish(std::ofstream& out, const fs::path& path)
{
    out.flush();
    if (!out)
        throw IoError("write failed for " + path.string());
}

nlohmann::ordered_json record_json(const DiagnosticsRecord& r)
{
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["X"] = r.X;
    j["Xdot"] = r.Xdot;
    j["E_weighted"] = r.E_weighted;
    j["G1"] = r.G1;
    j["G2"] = r.G2;
    j["GS"] = r.GS;
    j["D_rho"] = r.D_rho;
    j["D_u1"] = r.D_u1;
    j["D_th1"] = r.D_th1;
    j["D_u2"] = r.D_u2;
    j["D_th2"] = r.D_th2;
    j["D_weighted"] = r.D_weighted;
    j["Y"] = r.Y;
    j["P"] = r.P;
    j["sup_err"] = r.sup_err;
    j["l2_err"] = r.l2_err;
    j["h1_err"] = r.h1_err;
    return j;
}

void write_snapshot(const Field& f, const Grid1D& grid, const fs::path& path)
{
    auto out = open_out(path);
    out << "x,rho,u,theta\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << grid.x(i) << ',' << f.rho[i] << ',' << f.u[i] << ',' << f.theta[i] << '\n';
    finish(out, path);
}

std::string snapshot_name(double t)
{
    std::ostringstream os;
    os << "snapshot_t" << std::setprecision(6) << t << ".csv";
    return os.str();
}

void write_summary_csv(const ScenarioSummary& s, const fs::path& path)
{
    auto out = open_out(path);
    const auto& names = summary_field_names();
    const auto values = summary_values(s);
    for (std::size_t i = 0; i < names.size(); ++i)
        out << (i ? "," : "") << names[i];
    out << '\n';
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i ? "," : "") << values[i];
    out << '\n';
    finish(out, path);
}

} // namespace

ShockData solve_closure(const ScenarioConfig& cfg)
{
    HugoniotOptions ho;
    ho.rh_tol = cfg.rh_tol;
    ho.on_curve_tol = cfg.on_curve_tol;
    ShockData s;
    if (cfg.boundary == BoundaryKind::Impermeable) {
        s = impermeable_closure(cfg.gas, cfg.right, ho);
    } else if (cfg.u_minus) {
        s = outflow_closure(cfg.gas, cfg.right, *cfg.u_minus, *cfg.theta_minus, ho);
    } else if (cfg.rho_minus) {
        const ShockData c = left_state_on_S3(cfg.gas, cfg.right, *cfg.rho_minus, ho);
        s = outflow_closure(cfg.gas, cfg.right, c.left.u, c.left.theta, ho);
    } else {
        const ShockData c = shock_with_amplitude(cfg.gas, cfg.right, cfg.delta.value_or(0.1), ho);
        s = outflow_closure(cfg.gas, cfg.right, c.left.u, c.left.theta, ho);
    }
    validate_shock(cfg.gas, s, cfg.rh_tol);
    if (s.degenerate)
        throw ValidationError("hugoniot: zero-amplitude shock, no profile to follow");
    if (cfg.boundary == BoundaryKind::Outflow && !(s.left.u < 0.0))
        throw ValidationError("hugoniot: outflow needs u_minus < 0, closure gave " + fmt(s.left.u));
    return s;
}

void write_profile_csv(const ShockProfile& p, const fs::path& path)
{
    auto out = open_out(path);
    out << "xi,rho_bar,u_bar,theta_bar,d_rho,d_u,d_theta\n";
    for (std::size_t i = 0; i < p.size(); ++i)
        out << p.xi[i] << ',' << p.rho_bar[i] << ',' << p.u_bar[i] << ',' << p.theta_bar[i] << ',' << p.d_rho[i]
            << ',' << p.d_u[i] << ',' << p.d_theta[i] << '\n';
    finish(out, path);
}

const std::vector<std::string>& summary_field_names()
{
    static const std::vector<std::string> names = {
        "boundary", "delta", "sigma", "rho_minus", "u_minus", "theta_minus", "beta", "L", "N", "h", "T_final",
        "dt", "steps", "M", "sup_err_initial", "sup_err_peak", "peak_time", "sup_err_final", "decay_ratio",
        "xdot_trend", "xdot_final", "X_final", "max_abs_X", "X_bound_violations", "shift_identity_max",
        "dissipation_pass_fraction", "c_star", "gronwall_ok", "P1_max", "P1_abs_max", "P45_time_avg",
        "truncation_tail"};
    return names;
}

std::vector<std::string> summary_values(const ScenarioSummary& s)
{
    return {s.boundary,
            fmt(s.delta),
            fmt(s.sigma),
            fmt(s.rho_minus),
            fmt(s.u_minus),
            fmt(s.theta_minus),
            fmt(s.beta),
            fmt(s.L),
            std::to_string(s.N),
            fmt(s.h),
            fmt(s.T_final),
            fmt(s.dt),
            std::to_string(s.steps),
            fmt(s.M),
            fmt(s.sup_err_initial),
            fmt(s.sup_err_peak),
            fmt(s.peak_time),
            fmt(s.sup_err_final),
            fmt(s.decay_ratio),
            fmt(s.xdot_trend),
            fmt(s.xdot_final),
            fmt(s.X_final),
            fmt(s.max_abs_X),
            std::to_string(s.X_bound_violations),
            fmt(s.shift_identity_max),
            fmt(s.dissipation_pass_fraction),
            fmt(s.c_star),
            s.gronwall_ok ? "true" : "false",
            fmt(s.P1_max),
            fmt(s.P1_abs_max),
            fmt(s.P45_time_avg),
            fmt(s.truncation_tail)};
}

ScenarioResult run_scenario(const ScenarioConfig& cfg)
{
    validate_config(cfg);
    const GasParams& gas = cfg.gas;
    ScenarioResult res;
    res.shock = solve_closure(cfg);
    const ShockData& shock = res.shock;
    const double delta = shock.delta;

    const ShockProfile profile = build_profile(gas, shock, cfg.profile);

    const double beta = cfg.beta.value_or(40.0 / delta);
    const double T = cfg.T_final;
    const double L = cfg.L > 0.0 ? cfg.L : beta + shock.sigma * T + 60.0 / delta;
    std::size_t N = cfg.N;
    if (N == 0) {
        const double h_target = std::min(0.5 / delta, cfg.h_max);
        N = static_cast<std::size_t>(std::ceil(L / h_target)) + 1;
    }
    const Grid1D grid = Grid1D::make(L, N);
    const double tail = check_truncation(profile, grid, T, beta);

    BoundarySpec bc;
    bc.kind = cfg.boundary;
    bc.u_minus = cfg.boundary == BoundaryKind::Impermeable ? 0.0 : shock.left.u;
    bc.theta_minus = shock.left.theta;
    SolverOptions so;
    so.cfl = cfg.cfl;
    so.cfl_diffusive = cfg.cfl_diffusive;
    const Solver solver(gas, grid, bc, shock.right, so);

    PerturbationSpec pert;
    pert.shape = cfg.perturbation;
    pert.amp_rho = cfg.pert_rho;
    pert.amp_u = cfg.pert_u;
    pert.amp_theta = cfg.pert_theta;
    pert.center = cfg.pert_center.value_or(beta);
    pert.width = cfg.pert_width;
    Field field = initialize(solver, profile, beta, pert);
    solver.apply_bc(field);

    const double M = shift_constant(gas, shock);
    const DiagContext ctx{gas, shock, grid, M};
    const double h = grid.h();

    const double dt0 = cfg.dt_safety * solver.stable_dt(field);
    const std::size_t steps = static_cast<std::size_t>(std::ceil(T / dt0));
    const double dt = T / static_cast<double>(steps);

    const fs::path dir(cfg.output_dir);
    std::ofstream ndjson;
    const fs::path ndjson_path = dir / "diagnostics.ndjson";
    std::vector<double> snaps = cfg.snapshot_times;
    if (snaps.empty())
        snaps = {0.0, T};
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;
    if (cfg.write_outputs) {
        ensure_dir(dir);
        if (cfg.write_profile)
            write_profile_csv(profile, dir / "profile.csv");
        ndjson = open_out(ndjson_path);
    }

    auto xdot_of = [&](const Field& f, double X) {
        if (!cfg.shift_active)
            return 0.0;
        const ReferenceGrid ref = shifted_reference(profile, grid, f.t, X, beta);
        return shift_rhs(gas, f, ref, h, M, delta);
    };

    double X = 0.0;
    double identity_max = 0.0;
    for (std::size_t n = 0;; ++n) {
        field.t = static_cast<double>(n) * dt;
        const ReferenceGrid ref = shifted_reference(profile, grid, field.t, X, beta);
        const double Xdot = cfg.shift_active ? shift_rhs(gas, field, ref, h, M, delta) : 0.0;
        const DiagnosticsRecord rec = evaluate(ctx, field, ref, X, Xdot);
        if (cfg.shift_active)
            identity_max = std::max(identity_max, shift_identity_error(ctx, rec));
        if (n % cfg.record_every == 0 || n == steps) {
            res.records.push_back(rec);
            if (cfg.write_outputs)
                ndjson << record_json(rec).dump() << '\n';
        }
        while (cfg.write_outputs && next_snap < snaps.size() && field.t >= snaps[next_snap] - 0.5 * dt) {
            write_snapshot(field, grid, dir / snapshot_name(snaps[next_snap]));
            ++next_snap;
        }
        if (n == steps)
            break;
        field = solver.step_coupled(field, dt, X, xdot_of, &Xdot);
    }
    if (cfg.write_outputs)
        finish(ndjson, ndjson_path);
    res.final_field = field;

    res.dissipation = entropy_dissipation_check(res.records, M, delta, cfg.dissipation_rel_tol,
                                                cfg.dissipation_atol, cfg.cstar_fit);

    ScenarioSummary& s = res.summary;
    s.boundary = cfg.boundary == BoundaryKind::Outflow ? "outflow" : "impermeable";
    s.delta = delta;
    s.sigma = shock.sigma;
    s.rho_minus = shock.left.rho;
    s.u_minus = shock.left.u;
    s.theta_minus = shock.left.theta;
    s.beta = beta;
    s.L = L;
    s.N = N;
    s.h = h;
    s.T_final = T;
    s.dt = dt;
    s.steps = steps;
    s.M = M;
    s.truncation_tail = tail;
    s.shift_identity_max = identity_max;

    const auto& recs = res.records;
    s.sup_err_initial = recs.front().sup_err;
    s.sup_err_final = recs.back().sup_err;
    std::vector<double> ts, xd;
    double p45 = 0.0;
    s.P1_max = -std::numeric_limits<double>::infinity();
    for (const auto& r : recs) {
        if (r.t >= cfg.transient && r.sup_err >= s.sup_err_peak) {
            s.sup_err_peak = r.sup_err;
            s.peak_time = r.t;
        }
        s.max_abs_X = std::max(s.max_abs_X, std::abs(r.X));
        if (r.t > 0.0 && std::abs(r.X) > 0.5 * shock.sigma * r.t)
            ++s.X_bound_violations;
        s.P1_max = std::max(s.P1_max, r.P[0]);
        s.P1_abs_max = std::max(s.P1_abs_max, std::abs(r.P[0]));
        p45 += std::abs(r.P[3]) + std::abs(r.P[4]);
        ts.push_back(r.t);
        xd.push_back(r.Xdot);
    }
    s.P45_time_avg = p45 / static_cast<double>(recs.size());
    s.decay_ratio = s.sup_err_peak > 0.0 ? s.sup_err_final / s.sup_err_peak : 0.0;
    s.xdot_trend = recs.size() >= 4 ? xdot_trend(ts, xd) : 0.0;
    s.xdot_final = recs.back().Xdot;
    s.X_final = recs.back().X;
    s.dissipation_pass_fraction = res.dissipation.pass_fraction;
    s.c_star = res.dissipation.c_star;
    s.gronwall_ok = res.dissipation.gronwall_ok;

    if (cfg.write_outputs)
        write_summary_csv(s, dir / "summary.csv");
    return res;
}

SweepReport run_sweep(const ScenarioConfig& cfg)
{
    validate_config(cfg);
    SweepReport rep;
    rep.parameter = cfg.sweep_parameter;
    if (cfg.sweep_values.empty())
        return rep;
    if (cfg.sweep_parameter.empty())
        throw ValidationError("scenario_cli.sweep_parameter must be set for a sweep");

    const std::size_t n = cfg.sweep_values.size();
    rep.points.resize(n);
    std::vector<ScenarioConfig> configs(n, cfg);
    for (std::size_t k = 0; k < n; ++k) {
        rep.points[k].value = cfg.sweep_values[k];
        set_config_value(configs[k], cfg.sweep_parameter, cfg.sweep_values[k]);
        configs[k].sweep_values.clear();
        configs[k].output_dir = (fs::path(cfg.output_dir) / ("point_" + std::to_string(k))).string();
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            SweepPoint& pt = rep.points[k];
            try {
                pt.summary = run_scenario(configs[k]).summary;
                pt.ok = true;
            } catch (const ValidationError& e) {
                pt.error = e.what();
                pt.error_kind = 1;
            } catch (const NumericalError& e) {
                pt.error = e.what();
                pt.error_kind = 2;
            } catch (const IoError& e) {
                pt.error = e.what();
                pt.error_kind = 3;
            } catch (const std::exception& e) {
                pt.error = e.what();
                pt.error_kind = 2;
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, n);
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    const std::vector<std::pair<std::string, double ScenarioSummary::*>> metrics = {
        {"sup_err_final", &ScenarioSummary::sup_err_final},
        {"sup_err_peak", &ScenarioSummary::sup_err_peak},
        {"P45_time_avg", &ScenarioSummary::P45_time_avg},
    };
    for (const auto& [name, member] : metrics) {
        std::vector<double> x, y, logy;
        for (const auto& pt : rep.points) {
            if (!pt.ok)
                continue;
            double v = 0.0;
            try {
                std::size_t pos = 0;
                v = std::stod(pt.value, &pos);
                if (pos != pt.value.size())
                    continue;
            } catch (const std::exception&) {
                continue;
            }
            const double m = pt.summary.*member;
            if (!(v > 0.0) || !(m > 0.0))
                continue;
            x.push_back(v);
            y.push_back(m);
            logy.push_back(std::log(m));
        }
        SweepFit fit;
        fit.metric = name;
        fit.points = x.size();
        if (x.size() >= 2) {
            fit.loglog_slope = loglog_slope(x, y);
            fit.semilog_rate = -linear_fit(x, logy).slope;
        }
        rep.fits.push_back(fit);
    }

    if (cfg.write_outputs) {
        const fs::path dir(cfg.output_dir);
        ensure_dir(dir);
        const fs::path path = dir / "sweep.csv";
        auto out = open_out(path);
        out << "value,ok,error";
        for (const auto& name : summary_field_names())
            out << ',' << name;
        out << '\n';
        for (const auto& pt : rep.points) {
            std::string err = pt.error;
            std::replace(err.begin(), err.end(), ',', ';');
            std::replace(err.begin(), err.end(), '\n', ' ');
            out << pt.value << ',' << (pt.ok ? "true" : "false") << ',' << err;
            if (pt.ok)
                for (const auto& v : summary_values(pt.summary))
                    out << ',' << v;
            out << '\n';
        }
        finish(out, path);
    }
    return rep;
}

ProfileCheckReport check_profile(const ScenarioConfig& cfg)
{
    validate_config(cfg);
    ProfileCheckReport rep;
    const ShockData shock = solve_closure(cfg);
    const ShockProfile profile = build_profile(cfg.gas, shock, cfg.profile);
    if (cfg.write_outputs) {
        ensure_dir(cfg.output_dir);
        write_profile_csv(profile, fs::path(cfg.output_dir) / "profile.csv");
    }

    rep.properties = verify_profile_properties(cfg.gas, cfg.right, cfg.delta_sweep, cfg.profile);
    for (double d : cfg.delta_sweep) {
        const ShockData s = shock_with_amplitude(cfg.gas, cfg.right, d);
        const ShockProfile p = build_profile(cfg.gas, s, cfg.profile);
        rep.jacobian_deltas.push_back(d);
        rep.jacobian_deviation.push_back(jacobian_identity_check(p));
    }
    if (rep.jacobian_deltas.size() >= 2)
        rep.jacobian_slope = loglog_slope(rep.jacobian_deltas, rep.jacobian_deviation);

    for (const auto& row : rep.properties.rows) {
        const std::string at = " at delta=" + fmt(row.delta);
        if (!row.monotone)
            rep.failures.push_back("profile not monotone" + at);
        if (row.mass_residual > 1e-10)
            rep.failures.push_back("mass relation residual " + fmt(row.mass_residual) + at);
        if (row.vshock_residual > 1e-8)
            rep.failures.push_back("traveling-wave residual " + fmt(row.vshock_residual) + at);
        if (!row.weight_bounds)
            rep.failures.push_back("weight outside [1, 1+sqrt(delta)]" + at);
    }
    if (rep.properties.rows.size() >= 2) {
        auto slope_check = [&](const char* name, double slope, double target, double tol) {
            if (std::abs(slope - target) > tol)
                rep.failures.push_back(std::string(name) + " slope " + fmt(slope) + " outside " + fmt(target) +
                                       " +- " + fmt(tol));
        };
        slope_check("estderi_rho", rep.properties.slope_estderi_rho, 1.0, 0.3);
        slope_check("estderi_theta", rep.properties.slope_estderi_theta, 1.0, 0.3);
        slope_check("sigma_gap", rep.properties.slope_sigma_gap, 1.0, 0.3);
        slope_check("jacobian", rep.jacobian_slope, 2.0, 0.3);
    }
    rep.ok = rep.failures.empty();
    return rep;
}

PoincareSuiteReport check_poincare(const ScenarioConfig& cfg)
{
    validate_config(cfg);
    PoincareSuiteReport rep;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), end(-5.0, 5.0), len(0.1, 10.0);
    std::uniform_int_distribution<int> deg(1, 6);
    const std::size_t n = cfg.poincare_points;
    std::vector<double> f(n);
    for (std::size_t trial = 0; trial < cfg.poincare_samples; ++trial) {
        const double c = end(rng), d = c + len(rng);
        const int K = deg(rng);
        std::vector<double> a(K + 1), b(K + 1);
        for (int k = 0; k <= K; ++k) {
            a[k] = coef(rng);
            b[k] = coef(rng);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double y = c + (d - c) * static_cast<double>(i) / static_cast<double>(n - 1);
            double v = 0.0;
            for (int k = 0; k <= K; ++k)
                v += a[k] * std::cos(k * y) + b[k] * std::sin(k * y);
            f[i] = v;
        }
        ++rep.samples;
        if (!poincare_check(f, c, d).ok)
            ++rep.failures;
    }
    for (std::size_t i = 0; i < n; ++i)
        f[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    const PoincareResult lin = poincare_check(f, 0.0, 1.0);
    rep.linear_lhs = lin.lhs;
    rep.linear_rhs = lin.rhs;
    rep.ok = rep.failures == 0 && std::abs(lin.lhs - 1.0 / 12.0) <= 1e-6 && std::abs(lin.rhs - 1.0 / 12.0) <= 1e-6;
    return rep;
}

} // namespace nsf
