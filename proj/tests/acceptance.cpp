// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mms.hpp"
#include "nsf/diagnostics.hpp"
#include "nsf/errors.hpp"
#include "nsf/hugoniot.hpp"
#include "nsf/numerics.hpp"
#include "nsf/profile.hpp"
#include "nsf/scenario.hpp"

using namespace nsf;

namespace {

int g_failed = 0;

void verdict(int id, bool ok, const std::string& detail, double seconds)
{
    std::printf("criterion %d: %s  %s  (%.1f s)\n", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok)
        ++g_failed;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

template <class F>
void criterion(int id, F&& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail += std::string(" exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    verdict(id, ok, detail, s);
}

const GasParams kGas{};
const State kRight{1.0, -1.2, 1.0};
const std::vector<double> kDeltas{0.2, 0.1, 0.05, 0.025};

bool lax_ok(const ShockData& s)
{
    const double l_left = s.left.u + sound_speed(kGas, s.left);
    const double l_right = s.right.u + sound_speed(kGas, s.right);
    return l_left > s.sigma && s.sigma > l_right && s.sigma > 0.0;
}

bool hugoniot_round_trip(std::string& d)
{
    double worst_rho = 0.0, worst_rh1 = 0.0;
    bool lax = true;
    for (double delta : kDeltas) {
        const double rho_minus = shock_with_amplitude(kGas, kRight, delta).left.rho;
        const ShockData a = left_state_on_S3(kGas, kRight, rho_minus);
        const ShockData b = outflow_closure(kGas, kRight, a.left.u, a.left.theta);
        worst_rho = std::max(worst_rho, std::abs(b.left.rho - rho_minus));
        lax = lax && lax_ok(a) && lax_ok(b);

        const State wall_right{1.0, -delta, 1.0};
        const ShockData w = impermeable_closure(kGas, wall_right);
        worst_rh1 = std::max(worst_rh1, std::abs(w.sigma * (w.left.rho - w.right.rho) + w.right.rho * w.right.u));
        lax = lax && lax_ok(w);
    }
    d = "max |rho_- error| " + num(worst_rho) + " (<=1e-8), max RH1 identity " + num(worst_rh1) +
        " (<=1e-12), Lax and sigma>0 " + (lax ? "hold" : "broken");
    return worst_rho <= 1e-8 && worst_rh1 <= 1e-12 && lax;
}

bool profile_fidelity(std::string& d)
{
    const ProfilePropertyReport r = verify_profile_properties(kGas, kRight, kDeltas);
    bool mono = true;
    double mass = 0.0, vs = 0.0;
    for (const auto& row : r.rows) {
        mono = mono && row.monotone;
        mass = std::max(mass, row.mass_residual);
        vs = std::max(vs, row.vshock_residual);
    }
    auto near1 = [](double s) { return std::abs(s - 1.0) <= 0.3; };
    d = std::string("monotone ") + (mono ? "yes" : "no") + ", mass " + num(mass) + " (<=1e-10), residual " + num(vs) +
        " (<1e-8), slopes estderi_rho " + num(r.slope_estderi_rho) + " estderi_theta " +
        num(r.slope_estderi_theta) + " sigma_gap " + num(r.slope_sigma_gap) + " (1+-0.3)";
    return mono && mass <= 1e-10 && vs < 1e-8 && near1(r.slope_estderi_rho) && near1(r.slope_estderi_theta) &&
           near1(r.slope_sigma_gap);
}

bool jacobian_identity(std::string& d)
{
    std::vector<double> dev;
    for (double delta : kDeltas)
        dev.push_back(jacobian_identity_check(build_profile(kGas, shock_with_amplitude(kGas, kRight, delta))));
    const double slope = loglog_slope(kDeltas, dev);
    d = "deviation at delta=0.2.." + num(kDeltas.back()) + ": " + num(dev.front()) + " .. " + num(dev.back()) +
        ", slope " + num(slope) + " (2+-0.3)";
    return std::abs(slope - 2.0) <= 0.3;
}

bool poincare_suite(std::string& d)
{
    ScenarioConfig c;
    c.seed = 20240601;
    c.poincare_samples = 1000;
    c.poincare_points = 4001;
    const PoincareSuiteReport r = check_poincare(c);
    d = std::to_string(r.samples - r.failures) + "/" + std::to_string(r.samples) +
        " random cases pass (qtol 1e-8), linear case lhs " + num(r.linear_lhs) + " rhs " + num(r.linear_rhs) +
        " (1/12 within 1e-6)";
    return r.ok && r.samples == 1000;
}

bool solver_order(std::string& d)
{
    std::vector<double> hs, err;
    for (std::size_t N : {33, 65, 129, 257}) {
        hs.push_back(mms::Lm / static_cast<double>(N - 1));
        err.push_back(mms::mms_error(N, false));
    }
    bool monotone = true;
    for (std::size_t k = 1; k < err.size(); ++k)
        monotone = monotone && err[k] < err[k - 1];
    const double order = loglog_slope(hs, err);

    const State c = kRight;
    const Solver s(kGas, Grid1D::make(50.0, 101), BoundarySpec{BoundaryKind::Outflow, c.u, c.theta}, c);
    Field f;
    f.rho.assign(101, c.rho);
    f.u.assign(101, c.u);
    f.theta.assign(101, c.theta);
    const double dt = s.stable_dt(f);
    for (int k = 0; k < 500; ++k)
        f = s.step(f, dt);
    double drift = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        drift = std::max({drift, std::abs(f.rho[i] - c.rho), std::abs(f.u[i] - c.u), std::abs(f.theta[i] - c.theta)});
    d = "errors " + num(err[0]) + " " + num(err[1]) + " " + num(err[2]) + " " + num(err[3]) + ", order " +
        num(order) + " (>=0.9), monotone " + (monotone ? "yes" : "no") + ", constant-state drift " + num(drift) +
        " (<=1e-14)";
    return order >= 0.9 && monotone && drift <= 1e-14;
}

bool transport(std::string& d)
{
    const double delta = 0.2;
    std::vector<double> hs, err;
    for (std::size_t N : {1011, 2021, 4041}) {
        ScenarioConfig c;
        c.delta = delta;
        c.perturbation = PerturbationShape::None;
        c.write_outputs = false;
        const ShockData sh = solve_closure(c);
        c.T_final = 5.0 / sh.sigma;
        c.beta = 40.0 / delta;
        c.L = *c.beta + sh.sigma * c.T_final + 60.0 / delta;
        c.N = N;
        const ScenarioResult r = run_scenario(c);
        hs.push_back(r.summary.h);
        err.push_back(r.summary.sup_err_peak);
    }
    bool halving = true;
    for (std::size_t k = 1; k < err.size(); ++k)
        halving = halving && err[k - 1] / err[k] >= 1.9;
    d = "delta 0.2, T=5/sigma, sup distance " + num(err[0]) + " " + num(err[1]) + " " + num(err[2]) +
        " at h " + num(hs[0]) + " " + num(hs[1]) + " " + num(hs[2]) + ", ratios " + num(err[0] / err[1]) + " " +
        num(err[1] / err[2]) + " (>=1.9), err/h " + num(err.back() / hs.back());
    return halving;
}

ScenarioConfig stability_config(BoundaryKind kind)
{
    ScenarioConfig c;
    c.boundary = kind;
    if (kind == BoundaryKind::Impermeable)
        c.right = State{1.0, -0.1, 1.0};
    else
        c.delta = 0.1;
    c.pert_u = 0.01;
    c.T_final = 200.0;
    c.N = 8192;
    c.write_outputs = false;
    return c;
}

std::vector<ScenarioResult> g_runs;

bool stability(std::string& d)
{
    bool ok = true;
    for (BoundaryKind kind : {BoundaryKind::Outflow, BoundaryKind::Impermeable}) {
        g_runs.push_back(run_scenario(stability_config(kind)));
        const ScenarioSummary& s = g_runs.back().summary;
        const bool pass = s.decay_ratio <= 0.5 && s.xdot_trend < 0.0 && s.shift_identity_max <= 1e-12;
        ok = ok && pass;
        d += s.boundary + ": delta " + num(s.delta) + " h " + num(s.h) + " sup_err " + num(s.sup_err_peak) + " -> " +
             num(s.sup_err_final) + " (ratio " + num(s.decay_ratio) + " <=0.5), |Xdot| trend " + num(s.xdot_trend) +
             " (<0), identity " + num(s.shift_identity_max) + " (<=1e-12); ";
    }
    return ok;
}

bool dissipation(std::string& d)
{
    if (g_runs.size() != 2) {
        d = "stability runs unavailable";
        return false;
    }
    bool ok = true;
    for (const auto& r : g_runs) {
        const ScenarioSummary& s = r.summary;
        const bool outflow = s.boundary == "outflow";
        const bool p1 = outflow ? s.P1_max <= 0.0 : s.P1_abs_max <= 1e-14;
        const bool pass = s.dissipation_pass_fraction >= 0.99 && p1;
        ok = ok && pass;
        d += s.boundary + ": pass fraction " + num(s.dissipation_pass_fraction) + " (>=0.99), C* " + num(s.c_star) +
             ", " + (outflow ? "max P1 " + num(s.P1_max) + " (<=0)" : "max |P1| " + num(s.P1_abs_max) + " (<=1e-14)") +
             "; ";
    }
    return ok;
}

bool boundary_scaling(std::string& d)
{
    std::vector<double> deltas{0.2, 0.1, 0.05}, rates;
    for (double delta : deltas) {
        ScenarioConfig c;
        c.delta = delta;
        c.perturbation = PerturbationShape::None;
        c.T_final = 20.0;
        c.write_outputs = false;
        c.sweep_parameter = "shift_weight.beta";
        for (double m : {5.0, 10.0, 15.0, 20.0})
            c.sweep_values.push_back(std::to_string(m / delta));
        const SweepReport rep = run_sweep(c);
        for (const auto& p : rep.points)
            if (!p.ok)
                throw NumericalError("sweep point beta=" + p.value + ": " + p.error);
        const auto fit = std::find_if(rep.fits.begin(), rep.fits.end(),
                                      [](const SweepFit& f) { return f.metric == "P45_time_avg"; });
        if (fit == rep.fits.end() || fit->points != 4)
            throw NumericalError("P45 fit unavailable");
        rates.push_back(fit->semilog_rate);
    }
    double num_c = 0.0, den_c = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        num_c += rates[i] * deltas[i];
        den_c += deltas[i] * deltas[i];
    }
    const double C = num_c / den_c;
    bool ok = C > 0.0;
    d = "rates";
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double rel = rates[i] / (C * deltas[i]) - 1.0;
        ok = ok && std::abs(rel) <= 0.5;
        d += " delta " + num(deltas[i]) + ": " + num(rates[i]) + " (" + num(100 * rel) + "%)";
    }
    d += ", shared C " + num(C) + " (each within 50% of C delta)";
    return ok;
}

} // namespace

int main()
{
    criterion(1, hugoniot_round_trip);
    criterion(2, profile_fidelity);
    criterion(3, jacobian_identity);
    criterion(4, poincare_suite);
    criterion(5, solver_order);
    criterion(6, transport);
    criterion(7, stability);
    criterion(8, dissipation);
    criterion(9, boundary_scaling);
    std::printf("%d of 9 criteria failed\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}
