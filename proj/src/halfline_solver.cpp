#include "nsf/halfline_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsf/errors.hpp"

namespace nsf {

Grid1D Grid1D::make(double L, std::size_t N)
{
    if (N < 16)
        throw ValidationError("grid needs N >= 16 nodes");
    if (!(L > 0.0) || !std::isfinite(L))
        throw ValidationError("grid length L must be positive");
    return Grid1D{L, N};
}

void BoundarySpec::validate() const
{
    if (!(theta_minus > 0.0))
        throw ValidationError("boundary theta_minus must be positive");
    if (kind == BoundaryKind::Outflow && !(u_minus < 0.0))
        throw ValidationError("outflow boundary needs u_minus < 0");
    if (kind == BoundaryKind::Impermeable && u_minus != 0.0)
        throw ValidationError("impermeable boundary needs u_minus = 0");
}

Solver::Solver(const GasParams& g, const Grid1D& gr, const BoundarySpec& b, const State& f, SolverOptions o)
    : gas(g), grid(Grid1D::make(gr.L, gr.N)), bc(b), far(f), opts(std::move(o))
{
    gas.validate();
    bc.validate();
    if (!far.admissible())
        throw ValidationError("far state must have positive density and temperature");
    if (!(opts.cfl > 0.0) || !(opts.cfl_diffusive > 0.0))
        throw ValidationError("CFL numbers must be positive");
}

double Solver::stable_dt(const Field& f) const
{
    const double h = grid.h();
    double amax = 0.0, rmin = f.rho[0];
    for (std::size_t i = 0; i < f.size(); ++i) {
        amax = std::max(amax, std::abs(f.u[i]) + std::sqrt(gas.gamma * gas.R * f.theta[i]));
        rmin = std::min(rmin, f.rho[i]);
    }
    const double nu = std::max(gas.mu, gas.kappa * (gas.gamma - 1.0) / gas.R);
    return std::min(opts.cfl * h / amax, opts.cfl_diffusive * h * h * rmin / nu);
}

void Solver::rhs(const Field& f, std::vector<double>& dr, std::vector<double>& du, std::vector<double>& dt) const
{
    const std::size_t N = f.size();
    const double h = grid.h();
    const double ih = 1.0 / h, i2h = 0.5 / h, ih2 = 1.0 / (h * h);
    const double cv = gas.cv();
    dr.assign(N, 0.0);
    du.assign(N, 0.0);
    dt.assign(N, 0.0);
    const auto& r = f.rho;
    const auto& u = f.u;
    const auto& th = f.theta;

    for (std::size_t i = 1; i + 1 < N; ++i) {
        double rx;
        if (opts.central_advection)
            rx = (r[i + 1] - r[i - 1]) * i2h;
        else
            rx = u[i] > 0.0 ? (r[i] - r[i - 1]) * ih : (r[i + 1] - r[i]) * ih;
        const double ux = (u[i + 1] - u[i - 1]) * i2h;
        const double tx = (th[i + 1] - th[i - 1]) * i2h;
        const double px = gas.R * (r[i + 1] * th[i + 1] - r[i - 1] * th[i - 1]) * i2h;
        const double uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * ih2;
        const double txx = (th[i + 1] - 2.0 * th[i] + th[i - 1]) * ih2;
        const double p = gas.R * r[i] * th[i];
        dr[i] = -u[i] * rx - r[i] * ux;
        du[i] = -u[i] * ux - px / r[i] + gas.mu * uxx / r[i];
        dt[i] = -u[i] * tx - p * ux / (cv * r[i]) + (gas.kappa * txx + gas.mu * ux * ux) / (cv * r[i]);
    }
    // node 0: density only, upwind into the domain (u_0 <= 0)
    const double rx0 = opts.central_advection ? (-3.0 * r[0] + 4.0 * r[1] - r[2]) * i2h : (r[1] - r[0]) * ih;
    const double ux0 = (-3.0 * u[0] + 4.0 * u[1] - u[2]) * i2h;
    dr[0] = -u[0] * rx0 - r[0] * ux0;

    if (opts.source) {
        std::vector<double> sr(N, 0.0), su(N, 0.0), st(N, 0.0);
        opts.source(f.t, grid, sr, su, st);
        for (std::size_t i = 0; i + 1 < N; ++i) {
            dr[i] += sr[i];
            if (i > 0) {
                du[i] += su[i];
                dt[i] += st[i];
            }
        }
    }
}

void Solver::apply_bc(Field& f) const
{
    f.u[0] = bc.u_minus;
    f.theta[0] = bc.theta_minus;
    const std::size_t n = f.size() - 1;
    f.rho[n] = far.rho;
    f.u[n] = far.u;
    f.theta[n] = far.theta;
}

void check_positivity(const Field& f)
{
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f.rho[i] > 0.0) || !(f.theta[i] > 0.0) || !std::isfinite(f.u[i]))
            throw NumericalError("positivity lost at node " + std::to_string(i) + " (t = " + std::to_string(f.t) +
                                 ", rho = " + std::to_string(f.rho[i]) + ", theta = " + std::to_string(f.theta[i]) +
                                 ")");
    }
}

Field Solver::step(const Field& f, double dt) const
{
    double y = 0.0;
    return step_coupled(f, dt, y, [](const Field&, double) { return 0.0; });
}

Field Solver::step_coupled(const Field& f, double dt, double& y, const std::function<double(const Field&, double)>& g,
                           const double* g0) const
{
    if (!(dt > 0.0) || dt > stable_dt(f) * (1.0 + 1e-12))
        throw NumericalError("time step " + std::to_string(dt) + " violates the CFL limit " +
                             std::to_string(stable_dt(f)));
    const std::size_t N = f.size();
    std::vector<double> dr, du, dth;

    const double k1 = g0 ? *g0 : g(f, y);
    rhs(f, dr, du, dth);
    Field s1 = f;
    s1.t = f.t + dt;
    for (std::size_t i = 0; i < N; ++i) {
        s1.rho[i] += dt * dr[i];
        s1.u[i] += dt * du[i];
        s1.theta[i] += dt * dth[i];
    }
    apply_bc(s1);
    check_positivity(s1);
    const double y1 = y + dt * k1;

    const double k2 = g(s1, y1);
    rhs(s1, dr, du, dth);
    Field out = f;
    out.t = f.t + dt;
    for (std::size_t i = 0; i < N; ++i) {
        out.rho[i] = 0.5 * (f.rho[i] + s1.rho[i] + dt * dr[i]);
        out.u[i] = 0.5 * (f.u[i] + s1.u[i] + dt * du[i]);
        out.theta[i] = 0.5 * (f.theta[i] + s1.theta[i] + dt * dth[i]);
    }
    apply_bc(out);
    check_positivity(out);
    y = 0.5 * (y + y1 + dt * k2);
    return out;
}

} // namespace nsf

namespace nsf {

std::array<double, 3> PerturbationSpec::at(double x) const
{
    if (shape == PerturbationShape::None)
        return {0.0, 0.0, 0.0};
    const double z = (x - center) / width;
    const double g = std::exp(-z * z);
    return {amp_rho * g, amp_u * g, amp_theta * g};
}

Field initialize(const Solver& solver, const ShockProfile& profile, double beta, const PerturbationSpec& pert)
{
    if (!(beta > 0.0))
        throw ValidationError("beta must be positive");
    if (pert.shape == PerturbationShape::Gaussian && !(pert.width > 0.0))
        throw ValidationError("perturbation width must be positive");
    const Grid1D& g = solver.grid;
    const auto p0 = pert.at(0.0);
    const auto pL = pert.at(g.L);
    if (std::abs(p0[1]) > pert.compat_tol || std::abs(p0[2]) > pert.compat_tol)
        throw ValidationError("perturbation does not vanish at x = 0 (incompatible with the boundary data)");
    if (std::max({std::abs(pL[0]), std::abs(pL[1]), std::abs(pL[2])}) > pert.compat_tol)
        throw ValidationError("perturbation does not vanish at x = L");

    Field f;
    f.rho.resize(g.N);
    f.u.resize(g.N);
    f.theta.resize(g.N);
    for (std::size_t i = 0; i < g.N; ++i) {
        const double x = g.x(i);
        const ProfileSample s = sample_profile(profile, x - beta);
        const auto d = pert.at(x);
        f.rho[i] = s.s.rho + d[0];
        f.u[i] = s.s.u + d[1];
        f.theta[i] = s.s.theta + d[2];
    }
    check_positivity(f);
    return f;
}

} // namespace nsf
