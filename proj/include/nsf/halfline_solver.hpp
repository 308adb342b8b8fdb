#pragma once

// Explicit finite differences for the nonconservative NSF system on [0, L].
// Node 0 carries the wall/outflow condition (u, theta prescribed, rho
// evolved by one-sided continuity); node N-1 is pinned to the far state.

#include <cstddef>
#include <functional>
#include <vector>

#include "nsf/thermo.hpp"

namespace nsf {

struct Grid1D {
    double L = 0.0;
    std::size_t N = 0;

    /// Throws ValidationError unless N >= 16 and L > 0.
    static Grid1D make(double L, std::size_t N);
    double h() const { return L / static_cast<double>(N - 1); }
    double x(std::size_t i) const { return static_cast<double>(i) * h(); }
};

struct Field {
    double t = 0.0;
    std::vector<double> rho, u, theta;

    std::size_t size() const { return rho.size(); }
    State at(std::size_t i) const { return {rho[i], u[i], theta[i]}; }
};

enum class BoundaryKind { Outflow, Impermeable };

struct BoundarySpec {
    BoundaryKind kind = BoundaryKind::Outflow;
    double u_minus = -1.0;
    double theta_minus = 1.0;

    /// Outflow needs u_minus < 0, impermeable u_minus == 0, theta_minus > 0.
    void validate() const;
};

/// Added to the right-hand sides (rho, u, theta) at time t; used by
/// manufactured-solution tests.
using SourceFn = std::function<void(double t, const Grid1D& grid, std::vector<double>& s_rho,
                                    std::vector<double>& s_u, std::vector<double>& s_theta)>;

struct SolverOptions {
    double cfl = 0.4;
    double cfl_diffusive = 0.25;
    bool central_advection = false; ///< centre u rho_x too (verification only)
    SourceFn source;
};

struct Solver {
    GasParams gas;
    Grid1D grid;
    BoundarySpec bc;
    State far;
    SolverOptions opts;

    /// Validates every component; mu and kappa must be positive.
    Solver(const GasParams& gas, const Grid1D& grid, const BoundarySpec& bc, const State& far,
           SolverOptions opts = {});

    /// Largest dt allowed by the advective and diffusive limits.
    double stable_dt(const Field& f) const;

    /// Time derivatives at every node; entries at node N-1 are zero and
    /// node 0 carries only the density equation.
    void rhs(const Field& f, std::vector<double>& d_rho, std::vector<double>& d_u,
             std::vector<double>& d_theta) const;

    /// Sets u, theta at node 0 and the whole state at node N-1.
    void apply_bc(Field& f) const;

    /// One Heun (two-stage SSP Runge-Kutta) step. Throws NumericalError on a
    /// CFL violation or loss of positivity.
    Field step(const Field& f, double dt) const;

    /// Same step with a scalar ODE y' = g(stage field, y) advanced by the
    /// same two stages; `y` is updated in place. When `g0` is given it is
    /// used as the first-stage value instead of calling g(f, y).
    Field step_coupled(const Field& f, double dt, double& y,
                       const std::function<double(const Field&, double)>& g, const double* g0 = nullptr) const;
};

/// Throws NumericalError naming the first node with nonpositive or non-finite rho or theta.
void check_positivity(const Field& f);

} // namespace nsf

#include "nsf/profile.hpp"

namespace nsf {

enum class PerturbationShape { None, Gaussian };

/// amp_* * exp(-((x - center)/width)^2) added to each component.
struct PerturbationSpec {
    PerturbationShape shape = PerturbationShape::None;
    double amp_rho = 0.0;
    double amp_u = 0.0;
    double amp_theta = 0.0;
    double center = 0.0;
    double width = 1.0;
    double compat_tol = 1e-12;

    /// Profile-independent offsets (rho, u, theta) at x.
    std::array<double, 3> at(double x) const;
};

/// Profile at x - beta plus the perturbation. The perturbation must vanish
/// (to compat_tol) in u, theta at x = 0 and in every component at x = L;
/// otherwise ValidationError.
Field initialize(const Solver& solver, const ShockProfile& profile, double beta, const PerturbationSpec& pert);

} // namespace nsf
