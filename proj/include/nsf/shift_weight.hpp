#pragma once

// Weight a(xi) = 1 + (u_- - u_bar(xi))/sqrt(delta) and the shift ODE
//   X' = -(M/delta) int a [R theta_bar/rho_bar (rho - rho_bar) rho_bar_x
//                          + rho (u - u_bar) u_bar_x
//                          + R/(gamma-1) rho/theta_bar (theta - theta_bar) theta_bar_x] dx
// with every barred quantity evaluated at x - sigma t - X - beta.

#include <vector>

#include "nsf/halfline_solver.hpp"
#include "nsf/profile.hpp"

namespace nsf {

double weight_a(const ShockData& shock, double u_bar);
double weight_a_x(const ShockData& shock, double d_u_bar);
double weight_a(const ShockProfile& p, double xi);

/// M = (gamma+1)/rho_- [1 + 2 kappa (gamma-1)^2/(mu R gamma)].
double shift_constant(const GasParams& gas, const ShockData& shock);

struct ShiftState {
    double X = 0.0;
    double Xdot = 0.0;
    double beta = 0.0;
    double M = 0.0;
    double delta = 0.0;
};

ShiftState make_shift_state(const GasParams& gas, const ShockData& shock, double beta);

/// Shifted profile and weight tabulated on the solver grid.
struct ReferenceGrid {
    std::vector<double> rho, u, theta;
    std::vector<double> d_rho, d_u, d_theta;
    std::vector<double> a, a_x;
};

ReferenceGrid shifted_reference(const ShockProfile& p, const Grid1D& grid, double t, double X, double beta);

/// The three integrands of the shift ODE, without the -(M/delta) factor.
struct ShiftIntegrands {
    std::vector<double> y1, y2, y3; ///< velocity, density and temperature parts
};
ShiftIntegrands shift_integrands(const GasParams& gas, const Field& f, const ReferenceGrid& ref);

/// X' by trapezoid quadrature on the solver grid.
double shift_rhs(const GasParams& gas, const Field& f, const ReferenceGrid& ref, double h, double M, double delta);
double shift_rhs(const Field& f, const ShockProfile& p, const ShiftState& s, const Grid1D& grid);

/// Heun update from the two stage evaluations.
ShiftState advance_shift(const ShiftState& s, double k1, double k2, double dt);

/// Largest profile tail mass |bar(L - sigma T - beta) - bar_+| that the
/// domain truncation drops by the final time; ValidationError above `tol`.
double check_truncation(const ShockProfile& p, const Grid1D& grid, double T, double beta, double tol = 1e-10);

/// Least-squares slope of |Xdot| against t over the final half of the series.
double xdot_trend(const std::vector<double>& t, const std::vector<double>& xdot);

} // namespace nsf
