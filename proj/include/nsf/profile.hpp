#pragma once

// Viscous 3-shock traveling wave. The reduced (u_bar, theta_bar) ODE is
// integrated along the unstable manifold of the left fixed point; rho_bar is
// recovered from the mass flux j = rho_-(u_- - sigma). The tabulated wave is
// translated so that rho_bar(0) = (rho_- + rho_+)/2.

#include <cstddef>
#include <vector>

#include "nsf/hugoniot.hpp"
#include "nsf/thermo.hpp"

namespace nsf {

struct ProfileOptions {
    double halfwidth = 0.0;     ///< 0 selects 40/delta
    double spacing = 0.05;      ///< uniform xi spacing of the table
    double tail_tol = 1e-8;     ///< end values must match the end states this closely
    double rtol = 1e-10;
    double atol = 1e-18;
    double launch_offset = 1e-6; ///< times delta, along the unstable eigenvector
    double tail_switch = 1e-7;   ///< times delta; below this the right tail is linearized
};

struct ShockProfile {
    GasParams gas;
    ShockData shock;
    double mass_flux = 0.0; ///< j = rho_-(u_- - sigma) < 0
    double dxi = 0.0;
    std::vector<double> xi;
    std::vector<double> rho_bar, u_bar, theta_bar;
    std::vector<double> d_rho, d_u, d_theta;
    std::vector<double> dd_u, dd_theta;
    std::size_t xi0_index = 0;
    double left_rate = 0.0;  ///< unstable eigenvalue at the left point
    double right_rate = 0.0; ///< slow (smaller |.|) eigenvalue at the right point

    std::size_t size() const { return xi.size(); }
    double xi_min() const { return xi.front(); }
    double xi_max() const { return xi.back(); }
};

/// Right-hand side of the reduced system, (mu u', kappa theta') divided out.
std::array<double, 2> profile_rhs(const GasParams& gas, const ShockData& shock, double u, double theta);

/// 2x2 Jacobian of profile_rhs, row major.
std::array<double, 4> profile_rhs_jacobian(const GasParams& gas, const ShockData& shock, double u, double theta);

/// Throws ValidationError for a degenerate or invalid shock, NumericalError when
/// the orbit leaves the physical region or does not settle within the half width.
ShockProfile build_profile(const GasParams& gas, const ShockData& shock, const ProfileOptions& opts = {});

/// Profile quantities at one point of the traveling-wave coordinate.
struct ProfileSample {
    State s;
    double d_rho = 0.0, d_u = 0.0, d_theta = 0.0;
    double dd_u = 0.0, dd_theta = 0.0;
};

/// Cubic Hermite interpolation at xi; outside the table the exact end state
/// with zero derivatives is returned.
ProfileSample sample_profile(const ShockProfile& p, double xi);

/// Profile evaluated at x - sigma t - X - beta.
ProfileSample sample_shifted(const ShockProfile& p, double x, double t, double sigma, double X, double beta);

/// Pointwise residuals of the traveling-wave system (mass, momentum, energy)
/// reconstructed from the tabulated values and derivatives; sup norm.
double vshock_residual(const ShockProfile& p);

/// sup |rho_bar (u_bar - sigma) - rho_+ (u_+ - sigma)|.
double mass_relation_residual(const ShockProfile& p);

struct ProfilePropertyRow {
    double delta = 0.0;
    bool monotone = false;
    double mass_residual = 0.0;
    double vshock_residual = 0.0;
    double rho_zero_error = 0.0;
    double tail_rate_fit = 0.0;   ///< fitted decay rate of |rho_bar - rho_+|
    double tail_rate_linear = 0.0; ///< |right_rate|
    double estderi_rho = 0.0;     ///< sup |rho' - rho_-/c_- u'| / |u'|
    double estderi_theta = 0.0;   ///< sup |theta' - (gamma-1)theta_-/c_- u'| / |u'|
    double uxx_ratio = 0.0;       ///< sup |u''| / |u'|
    double sigma_gap = 0.0;       ///< |sigma - sigma_minus|
    double sound_gap = 0.0;      ///< sup |sigma - u_bar - c_bar|
    bool sigma_minus_u_positive = false;
    double supersonic_fraction = 0.0; ///< share of nodes where sigma - u_bar - c_bar > 0
    bool weight_bounds = false;
};

struct ProfilePropertyReport {
    std::vector<ProfilePropertyRow> rows;
    double slope_estderi_rho = 0.0;
    double slope_estderi_theta = 0.0;
    double slope_sigma_gap = 0.0;
    double slope_tail_rate = 0.0;
    double slope_uxx = 0.0;
    double slope_sound_gap = 0.0;
};

ProfilePropertyRow profile_properties(const ShockProfile& p);

/// Builds one profile per delta from the given right state and fits log-log slopes.
ProfilePropertyReport verify_profile_properties(const GasParams& gas, const State& right,
                                                const std::vector<double>& delta_sweep,
                                                const ProfileOptions& opts = {});

/// sup over y in [0.05, 0.95] of |mu y'/(y(1-y)) - K delta| with y = (u_- - u_bar)/delta.
double jacobian_identity_check(const ShockProfile& p);

/// K delta = (gamma+1)/2 rho_- mu R gamma/(mu R gamma + kappa (gamma-1)^2) delta.
double jacobian_identity_constant(const GasParams& gas, const ShockData& shock);

} // namespace nsf
