#pragma once

// Rankine-Hugoniot relations for the 3-shock family and the two boundary
// closures (outflow, impermeable wall).

#include <array>

#include "nsf/thermo.hpp"

namespace nsf {

/// A 3-shock joining `left` (x -> -inf) to `right` (x -> +inf) at speed sigma.
struct ShockData {
    State left;
    State right;
    double sigma = 0.0;
    double delta = 0.0; ///< |u_+ - u_-|
    bool degenerate = false; ///< zero-amplitude limit, left == right

    /// sigma_- = u_- + c_-, the left characteristic speed.
    double sigma_minus(const GasParams& gas) const;
};

struct HugoniotOptions {
    double rh_tol = 1e-10;       ///< sup-norm RH residual accepted for a converged root
    double on_curve_tol = 1e-8;  ///< outflow: residual below which (u_-, theta_-) is on S3^P
    int max_newton = 50;
};

/// Mass, momentum, energy residuals of the jump conditions, in that order.
std::array<double, 3> rh_residual(const GasParams& gas, const State& left, const State& right, double sigma);

/// sigma = u_+ + sqrt((rho_-/rho_+) (p_- - p_+)/(rho_- - rho_+)), positive-radicand form.
double shock_speed_3(const GasParams& gas, const State& left, const State& right);

/// Checks every ShockData invariant; throws ValidationError (admissibility)
/// or NumericalError (RH residual above tolerance).
void validate_shock(const GasParams& gas, const ShockData& shock, double rh_tol = 1e-10);

/// Left state on the 3-shock curve through `right`, parameterized by rho_- >= rho_+.
ShockData left_state_on_S3(const GasParams& gas, const State& right, double rho_minus,
                           const HugoniotOptions& opts = {});

/// Left state on the 3-shock curve with u_- = u_+ + delta.
ShockData shock_with_amplitude(const GasParams& gas, const State& right, double delta,
                               const HugoniotOptions& opts = {});

/// Given boundary data (u_-, theta_-) with u_+ <= u_- < 0, find rho_- and sigma.
/// Throws ValidationError when (u_-, theta_-) is not on the projected curve.
ShockData outflow_closure(const GasParams& gas, const State& right, double u_minus, double theta_minus,
                          const HugoniotOptions& opts = {});

/// Wall closure: u_- = 0, solve for (rho_-, theta_-, sigma). Requires u_+ < 0.
ShockData impermeable_closure(const GasParams& gas, const State& right, const HugoniotOptions& opts = {});

} // namespace nsf
