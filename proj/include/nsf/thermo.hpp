#pragma once

// Ideal polytropic gas: equation of state, characteristic speeds, the
// six-region classification of the state space, and the entropy algebra
// used by the relative-entropy diagnostics.

#include <array>
#include <string_view>

namespace nsf {

/// Fluid constants. All four must be strictly positive and gamma > 1.
struct GasParams {
    double R = 1.0;
    double gamma = 5.0 / 3.0;
    double mu = 1.0;
    double kappa = 1.0;

    /// Throws ValidationError naming the offending field.
    void validate() const;
    double cv() const { return R / (gamma - 1.0); }
};

/// Primitive state (rho, u, theta); rho > 0 and theta > 0 in the admissible set.
struct State {
    double rho = 1.0;
    double u = 0.0;
    double theta = 1.0;

    bool admissible() const { return rho > 0.0 && theta > 0.0; }
};

/// Conserved state (rho, m = rho u, E = rho (e + u^2/2)); e carries no additive constant.
struct ConservedState {
    double rho = 1.0;
    double m = 0.0;
    double E = 0.0;
};

enum class RegionTag { SuperPlus, TransPlus, SubPlus, SubMinus, TransMinus, SuperMinus };

std::string_view to_string(RegionTag tag);

struct Eigenvalues {
    double lambda1;
    double lambda2;
    double lambda3;
};

double pressure(const GasParams& gas, const State& s);
double internal_energy(const GasParams& gas, double theta);
double sound_speed(const GasParams& gas, const State& s);
Eigenvalues eigenvalues(const GasParams& gas, const State& s);

/// Six-region classification by sign(u) and |u| vs c. `transonic_tol` widens
/// the |u| = c test; u = 0 (|u| <= zero_tol) lies in none of the regions and
/// throws ValidationError.
RegionTag classify_region(const GasParams& gas, const State& s, double transonic_tol = 0.0,
                          double zero_tol = 0.0);

/// s(U) = -R ln rho + R/(gamma-1) ln theta.
double entropy(const GasParams& gas, const State& s);

/// Phi(z) = z - ln z - 1, accurate near z = 1.
double phi(double z);

/// theta_bar * eta(U | Ubar) in closed form:
/// rho [R theta_bar Phi(rho_bar/rho) + R/(gamma-1) theta_bar Phi(theta/theta_bar) + (u-u_bar)^2/2].
double weighted_relative_entropy_density(const GasParams& gas, const State& s, const State& sbar);

ConservedState primitive_to_conserved(const GasParams& gas, const State& s);
/// Throws ValidationError when the recovered density or temperature is not positive.
State conserved_to_primitive(const GasParams& gas, const ConservedState& c);

} // namespace nsf
