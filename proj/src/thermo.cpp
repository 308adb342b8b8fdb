#include "nsf/thermo.hpp"

#include <cmath>
#include <string>

#include "nsf/errors.hpp"

namespace nsf {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string(name) + " must be positive and finite (got " + std::to_string(v) + ")");
}

} // namespace

void GasParams::validate() const
{
    require_positive(R, "R");
    require_positive(mu, "mu");
    require_positive(kappa, "kappa");
    if (!(gamma > 1.0) || !std::isfinite(gamma))
        throw ValidationError("gamma must exceed 1 (got " + std::to_string(gamma) + ")");
}

std::string_view to_string(RegionTag tag)
{
    switch (tag) {
    case RegionTag::SuperPlus: return "SuperPlus";
    case RegionTag::TransPlus: return "TransPlus";
    case RegionTag::SubPlus: return "SubPlus";
    case RegionTag::SubMinus: return "SubMinus";
    case RegionTag::TransMinus: return "TransMinus";
    case RegionTag::SuperMinus: return "SuperMinus";
    }
    return "?";
}

double pressure(const GasParams& gas, const State& s) { return gas.R * s.rho * s.theta; }

double internal_energy(const GasParams& gas, double theta) { return gas.cv() * theta; }

double sound_speed(const GasParams& gas, const State& s)
{
    if (!(s.theta > 0.0))
        throw ValidationError("sound_speed: theta must be positive");
    return std::sqrt(gas.gamma * gas.R * s.theta);
}

Eigenvalues eigenvalues(const GasParams& gas, const State& s)
{
    const double c = sound_speed(gas, s);
    return {s.u - c, s.u, s.u + c};
}

RegionTag classify_region(const GasParams& gas, const State& s, double transonic_tol, double zero_tol)
{
    const double c = sound_speed(gas, s);
    if (std::abs(s.u) <= zero_tol)
        throw ValidationError("classify_region: u = " + std::to_string(s.u) +
                              " is on the u = 0 interface between SubPlus and SubMinus");
    if (s.u > 0.0) {
        if (std::abs(s.u - c) <= transonic_tol)
            return RegionTag::TransPlus;
        return s.u > c ? RegionTag::SuperPlus : RegionTag::SubPlus;
    }
    if (std::abs(s.u + c) <= transonic_tol)
        return RegionTag::TransMinus;
    return s.u < -c ? RegionTag::SuperMinus : RegionTag::SubMinus;
}

double entropy(const GasParams& gas, const State& s)
{
    return -gas.R * std::log(s.rho) + gas.cv() * std::log(s.theta);
}

double phi(double z)
{
    const double t = z - 1.0;
    if (std::abs(t) < 1e-3) {
        // t - log1p(t) = t^2/2 - t^3/3 + t^4/4 - ...
        double term = t * t;
        double sum = 0.0;
        for (int k = 2; k <= 9; ++k) {
            sum += ((k % 2 == 0) ? 1.0 : -1.0) * term / k;
            term *= t;
        }
        return sum;
    }
    return t - std::log1p(t);
}

double weighted_relative_entropy_density(const GasParams& gas, const State& s, const State& sbar)
{
    const double du = s.u - sbar.u;
    return s.rho * (gas.R * sbar.theta * phi(sbar.rho / s.rho) + gas.cv() * sbar.theta * phi(s.theta / sbar.theta) +
                    0.5 * du * du);
}

ConservedState primitive_to_conserved(const GasParams& gas, const State& s)
{
    return {s.rho, s.rho * s.u, s.rho * (internal_energy(gas, s.theta) + 0.5 * s.u * s.u)};
}

State conserved_to_primitive(const GasParams& gas, const ConservedState& c)
{
    if (!(c.rho > 0.0))
        throw ValidationError("conserved_to_primitive: density must be positive");
    const double u = c.m / c.rho;
    const double theta = (c.E / c.rho - 0.5 * u * u) / gas.cv();
    if (!(theta > 0.0))
        throw ValidationError("conserved_to_primitive: recovered temperature is not positive");
    return {c.rho, u, theta};
}

} // namespace nsf
