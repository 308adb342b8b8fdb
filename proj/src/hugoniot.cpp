#include "nsf/hugoniot.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "nsf/errors.hpp"

namespace nsf {

namespace {

// Unknowns are drawn from z = (rho_-, u_-, theta_-, sigma).
enum Var { kRho = 0, kU = 1, kTheta = 2, kSigma = 3 };

using Vec4 = Eigen::Vector4d;

std::array<double, 3> residual_z(const GasParams& gas, const Vec4& z, const State& right)
{
    return rh_residual(gas, State{z[kRho], z[kU], z[kTheta]}, right, z[kSigma]);
}

// d residual / d z, 3x4.
Eigen::Matrix<double, 3, 4> residual_jacobian(const GasParams& gas, const Vec4& z, const State& right)
{
    const double rho = z[kRho], u = z[kU], th = z[kTheta], sig = z[kSigma];
    const double cv = gas.cv();
    const double p = gas.R * rho * th;
    const double E = rho * (cv * th + 0.5 * u * u);
    const ConservedState cr = primitive_to_conserved(gas, right);

    Eigen::Matrix<double, 3, 4> J;
    // mass: -sigma (rho_+ - rho) + (m_+ - rho u)
    J(0, kRho) = sig - u;
    J(0, kU) = -rho;
    J(0, kTheta) = 0.0;
    J(0, kSigma) = -(cr.rho - rho);
    // momentum: -sigma (m_+ - rho u) + (F_+ - rho u^2 - R rho theta)
    J(1, kRho) = sig * u - (u * u + gas.R * th);
    J(1, kU) = sig * rho - 2.0 * rho * u;
    J(1, kTheta) = -gas.R * rho;
    J(1, kSigma) = -(cr.m - rho * u);
    // energy: -sigma (E_+ - E) + (G_+ - u (E + p))
    const double dE_drho = cv * th + 0.5 * u * u;
    const double dE_du = rho * u;
    const double dE_dth = rho * cv;
    J(2, kRho) = sig * dE_drho - u * (dE_drho + gas.R * th);
    J(2, kU) = sig * dE_du - ((E + p) + u * dE_du);
    J(2, kTheta) = sig * dE_dth - u * (dE_dth + gas.R * rho);
    J(2, kSigma) = -(cr.E - E);
    return J;
}

double sup_norm(const std::array<double, 3>& r)
{
    return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

// Damped (Gauss-)Newton over the unknown subset `free`; the remaining
// entries of z stay fixed. Returns the final residual sup-norm.
double damped_newton(const GasParams& gas, const State& right, Vec4& z, std::initializer_list<int> free,
                     int max_iter, double target)
{
    const std::vector<int> cols(free);
    auto res = residual_z(gas, z, right);
    double norm = sup_norm(res);
    for (int it = 0; it < max_iter && norm > target; ++it) {
        const auto Jfull = residual_jacobian(gas, z, right);
        Eigen::MatrixXd J(3, cols.size());
        for (std::size_t k = 0; k < cols.size(); ++k)
            J.col(static_cast<Eigen::Index>(k)) = Jfull.col(cols[k]);
        const Eigen::Vector3d F(res[0], res[1], res[2]);
        const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);

        double lambda = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
            Vec4 trial = z;
            for (std::size_t k = 0; k < cols.size(); ++k)
                trial[cols[k]] += lambda * step[static_cast<Eigen::Index>(k)];
            if (!(trial[kRho] > 0.0 && trial[kTheta] > 0.0))
                continue;
            const auto r = residual_z(gas, trial, right);
            const double n = sup_norm(r);
            if (n < norm) {
                z = trial;
                res = r;
                norm = n;
                improved = true;
                break;
            }
        }
        if (!improved)
            break; // stalled; caller decides
    }
    return norm;
}

// Explicit point of the Hugoniot locus for given rho_- (ideal gas).
// Used as Newton start and as the 1-parameter reduction for bisection.
State hugoniot_point(const GasParams& gas, const State& right, double rho_minus, double* sigma_out)
{
    const double g = gas.gamma;
    const double rp = right.rho;
    const double denom = (g + 1.0) * rp - (g - 1.0) * rho_minus;
    if (!(denom > 0.0))
        throw ValidationError("rho_minus beyond the strong-shock compression limit (gamma+1)/(gamma-1)*rho_+");
    const double pp = pressure(gas, right);
    const double pm = pp * ((g + 1.0) * rho_minus - (g - 1.0) * rp) / denom;
    State left{rho_minus, 0.0, pm / (gas.R * rho_minus)};
    const double sigma = shock_speed_3(gas, left, right);
    left.u = sigma + rp * (right.u - sigma) / rho_minus;
    if (sigma_out)
        *sigma_out = sigma;
    return left;
}

ShockData degenerate_shock(const GasParams& gas, const State& right)
{
    ShockData s;
    s.left = right;
    s.right = right;
    s.sigma = eigenvalues(gas, right).lambda3;
    s.delta = 0.0;
    s.degenerate = true;
    return s;
}

// rho_- on the 3-curve where u_-(rho_-) = target, by bracketing.
double rho_for_left_velocity(const GasParams& gas, const State& right, double target)
{
    const double rho_cap = right.rho * (gas.gamma + 1.0) / (gas.gamma - 1.0);
    auto f = [&](double r) {
        if (r <= right.rho)
            return right.u - target;
        return hugoniot_point(gas, right, r, nullptr).u - target;
    };
    double lo = right.rho;
    double hi = right.rho * 1.01;
    while (f(hi) < 0.0) {
        lo = hi;
        hi = right.rho + 2.0 * (hi - right.rho);
        if (hi >= rho_cap)
            hi = 0.5 * (lo + rho_cap);
        if (rho_cap - lo < 1e-12 * rho_cap)
            throw NumericalError("no 3-shock with the requested left velocity");
    }
    std::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(std::abs(a), std::abs(b)); };
    const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi), tol, iters);
    return 0.5 * (bracket.first + bracket.second);
}

ShockData finish(const GasParams& gas, const State& right, const Vec4& z, const HugoniotOptions& opts)
{
    ShockData s;
    s.left = State{z[kRho], z[kU], z[kTheta]};
    s.right = right;
    s.sigma = z[kSigma];
    s.delta = std::abs(right.u - s.left.u);
    validate_shock(gas, s, opts.rh_tol);
    return s;
}

} // namespace

double ShockData::sigma_minus(const GasParams& gas) const { return left.u + sound_speed(gas, left); }

std::array<double, 3> rh_residual(const GasParams& gas, const State& left, const State& right, double sigma)
{
    const ConservedState cl = primitive_to_conserved(gas, left);
    const ConservedState cr = primitive_to_conserved(gas, right);
    const double pl = pressure(gas, left);
    const double pr = pressure(gas, right);
    return {
        -sigma * (cr.rho - cl.rho) + (cr.m - cl.m),
        -sigma * (cr.m - cl.m) + (cr.m * right.u + pr - cl.m * left.u - pl),
        -sigma * (cr.E - cl.E) + (right.u * (cr.E + pr) - left.u * (cl.E + pl)),
    };
}

double shock_speed_3(const GasParams& gas, const State& left, const State& right)
{
    const double drho = left.rho - right.rho;
    if (drho == 0.0)
        throw ValidationError("shock_speed_3: rho_- == rho_+ (zero-amplitude shock has no RH speed)");
    const double radicand = (left.rho / right.rho) * (pressure(gas, left) - pressure(gas, right)) / drho;
    if (!(radicand > 0.0))
        throw ValidationError("shock_speed_3: nonpositive radicand; states are not on the 3-shock branch");
    return right.u + std::sqrt(radicand);
}

void validate_shock(const GasParams& gas, const ShockData& s, double rh_tol)
{
    if (!s.left.admissible() || !s.right.admissible())
        throw ValidationError("shock end states must have positive density and temperature");
    if (s.degenerate)
        return;
    const double res = sup_norm(rh_residual(gas, s.left, s.right, s.sigma));
    if (!(res <= rh_tol))
        throw NumericalError("Rankine-Hugoniot residual " + std::to_string(res) + " above tolerance");
    if (!(s.left.rho > s.right.rho && s.left.u > s.right.u && s.left.theta > s.right.theta))
        throw ValidationError("3-shock ordering rho_- > rho_+, u_- > u_+, theta_- > theta_+ violated");
    const double l3l = eigenvalues(gas, s.left).lambda3;
    const double l3r = eigenvalues(gas, s.right).lambda3;
    if (!(l3l > s.sigma && s.sigma > l3r))
        throw ValidationError("Lax condition lambda3(left) > sigma > lambda3(right) violated");
    if (!(s.sigma > 0.0))
        throw ValidationError("shock speed must be positive (outgoing shock); got sigma = " +
                              std::to_string(s.sigma));
}

ShockData left_state_on_S3(const GasParams& gas, const State& right, double rho_minus, const HugoniotOptions& opts)
{
    gas.validate();
    if (!right.admissible())
        throw ValidationError("right state must have positive density and temperature");
    if (rho_minus < right.rho)
        throw ValidationError("left_state_on_S3: the 3-shock branch needs rho_- >= rho_+");
    if (rho_minus == right.rho)
        return degenerate_shock(gas, right);

    double sigma = 0.0;
    const State guess = hugoniot_point(gas, right, rho_minus, &sigma);
    Vec4 z(rho_minus, guess.u, guess.theta, sigma);
    const double norm = damped_newton(gas, right, z, {kU, kTheta, kSigma}, opts.max_newton, 1e-2 * opts.rh_tol);
    if (!(norm <= opts.rh_tol))
        throw NumericalError("left_state_on_S3: Newton did not converge (residual " + std::to_string(norm) + ")");
    return finish(gas, right, z, opts);
}

ShockData shock_with_amplitude(const GasParams& gas, const State& right, double delta, const HugoniotOptions& opts)
{
    if (!(delta >= 0.0))
        throw ValidationError("shock amplitude delta must be nonnegative");
    if (delta == 0.0)
        return degenerate_shock(gas, right);
    return left_state_on_S3(gas, right, rho_for_left_velocity(gas, right, right.u + delta), opts);
}

ShockData outflow_closure(const GasParams& gas, const State& right, double u_minus, double theta_minus,
                          const HugoniotOptions& opts)
{
    gas.validate();
    if (!(theta_minus > 0.0))
        throw ValidationError("outflow_closure: theta_minus must be positive");
    if (!(u_minus < 0.0))
        throw ValidationError("outflow_closure: outflow needs u_minus < 0");
    if (u_minus < right.u)
        throw ValidationError("outflow_closure: needs u_+ <= u_minus");
    if (u_minus == right.u) {
        if (theta_minus != right.theta)
            throw ValidationError("outflow_closure: (u_-, theta_-) is not on the 3-shock curve");
        return degenerate_shock(gas, right);
    }

    // 1-parameter reduction (match u_- along the curve), then Gauss-Newton on
    // the full residual with (u_-, theta_-) held at the data.
    const double rho0 = rho_for_left_velocity(gas, right, u_minus);
    double sigma0 = 0.0;
    hugoniot_point(gas, right, rho0, &sigma0);
    Vec4 z(rho0, u_minus, theta_minus, sigma0);
    const double norm = damped_newton(gas, right, z, {kRho, kSigma}, opts.max_newton, 1e-2 * opts.rh_tol);
    if (!(norm <= opts.on_curve_tol))
        throw ValidationError("outflow_closure: (u_-, theta_-) is not on the 3-shock curve (RH residual " +
                              std::to_string(norm) + ")");
    ShockData s;
    s.left = State{z[kRho], u_minus, theta_minus};
    s.right = right;
    s.sigma = z[kSigma];
    s.delta = u_minus - right.u;
    validate_shock(gas, s, opts.on_curve_tol);
    return s;
}

ShockData impermeable_closure(const GasParams& gas, const State& right, const HugoniotOptions& opts)
{
    gas.validate();
    if (!right.admissible())
        throw ValidationError("right state must have positive density and temperature");
    if (!(right.u < 0.0))
        throw ValidationError("impermeable_closure: needs u_+ < 0");

    const double rho0 = rho_for_left_velocity(gas, right, 0.0);
    double sigma0 = 0.0;
    const State guess = hugoniot_point(gas, right, rho0, &sigma0);
    Vec4 z(rho0, 0.0, guess.theta, sigma0);
    const double norm = damped_newton(gas, right, z, {kRho, kTheta, kSigma}, opts.max_newton, 1e-2 * opts.rh_tol);
    if (!(norm <= opts.rh_tol))
        throw NumericalError("impermeable_closure: Newton did not converge (residual " + std::to_string(norm) + ")");
    return finish(gas, right, z, opts);
}

} // namespace nsf
