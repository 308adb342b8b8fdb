#include "nsf/shift_weight.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nsf/errors.hpp"
#include "nsf/numerics.hpp"

namespace nsf {

double weight_a(const ShockData& shock, double u_bar) { return 1.0 + (shock.left.u - u_bar) / std::sqrt(shock.delta); }

double weight_a_x(const ShockData& shock, double d_u_bar) { return -d_u_bar / std::sqrt(shock.delta); }

double weight_a(const ShockProfile& p, double xi) { return weight_a(p.shock, sample_profile(p, xi).s.u); }

double shift_constant(const GasParams& gas, const ShockData& shock)
{
    const double gm1 = gas.gamma - 1.0;
    return (gas.gamma + 1.0) / shock.left.rho * (1.0 + 2.0 * gas.kappa * gm1 * gm1 / (gas.mu * gas.R * gas.gamma));
}

ShiftState make_shift_state(const GasParams& gas, const ShockData& shock, double beta)
{
    if (!(beta > 0.0))
        throw ValidationError("beta must be positive");
    if (!(shock.delta > 0.0))
        throw ValidationError("shift needs a shock with positive amplitude");
    ShiftState s;
    s.beta = beta;
    s.M = shift_constant(gas, shock);
    s.delta = shock.delta;
    return s;
}

ReferenceGrid shifted_reference(const ShockProfile& p, const Grid1D& grid, double t, double X, double beta)
{
    ReferenceGrid r;
    const std::size_t N = grid.N;
    for (auto* v : {&r.rho, &r.u, &r.theta, &r.d_rho, &r.d_u, &r.d_theta, &r.a, &r.a_x})
        v->resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const ProfileSample s = sample_shifted(p, grid.x(i), t, p.shock.sigma, X, beta);
        r.rho[i] = s.s.rho;
        r.u[i] = s.s.u;
        r.theta[i] = s.s.theta;
        r.d_rho[i] = s.d_rho;
        r.d_u[i] = s.d_u;
        r.d_theta[i] = s.d_theta;
        r.a[i] = weight_a(p.shock, s.s.u);
        r.a_x[i] = weight_a_x(p.shock, s.d_u);
    }
    return r;
}

ShiftIntegrands shift_integrands(const GasParams& gas, const Field& f, const ReferenceGrid& ref)
{
    const std::size_t N = f.size();
    ShiftIntegrands w;
    w.y1.resize(N);
    w.y2.resize(N);
    w.y3.resize(N);
    const double cv = gas.cv();
    for (std::size_t i = 0; i < N; ++i) {
        const double a = ref.a[i];
        w.y1[i] = a * f.rho[i] * (f.u[i] - ref.u[i]) * ref.d_u[i];
        w.y2[i] = gas.R * a * (ref.theta[i] / ref.rho[i]) * (f.rho[i] - ref.rho[i]) * ref.d_rho[i];
        w.y3[i] = cv * a * (f.rho[i] / ref.theta[i]) * (f.theta[i] - ref.theta[i]) * ref.d_theta[i];
    }
    return w;
}

double shift_rhs(const GasParams& gas, const Field& f, const ReferenceGrid& ref, double h, double M, double delta)
{
    const ShiftIntegrands w = shift_integrands(gas, f, ref);
    std::vector<double> sum(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        sum[i] = w.y2[i] + w.y1[i] + w.y3[i];
    return -(M / delta) * trapezoid(sum, h);
}

double shift_rhs(const Field& f, const ShockProfile& p, const ShiftState& s, const Grid1D& grid)
{
    const ReferenceGrid ref = shifted_reference(p, grid, f.t, s.X, s.beta);
    return shift_rhs(p.gas, f, ref, grid.h(), s.M, s.delta);
}

ShiftState advance_shift(const ShiftState& s, double k1, double k2, double dt)
{
    ShiftState out = s;
    out.X = s.X + 0.5 * dt * (k1 + k2);
    out.Xdot = k1;
    return out;
}

double check_truncation(const ShockProfile& p, const Grid1D& grid, double T, double beta, double tol)
{
    const ProfileSample s = sample_profile(p, grid.L - p.shock.sigma * T - beta);
    const State& r = p.shock.right;
    const double tail =
        std::max({std::abs(s.s.rho - r.rho), std::abs(s.s.u - r.u), std::abs(s.s.theta - r.theta)});
    if (tail > tol)
        throw ValidationError("domain too short: profile tail beyond x = L is " + std::to_string(tail) +
                              " at the final time (limit " + std::to_string(tol) + ")");
    return tail;
}

double xdot_trend(const std::vector<double>& t, const std::vector<double>& xdot)
{
    const std::size_t n = t.size();
    if (n < 4)
        return 0.0;
    std::vector<double> tt(t.begin() + static_cast<long>(n / 2), t.end());
    std::vector<double> xx;
    for (std::size_t i = n / 2; i < n; ++i)
        xx.push_back(std::abs(xdot[i]));
    return linear_fit(tt, xx).slope;
}

} // namespace nsf
