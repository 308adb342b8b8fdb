#pragma once

// Shared fixture: a built profile, a solver grid, and a field made of the
// shifted profile plus Gaussian offsets.

#include <cmath>

#include "nsf/diagnostics.hpp"
#include "nsf/halfline_solver.hpp"
#include "nsf/profile.hpp"
#include "nsf/shift_weight.hpp"

namespace synth {

struct Setup {
    nsf::GasParams gas;
    nsf::ShockData shock;
    nsf::ShockProfile prof;
    nsf::Grid1D grid;
    double beta = 0.0;
    double X = 0.0;
    double t = 0.0;
    nsf::ReferenceGrid ref;
    nsf::DiagContext ctx;

    Setup(double delta, double L, std::size_t N, double beta_, const nsf::State& right = {1.0, -1.2, 1.0})
        : shock(nsf::shock_with_amplitude(gas, right, delta)), prof(nsf::build_profile(gas, shock)),
          grid(nsf::Grid1D::make(L, N)), beta(beta_)
    {
        ref = nsf::shifted_reference(prof, grid, t, X, beta);
        ctx = nsf::DiagContext{gas, shock, grid, nsf::shift_constant(gas, shock)};
    }

    nsf::Field reference_field() const
    {
        nsf::Field f;
        f.t = t;
        f.rho = ref.rho;
        f.u = ref.u;
        f.theta = ref.theta;
        return f;
    }

    /// Reference plus amp * exp(-((x-c)/w)^2) per component.
    nsf::Field bumped(double ar, double au, double at, double c, double w) const
    {
        nsf::Field f = reference_field();
        for (std::size_t i = 0; i < grid.N; ++i) {
            const double z = (grid.x(i) - c) / w;
            const double g = std::exp(-z * z);
            f.rho[i] += ar * g;
            f.u[i] += au * g;
            f.theta[i] += at * g;
        }
        return f;
    }
};

} // namespace synth
