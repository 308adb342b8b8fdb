#include "doctest.h"

#include <cmath>
#include <vector>

#include "nsf/errors.hpp"
#include "nsf/numerics.hpp"
#include "nsf/profile.hpp"

using namespace nsf;

namespace {

const State kRight{1.0, -1.2, 1.0};

ShockProfile make(double delta, ProfileOptions o = {})
{
    GasParams g;
    return build_profile(g, shock_with_amplitude(g, kRight, delta), o);
}

} // namespace

TEST_CASE("linearization rates at the fixed points")
{
    const ShockProfile p = make(0.1);
    CHECK(p.left_rate == doctest::Approx(0.1125).epsilon(2e-3));
    CHECK(p.right_rate == doctest::Approx(-0.1063).epsilon(2e-3));
}

TEST_CASE("normalization, endpoints and mass relation")
{
    const ShockProfile p = make(0.1);
    const ShockData& s = p.shock;
    CHECK(p.xi[p.xi0_index] == 0.0);
    CHECK(std::abs(p.rho_bar[p.xi0_index] - 0.5 * (s.left.rho + s.right.rho)) < 1e-12);
    CHECK(std::abs(p.rho_bar.front() - s.left.rho) < 1e-8);
    CHECK(std::abs(p.rho_bar.back() - s.right.rho) < 1e-8);
    CHECK(std::abs(p.theta_bar.back() - s.right.theta) < 1e-8);
    CHECK(mass_relation_residual(p) < 1e-10);
    CHECK(vshock_residual(p) < 1e-8);
    CHECK(p.xi_min() == doctest::Approx(-400.0));
    CHECK(p.xi_max() == doctest::Approx(400.0));
}

TEST_CASE("traveling-wave residual with finite-difference derivatives")
{
    // Oracle independent of the ODE-derived derivatives: second-order
    // differences of the tabulated values, refined twice.
    GasParams g;
    const ShockData s = shock_with_amplitude(g, kRight, 0.2);
    std::vector<double> err;
    for (double hs : {1.0, 0.5, 0.25}) {
        ProfileOptions o;
        o.spacing = hs;
        const ShockProfile p = build_profile(g, s, o);
        const auto ru = derivative(p.rho_bar, hs);
        const auto uu = derivative(p.u_bar, hs);
        const auto tu = derivative(p.theta_bar, hs);
        const auto uuu = second_derivative(p.u_bar, hs);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            const double rho = p.rho_bar[i], u = p.u_bar[i], th = p.theta_bar[i];
            const double dp = g.R * (ru[i] * th + rho * tu[i]);
            const double r_mass = (u - s.sigma) * ru[i] + rho * uu[i];
            const double r_mom = p.mass_flux * uu[i] + dp - g.mu * uuu[i];
            worst = std::max({worst, std::abs(r_mass), std::abs(r_mom)});
        }
        err.push_back(worst);
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.25));
    CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("tabulated derivatives agree with central differences at second order")
{
    GasParams g;
    const ShockData s = shock_with_amplitude(g, kRight, 0.2);
    std::vector<double> err;
    for (double hs : {1.0, 0.5, 0.25}) {
        ProfileOptions o;
        o.spacing = hs;
        const ShockProfile p = build_profile(g, s, o);
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            worst = std::max(worst, std::abs((p.u_bar[i + 1] - p.u_bar[i - 1]) / (2 * hs) - p.d_u[i]));
            worst = std::max(worst, std::abs((p.theta_bar[i + 1] - p.theta_bar[i - 1]) / (2 * hs) - p.d_theta[i]));
            worst = std::max(worst, std::abs((p.rho_bar[i + 1] - p.rho_bar[i - 1]) / (2 * hs) - p.d_rho[i]));
        }
        err.push_back(worst);
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.25));
    CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("guards")
{
    GasParams g;
    const ShockData d = left_state_on_S3(g, kRight, 1.0);
    CHECK_THROWS_AS(build_profile(g, d), ValidationError);
    ProfileOptions narrow;
    narrow.halfwidth = 20.0;
    CHECK_THROWS_AS(make(0.1, narrow), NumericalError);
}

TEST_CASE("sampling")
{
    const ShockProfile p = make(0.1);
    const ProfileSample far = sample_profile(p, 1e6);
    CHECK(far.s.rho == p.shock.right.rho);
    CHECK(far.s.u == p.shock.right.u);
    CHECK(far.d_u == 0.0);
    CHECK(far.d_theta == 0.0);
    const ProfileSample near = sample_profile(p, -1e6);
    CHECK(near.s.theta == p.shock.left.theta);

    for (std::size_t i : {std::size_t{17}, p.xi0_index, p.size() - 5}) {
        const ProfileSample at = sample_profile(p, p.xi[i]);
        CHECK(at.s.u == doctest::Approx(p.u_bar[i]).epsilon(1e-14));
        CHECK(at.s.theta == doctest::Approx(p.theta_bar[i]).epsilon(1e-14));
        CHECK(at.s.rho == doctest::Approx(p.rho_bar[i]).epsilon(1e-14));
        CHECK(at.d_u == doctest::Approx(p.d_u[i]).epsilon(1e-12));
    }

    const double sigma = p.shock.sigma;
    for (double x : {3.0, 170.25, 412.7}) {
        const ProfileSample a = sample_shifted(p, x, 2.5, sigma, 0.3, 100.0);
        const ProfileSample b = sample_shifted(p, x - 0.3 - 100.0, 2.5, sigma, 0.0, 0.0);
        CHECK(std::abs(a.s.u - b.s.u) < 1e-12);
        CHECK(std::abs(a.d_theta - b.d_theta) < 1e-12);
    }

    // off-node interpolation against a finer table
    ProfileOptions fine;
    fine.spacing = 0.005;
    const ShockProfile q = make(0.1, fine);
    double worst = 0.0;
    for (double xi = -30.0; xi < 30.0; xi += 0.737)
        worst = std::max(worst, std::abs(sample_profile(p, xi).s.u - sample_profile(q, xi).s.u));
    CHECK(worst < 1e-9);
}

TEST_CASE("property sweep: monotonicity and linear scalings")
{
    GasParams g;
    const ProfilePropertyReport rep = verify_profile_properties(g, kRight, {0.2, 0.1, 0.05});
    for (const auto& r : rep.rows) {
        CHECK(r.monotone);
        CHECK(r.mass_residual < 1e-10);
        CHECK(r.vshock_residual < 1e-8);
        CHECK(r.weight_bounds);
        CHECK(r.sigma_minus_u_positive);
        CHECK(r.tail_rate_fit == doctest::Approx(r.tail_rate_linear).epsilon(0.3));
        // sigma - u_bar - c_bar > 0 cannot hold at the left end (Lax)
        CHECK(r.supersonic_fraction < 1.0);
    }
    CHECK(rep.slope_estderi_rho == doctest::Approx(1.0).epsilon(0.3));
    CHECK(rep.slope_estderi_theta == doctest::Approx(1.0).epsilon(0.3));
    CHECK(rep.slope_sigma_gap == doctest::Approx(1.0).epsilon(0.3));
    CHECK(rep.slope_tail_rate == doctest::Approx(1.0).epsilon(0.3));
    CHECK(rep.slope_uxx == doctest::Approx(1.0).epsilon(0.3));
    CHECK(rep.slope_sound_gap == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("derivative ratios stay clean in both tails at small amplitude")
{
    // launch point and tail hand-off must not leave integration noise in u', theta'
    const ProfilePropertyRow a = profile_properties(make(0.05));
    const ProfilePropertyRow b = profile_properties(make(0.025));
    CHECK(b.estderi_rho / a.estderi_rho == doctest::Approx(0.5).epsilon(0.1));
    CHECK(b.estderi_theta / a.estderi_theta == doctest::Approx(0.5).epsilon(0.1));
    CHECK(b.uxx_ratio / a.uxx_ratio == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("jacobian identity: leading constant and quadratic deviation")
{
    GasParams g;
    const ShockData s = shock_with_amplitude(g, kRight, 0.1);
    CHECK(jacobian_identity_constant(g, s) ==
          doctest::Approx((4.0 / 3.0) * s.left.rho * (5.0 / 3.0) / (5.0 / 3.0 + 4.0 / 9.0) * 0.1));
    std::vector<double> d{0.2, 0.1, 0.05}, dev;
    for (double delta : d)
        dev.push_back(jacobian_identity_check(make(delta)));
    CHECK(dev[0] == doctest::Approx(0.02836).epsilon(0.05));
    CHECK(dev[1] == doctest::Approx(0.006945).epsilon(0.05));
    CHECK(loglog_slope(d, dev) == doctest::Approx(2.0).epsilon(0.15));
}
