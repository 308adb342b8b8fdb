#include "nsf/profile.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "nsf/errors.hpp"
#include "nsf/numerics.hpp"

namespace nsf {

namespace odeint = boost::numeric::odeint;

namespace {

using Vec2 = std::array<double, 2>;

double flux_of(const ShockData& shock) { return shock.left.rho * (shock.left.u - shock.sigma); }

struct Eig2 {
    double lambda;
    Vec2 v;
};

// Eigenpair of a real 2x2 matrix with real spectrum; `larger` picks the
// eigenvalue with larger real value, otherwise the smaller one.
Eig2 eigenpair(const std::array<double, 4>& J, bool larger)
{
    const double tr = J[0] + J[3];
    const double det = J[0] * J[3] - J[1] * J[2];
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0)
        throw NumericalError("profile fixed point has complex eigenvalues");
    const double sq = std::sqrt(disc);
    const double lam = larger ? 0.5 * (tr + sq) : 0.5 * (tr - sq);
    Vec2 v{J[1], lam - J[0]};
    if (std::abs(v[0]) + std::abs(v[1]) < 1e-300)
        v = {lam - J[3], J[2]};
    const double n = std::hypot(v[0], v[1]);
    return {lam, {v[0] / n, v[1] / n}};
}

struct Node {
    Vec2 z;
    Vec2 dz;
    Vec2 ddz;
};

} // namespace

std::array<double, 2> profile_rhs(const GasParams& gas, const ShockData& shock, double u, double theta)
{
    const double j = flux_of(shock);
    const State& L = shock.left;
    const double rho = j / (u - shock.sigma);
    const double p = gas.R * rho * theta;
    const double pl = pressure(gas, L);
    const double du = u - L.u;
    return {(j * du + p - pl) / gas.mu,
            (j * (gas.cv() * (theta - L.theta) - 0.5 * du * du) + pl * du) / gas.kappa};
}

std::array<double, 4> profile_rhs_jacobian(const GasParams& gas, const ShockData& shock, double u, double theta)
{
    const double j = flux_of(shock);
    const State& L = shock.left;
    const double rho = j / (u - shock.sigma);
    const double drho_du = -rho / (u - shock.sigma);
    return {(j + gas.R * theta * drho_du) / gas.mu, gas.R * rho / gas.mu,
            (-j * (u - L.u) + pressure(gas, L)) / gas.kappa, j * gas.cv() / gas.kappa};
}

ShockProfile build_profile(const GasParams& gas, const ShockData& shock, const ProfileOptions& opts)
{
    gas.validate();
    if (shock.degenerate || !(shock.delta > 0.0))
        throw ValidationError("build_profile: needs a shock with positive amplitude");
    if (!(opts.spacing > 0.0) || !(opts.tail_tol > 0.0))
        throw ValidationError("build_profile: spacing and tail_tol must be positive");

    const double delta = shock.delta;
    const double H = opts.halfwidth > 0.0 ? opts.halfwidth : 40.0 / delta;
    const State& L = shock.left;
    const State& Rt = shock.right;
    const double sigma = shock.sigma;
    const double j = flux_of(shock);

    const Eig2 unstable = eigenpair(profile_rhs_jacobian(gas, shock, L.u, L.theta), true);
    const Eig2 slow = eigenpair(profile_rhs_jacobian(gas, shock, Rt.u, Rt.theta), true);
    if (!(unstable.lambda > 0.0) || !(slow.lambda < 0.0))
        throw NumericalError("profile end points are not a saddle and a stable node");
    Vec2 v = unstable.v;
    if (v[0] > 0.0)
        v = {-v[0], -v[1]};
    const double eps = opts.launch_offset * delta;

    // The integrated variable is the deviation from the nearer end state:
    // w = z - (u_-, theta_-) up to the mid density, w = z - (u_+, theta_+)
    // after it, so that the error control stays relative in both tails.
    auto rhs_about = [&](const State& ref) {
        return [&gas, &shock, ref, sigma](const Vec2& w, Vec2& dw, double) {
            const double u = ref.u + w[0], th = ref.theta + w[1];
            if (!(u < sigma) || !(th > 0.0))
                throw NumericalError("profile orbit left the physical region");
            dw = profile_rhs(gas, shock, u, th);
        };
    };
    const auto rhs_left = rhs_about(L);
    const auto rhs_right = rhs_about(Rt);
    const Vec2 w0{eps * v[0], eps * v[1]};

    const double rho_mid = 0.5 * (L.rho + Rt.rho);
    const double u_star = sigma + j / rho_mid;
    const double s_limit = 1e3 / delta + 2.0 * H;
    const int max_steps = 2000000;

    // Pass 1: locate s* where u_bar = u_star.
    auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<Vec2>());
    stepper.initialize(w0, 0.0, 1.0 / delta);
    double s_star = 0.0;
    Vec2 z_star{0.0, 0.0};
    {
        int n = 0;
        while (true) {
            const auto [t0, t1] = stepper.do_step(rhs_left);
            if (L.u + stepper.current_state()[0] <= u_star) {
                Vec2 tmp;
                auto f = [&](double s) {
                    stepper.calc_state(s, tmp);
                    return (L.u + tmp[0]) - u_star;
                };
                boost::math::tools::eps_tolerance<double> tol(50);
                const auto br = boost::math::tools::bisect(f, t0, t1, tol);
                s_star = 0.5 * (br.first + br.second);
                stepper.calc_state(s_star, tmp);
                z_star = {L.u + tmp[0], L.theta + tmp[1]};
                break;
            }
            if (++n > max_steps || t1 > s_limit)
                throw NumericalError("profile orbit does not reach the mid density");
        }
    }

    const long K = std::lround(H / opts.spacing);
    const std::size_t N = static_cast<std::size_t>(2 * K + 1);
    ShockProfile p;
    p.gas = gas;
    p.shock = shock;
    p.mass_flux = j;
    p.dxi = opts.spacing;
    p.xi0_index = static_cast<std::size_t>(K);
    p.left_rate = unstable.lambda;
    p.right_rate = slow.lambda;
    p.xi.resize(N);
    std::vector<Node> nodes(N);
    for (std::size_t k = 0; k < N; ++k)
        p.xi[k] = (static_cast<double>(k) - static_cast<double>(K)) * opts.spacing;

    auto from_ode = [&](const Vec2& z) {
        Node nd;
        nd.z = z;
        nd.dz = profile_rhs(gas, shock, z[0], z[1]);
        const auto J = profile_rhs_jacobian(gas, shock, z[0], z[1]);
        nd.ddz = {J[0] * nd.dz[0] + J[1] * nd.dz[1], J[2] * nd.dz[0] + J[3] * nd.dz[1]};
        return nd;
    };

    // Pass 2: tabulate. Local coordinate s = xi + s_star.
    std::size_t k = 0;
    for (; k < N && p.xi[k] + s_star < 0.0; ++k) {
        const double e = eps * std::exp(unstable.lambda * (p.xi[k] + s_star));
        const double lam = unstable.lambda;
        nodes[k] = {{L.u + e * v[0], L.theta + e * v[1]},
                    {lam * e * v[0], lam * e * v[1]},
                    {lam * lam * e * v[0], lam * lam * e * v[1]}};
    }
    stepper.initialize(w0, 0.0, 1.0 / delta);
    int n = 0;
    while (k < N && p.xi[k] < 0.0) {
        const double t1 = stepper.do_step(rhs_left).second;
        for (; k < N && p.xi[k] < 0.0 && p.xi[k] + s_star <= t1; ++k) {
            Vec2 w;
            stepper.calc_state(p.xi[k] + s_star, w);
            nodes[k] = from_ode({L.u + w[0], L.theta + w[1]});
        }
        if (++n > max_steps)
            throw NumericalError("profile integration exceeded the step budget");
    }
    stepper.initialize(Vec2{z_star[0] - Rt.u, z_star[1] - Rt.theta}, s_star, 1.0 / delta);
    bool switched = false;
    double s_c = 0.0;
    Vec2 w_c{0.0, 0.0};
    while (k < N && !switched) {
        const double t1 = stepper.do_step(rhs_right).second;
        for (; k < N && p.xi[k] + s_star <= t1; ++k) {
            Vec2 w;
            stepper.calc_state(p.xi[k] + s_star, w);
            nodes[k] = from_ode({Rt.u + w[0], Rt.theta + w[1]});
        }
        const Vec2& wc = stepper.current_state();
        if (std::max(std::abs(wc[0]), std::abs(wc[1])) < opts.tail_switch * delta) {
            // continue along the slow eigenvector with the same velocity deviation
            switched = true;
            s_c = t1;
            w_c = {wc[0], wc[0] * slow.v[1] / slow.v[0]};
        }
        if (++n > max_steps)
            throw NumericalError("profile integration exceeded the step budget");
    }
    for (; k < N; ++k) {
        const double lam = slow.lambda;
        const double e = std::exp(lam * (p.xi[k] + s_star - s_c));
        nodes[k] = {{Rt.u + e * w_c[0], Rt.theta + e * w_c[1]},
                    {lam * e * w_c[0], lam * e * w_c[1]},
                    {lam * lam * e * w_c[0], lam * lam * e * w_c[1]}};
    }

    p.rho_bar.resize(N);
    p.u_bar.resize(N);
    p.theta_bar.resize(N);
    p.d_rho.resize(N);
    p.d_u.resize(N);
    p.d_theta.resize(N);
    p.dd_u.resize(N);
    p.dd_theta.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        const Node& nd = nodes[i];
        const double rel = nd.z[0] - sigma;
        p.u_bar[i] = nd.z[0];
        p.theta_bar[i] = nd.z[1];
        p.rho_bar[i] = j / rel;
        p.d_u[i] = nd.dz[0];
        p.d_theta[i] = nd.dz[1];
        p.d_rho[i] = -p.rho_bar[i] * nd.dz[0] / rel;
        p.dd_u[i] = nd.ddz[0];
        p.dd_theta[i] = nd.ddz[1];
        if (!(p.rho_bar[i] > 0.0) || !(p.theta_bar[i] > 0.0))
            throw NumericalError("profile left the physical region");
    }

    const double left_gap = std::max({std::abs(p.rho_bar.front() - L.rho), std::abs(p.u_bar.front() - L.u),
                                      std::abs(p.theta_bar.front() - L.theta)});
    const double right_gap = std::max({std::abs(p.rho_bar.back() - Rt.rho), std::abs(p.u_bar.back() - Rt.u),
                                       std::abs(p.theta_bar.back() - Rt.theta)});
    if (left_gap > opts.tail_tol || right_gap > opts.tail_tol)
        throw NumericalError("profile does not settle to the end states within the half width (gaps " +
                             std::to_string(left_gap) + ", " + std::to_string(right_gap) + ")");
    return p;
}

ProfileSample sample_profile(const ShockProfile& p, double xi)
{
    ProfileSample out;
    if (xi <= p.xi_min()) {
        out.s = p.shock.left;
        return out;
    }
    if (xi >= p.xi_max()) {
        out.s = p.shock.right;
        return out;
    }
    const double hs = p.dxi;
    std::size_t k = static_cast<std::size_t>((xi - p.xi_min()) / hs);
    k = std::min(k, p.size() - 2);
    const double t = (xi - p.xi[k]) / hs;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    auto herm = [&](const std::vector<double>& f, const std::vector<double>& df) {
        return h00 * f[k] + hs * h10 * df[k] + h01 * f[k + 1] + hs * h11 * df[k + 1];
    };
    const double u = herm(p.u_bar, p.d_u);
    const double th = herm(p.theta_bar, p.d_theta);
    const double du = herm(p.d_u, p.dd_u);
    const double dth = herm(p.d_theta, p.dd_theta);
    const double rel = u - p.shock.sigma;
    out.s = State{p.mass_flux / rel, u, th};
    out.d_u = du;
    out.d_theta = dth;
    out.d_rho = -out.s.rho * du / rel;
    out.dd_u = (1 - t) * p.dd_u[k] + t * p.dd_u[k + 1];
    out.dd_theta = (1 - t) * p.dd_theta[k] + t * p.dd_theta[k + 1];
    return out;
}

ProfileSample sample_shifted(const ShockProfile& p, double x, double t, double sigma, double X, double beta)
{
    return sample_profile(p, x - sigma * t - X - beta);
}

double vshock_residual(const ShockProfile& p)
{
    const GasParams& g = p.gas;
    const double j = p.mass_flux;
    const double sigma = p.shock.sigma;
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double rho = p.rho_bar[i], u = p.u_bar[i], th = p.theta_bar[i];
        const double ru = p.d_rho[i], uu = p.d_u[i], tu = p.d_theta[i];
        const double pr = g.R * rho * th;
        const double dp = g.R * (ru * th + rho * tu);
        const double r_mass = (u - sigma) * ru + rho * uu;
        const double r_mom = j * uu + dp - g.mu * p.dd_u[i];
        const double r_en = j * (g.cv() * tu + u * uu) + uu * pr + u * dp - g.kappa * p.dd_theta[i] -
                            g.mu * (uu * uu + u * p.dd_u[i]);
        worst = std::max({worst, std::abs(r_mass), std::abs(r_mom), std::abs(r_en)});
    }
    return worst;
}

double mass_relation_residual(const ShockProfile& p)
{
    const double ref = p.shock.right.rho * (p.shock.right.u - p.shock.sigma);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        worst = std::max(worst, std::abs(p.rho_bar[i] * (p.u_bar[i] - p.shock.sigma) - ref));
    return worst;
}

ProfilePropertyRow profile_properties(const ShockProfile& p)
{
    const GasParams& g = p.gas;
    const ShockData& s = p.shock;
    ProfilePropertyRow r;
    r.delta = s.delta;
    r.mass_residual = mass_relation_residual(p);
    r.vshock_residual = vshock_residual(p);
    r.rho_zero_error = std::abs(p.rho_bar[p.xi0_index] - 0.5 * (s.left.rho + s.right.rho));

    r.monotone = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p.d_rho[i] < 0.0 && p.d_u[i] < 0.0 && p.d_theta[i] < 0.0))
            r.monotone = false;
        if (i > 0 && (p.rho_bar[i] > p.rho_bar[i - 1] || p.u_bar[i] > p.u_bar[i - 1] ||
                      p.theta_bar[i] > p.theta_bar[i - 1]))
            r.monotone = false;
    }

    const double cm = sound_speed(g, s.left);
    const double kr = s.left.rho / cm;
    const double kt = (g.gamma - 1.0) * s.left.theta / cm;
    const double sq = std::sqrt(s.delta);
    r.sigma_minus_u_positive = true;
    r.weight_bounds = true;
    std::size_t literal = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double du = std::abs(p.d_u[i]);
        if (du > 0.0) {
            r.estderi_rho = std::max(r.estderi_rho, std::abs(p.d_rho[i] - kr * p.d_u[i]) / du);
            r.estderi_theta = std::max(r.estderi_theta, std::abs(p.d_theta[i] - kt * p.d_u[i]) / du);
            r.uxx_ratio = std::max(r.uxx_ratio, std::abs(p.dd_u[i]) / du);
        }
        const double gap = s.sigma - p.u_bar[i] - std::sqrt(g.gamma * g.R * p.theta_bar[i]);
        r.sound_gap = std::max(r.sound_gap, std::abs(gap));
        literal += gap > 0.0;
        if (!(s.sigma - p.u_bar[i] > 0.0))
            r.sigma_minus_u_positive = false;
        const double a = 1.0 + (s.left.u - p.u_bar[i]) / sq;
        if (a < 1.0 - 1e-12 || a > 1.0 + sq + 1e-12 || !(-p.d_u[i] / sq > 0.0))
            r.weight_bounds = false;
    }
    r.supersonic_fraction = static_cast<double>(literal) / static_cast<double>(p.size());
    r.sigma_gap = std::abs(s.sigma - s.sigma_minus(g));

    // Tail rate over |rho_bar - rho_+| in [1e-4, 1e-3] (relative to the jump).
    const double jump = s.left.rho - s.right.rho;
    std::vector<double> xs, ls;
    for (std::size_t i = p.xi0_index; i < p.size(); ++i) {
        const double d = std::abs(p.rho_bar[i] - s.right.rho) / jump;
        if (d <= 1e-3 && d >= 1e-4) {
            xs.push_back(p.xi[i]);
            ls.push_back(std::log(d));
        }
    }
    if (xs.size() >= 2)
        r.tail_rate_fit = -linear_fit(xs, ls).slope;
    r.tail_rate_linear = std::abs(p.right_rate);
    return r;
}

ProfilePropertyReport verify_profile_properties(const GasParams& gas, const State& right,
                                                const std::vector<double>& delta_sweep, const ProfileOptions& opts)
{
    ProfilePropertyReport rep;
    for (double d : delta_sweep) {
        const ShockData s = shock_with_amplitude(gas, right, d);
        rep.rows.push_back(profile_properties(build_profile(gas, s, opts)));
    }
    if (rep.rows.size() >= 2) {
        std::vector<double> d, er, et, sg, tr, ux, rg;
        for (const auto& r : rep.rows) {
            d.push_back(r.delta);
            er.push_back(r.estderi_rho);
            et.push_back(r.estderi_theta);
            sg.push_back(r.sigma_gap);
            tr.push_back(r.tail_rate_fit);
            ux.push_back(r.uxx_ratio);
            rg.push_back(r.sound_gap);
        }
        rep.slope_estderi_rho = loglog_slope(d, er);
        rep.slope_estderi_theta = loglog_slope(d, et);
        rep.slope_sigma_gap = loglog_slope(d, sg);
        rep.slope_tail_rate = loglog_slope(d, tr);
        rep.slope_uxx = loglog_slope(d, ux);
        rep.slope_sound_gap = loglog_slope(d, rg);
    }
    return rep;
}

double jacobian_identity_constant(const GasParams& gas, const ShockData& shock)
{
    const double mrg = gas.mu * gas.R * gas.gamma;
    const double gm1 = gas.gamma - 1.0;
    return 0.5 * (gas.gamma + 1.0) * shock.left.rho * mrg / (mrg + gas.kappa * gm1 * gm1) * shock.delta;
}

double jacobian_identity_check(const ShockProfile& p)
{
    const double delta = p.shock.delta;
    const double target = jacobian_identity_constant(p.gas, p.shock);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double y = (p.shock.left.u - p.u_bar[i]) / delta;
        if (y < 0.05 || y > 0.95)
            continue;
        const double dy = -p.d_u[i] / delta;
        worst = std::max(worst, std::abs(p.gas.mu * dy / (y * (1.0 - y)) - target));
    }
    return worst;
}

} // namespace nsf
