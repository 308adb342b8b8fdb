#include "nsf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nsf/errors.hpp"
#include "nsf/numerics.hpp"

namespace nsf {

namespace {

struct Perturbation {
    std::vector<double> phi, psi, zeta; // rho, u, theta
};

Perturbation perturbation(const Field& f, const ReferenceGrid& ref)
{
    Perturbation p;
    const std::size_t N = f.size();
    p.phi.resize(N);
    p.psi.resize(N);
    p.zeta.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        p.phi[i] = f.rho[i] - ref.rho[i];
        p.psi[i] = f.u[i] - ref.u[i];
        p.zeta[i] = f.theta[i] - ref.theta[i];
    }
    return p;
}

template <class F>
double integrate(std::size_t N, double h, F&& density)
{
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i)
        v[i] = density(i);
    return trapezoid(v, h);
}

} // namespace

GoodTerms good_terms(const DiagContext& c, const Field& f, const ReferenceGrid& ref)
{
    const GasParams& g = c.gas;
    const State& L = c.shock.left;
    const double h = c.grid.h();
    const std::size_t N = f.size();
    const Perturbation p = perturbation(f, ref);
    const double cm = sound_speed(g, L);

    GoodTerms t;
    const double k1 = g.R * L.theta / (2.0 * L.rho) * cm;
    const double b1 = L.rho / cm;
    t.G1 = k1 * integrate(N, h, [&](std::size_t i) {
        const double q = p.phi[i] - b1 * p.psi[i];
        return ref.a_x[i] * q * q;
    });
    const double k2 = g.R * L.rho / (2.0 * (g.gamma - 1.0) * L.theta) * cm;
    const double b2 = (g.gamma - 1.0) * L.theta / cm;
    t.G2 = k2 * integrate(N, h, [&](std::size_t i) {
        const double q = p.zeta[i] - b2 * p.psi[i];
        return ref.a_x[i] * q * q;
    });
    t.GS = integrate(N, h, [&](std::size_t i) {
        return std::abs(ref.d_u[i]) * (p.phi[i] * p.phi[i] + p.psi[i] * p.psi[i] + p.zeta[i] * p.zeta[i]);
    });

    const auto phx = derivative(p.phi, h);
    const auto psx = derivative(p.psi, h);
    const auto zex = derivative(p.zeta, h);
    const auto psxx = second_derivative(p.psi, h);
    const auto zexx = second_derivative(p.zeta, h);
    t.D_rho = integrate(N, h, [&](std::size_t i) { return phx[i] * phx[i]; });
    t.D_u1 = integrate(N, h, [&](std::size_t i) { return psx[i] * psx[i]; });
    t.D_th1 = integrate(N, h, [&](std::size_t i) { return zex[i] * zex[i]; });
    t.D_u2 = integrate(N, h, [&](std::size_t i) { return psxx[i] * psxx[i]; });
    t.D_th2 = integrate(N, h, [&](std::size_t i) { return zexx[i] * zexx[i]; });
    t.D_weighted = integrate(N, h, [&](std::size_t i) {
        return ref.a[i] * (g.mu * psx[i] * psx[i] + g.kappa / f.theta[i] * zex[i] * zex[i]);
    });
    return t;
}

std::array<double, 6> y_decomposition(const DiagContext& c, const Field& f, const ReferenceGrid& ref)
{
    const GasParams& g = c.gas;
    const double h = c.grid.h();
    const std::size_t N = f.size();
    const ShiftIntegrands w = shift_integrands(g, f, ref);
    std::array<double, 6> Y{};
    Y[0] = trapezoid(w.y1, h);
    Y[1] = trapezoid(w.y2, h);
    Y[2] = trapezoid(w.y3, h);
    Y[3] = -g.R * integrate(N, h, [&](std::size_t i) {
        return ref.a[i] * f.rho[i] * ref.theta[i] * phi(ref.rho[i] / f.rho[i]) * ref.d_theta[i];
    });
    Y[4] = -g.cv() * integrate(N, h, [&](std::size_t i) {
        return ref.a[i] * f.rho[i] * ref.theta[i] * phi(f.theta[i] / ref.theta[i]) * ref.d_theta[i];
    });
    Y[5] = -integrate(N, h, [&](std::size_t i) {
        return ref.a_x[i] * weighted_relative_entropy_density(g, f.at(i), {ref.rho[i], ref.u[i], ref.theta[i]});
    });
    return Y;
}

std::array<double, 5> boundary_terms(const DiagContext& c, const Field& f, const ReferenceGrid& ref)
{
    const GasParams& g = c.gas;
    const double h = c.grid.h();
    const double a = ref.a[0];
    const double phi0 = f.rho[0] - ref.rho[0];
    const double psi0 = f.u[0] - ref.u[0];
    const double zeta0 = f.theta[0] - ref.theta[0];
    auto d0 = [&](const std::vector<double>& v, const std::vector<double>& w) {
        const double q0 = v[0] - w[0], q1 = v[1] - w[1], q2 = v[2] - w[2];
        return (-3.0 * q0 + 4.0 * q1 - q2) / (2.0 * h);
    };
    const double eta0 = weighted_relative_entropy_density(g, f.at(0), {ref.rho[0], ref.u[0], ref.theta[0]});
    std::array<double, 5> P{};
    P[0] = a * f.u[0] * eta0;
    P[1] = -g.mu * a * psi0 * d0(f.u, ref.u);
    P[2] = -g.kappa * (a / f.theta[0]) * zeta0 * d0(f.theta, ref.theta);
    P[3] = g.R * a * f.rho[0] * psi0 * zeta0;
    P[4] = g.R * a * ref.theta[0] * phi0 * psi0;
    return P;
}

double weighted_entropy(const DiagContext& c, const Field& f, const ReferenceGrid& ref)
{
    return integrate(f.size(), c.grid.h(), [&](std::size_t i) {
        return ref.a[i] * weighted_relative_entropy_density(c.gas, f.at(i), {ref.rho[i], ref.u[i], ref.theta[i]});
    });
}

DiagnosticsRecord evaluate(const DiagContext& c, const Field& f, const ReferenceGrid& ref, double X, double Xdot)
{
    DiagnosticsRecord r;
    r.t = f.t;
    r.X = X;
    r.Xdot = Xdot;
    r.E_weighted = weighted_entropy(c, f, ref);
    const GoodTerms gt = good_terms(c, f, ref);
    r.G1 = gt.G1;
    r.G2 = gt.G2;
    r.GS = gt.GS;
    r.D_rho = gt.D_rho;
    r.D_u1 = gt.D_u1;
    r.D_th1 = gt.D_th1;
    r.D_u2 = gt.D_u2;
    r.D_th2 = gt.D_th2;
    r.D_weighted = gt.D_weighted;
    r.Y = y_decomposition(c, f, ref);
    r.P = boundary_terms(c, f, ref);

    const double h = c.grid.h();
    const std::size_t N = f.size();
    const Perturbation p = perturbation(f, ref);
    std::vector<double> sq(N);
    for (std::size_t i = 0; i < N; ++i) {
        sq[i] = p.phi[i] * p.phi[i] + p.psi[i] * p.psi[i] + p.zeta[i] * p.zeta[i];
        r.sup_err = std::max(r.sup_err, std::sqrt(sq[i]));
    }
    const double l2sq = trapezoid(sq, h);
    r.l2_err = std::sqrt(l2sq);
    r.h1_err = std::sqrt(l2sq + gt.D_rho + gt.D_u1 + gt.D_th1);
    return r;
}

double shift_identity_error(const DiagContext& c, const DiagnosticsRecord& r)
{
    const double k = c.M / c.shock.delta;
    const double scale = k * (std::abs(r.Y[0]) + std::abs(r.Y[1]) + std::abs(r.Y[2]));
    const double diff = std::abs(r.Xdot + k * (r.Y[0] + r.Y[1] + r.Y[2]));
    if (scale == 0.0)
        return diff;
    return diff / scale;
}

DissipationReport entropy_dissipation_check(const std::vector<DiagnosticsRecord>& s, double M, double delta,
                                            double rel_tol, double atol, CStarFit fit)
{
    DissipationReport rep;
    if (s.size() < 2)
        return rep;
    const std::size_t n = s.size() - 1;
    // rhs without the G^S term, and the G^S coefficient, per step
    std::vector<double> lhs(n), rhs0(n), gs(n);
    auto base = [&](const DiagnosticsRecord& r) {
        return -0.25 * (r.G1 + r.G2) - delta / (4.0 * M) * r.Xdot * r.Xdot - 0.1 * r.D_weighted + r.P_sum();
    };
    for (std::size_t k = 0; k < n; ++k) {
        const double dt = s[k + 1].t - s[k].t;
        if (!(dt > 0.0))
            throw ValidationError("entropy_dissipation_check: records must have increasing t");
        lhs[k] = (s[k + 1].E_weighted - s[k].E_weighted) / dt;
        rhs0[k] = 0.5 * (base(s[k]) + base(s[k + 1]));
        gs[k] = 0.5 * (s[k].GS + s[k + 1].GS);
    }

    const std::size_t q = std::max<std::size_t>(1, n / 4);
    double num = 0.0, den = 0.0;
    double one_sided = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < q; ++k) {
        num += (rhs0[k] - lhs[k]) * gs[k];
        den += gs[k] * gs[k];
        if (gs[k] > 0.0)
            one_sided = std::min(one_sided, 2.0 * (rhs0[k] - lhs[k]) / gs[k]);
    }
    rep.c_star_least_squares = den > 0.0 ? 2.0 * num / den : 0.0;
    rep.c_star_one_sided = std::isfinite(one_sided) ? one_sided : 0.0;
    rep.c_star = fit == CStarFit::LeastSquares ? rep.c_star_least_squares : rep.c_star_one_sided;

    for (std::size_t k = 0; k < n; ++k) {
        const double rhs = rhs0[k] - 0.5 * rep.c_star * gs[k];
        const double tol = rel_tol * std::max({std::abs(lhs[k]), std::abs(rhs), atol});
        if (lhs[k] > rhs + tol) {
            ++rep.violations;
            if (rep.violation_steps.size() < 64)
                rep.violation_steps.push_back(k);
        }
    }
    rep.steps = n;
    rep.pass_fraction = 1.0 - static_cast<double>(rep.violations) / static_cast<double>(n);

    double cum = 0.0;
    rep.gronwall_excess = -std::numeric_limits<double>::infinity();
    const double E0 = s.front().E_weighted;
    double emax = std::abs(E0);
    for (std::size_t k = 0; k < n; ++k) {
        const double dt = s[k + 1].t - s[k].t;
        cum += 0.5 * dt * (std::max(0.0, s[k].P_sum()) + std::max(0.0, s[k + 1].P_sum()));
        rep.gronwall_excess = std::max(rep.gronwall_excess, s[k + 1].E_weighted - E0 - cum);
        emax = std::max(emax, std::abs(s[k + 1].E_weighted));
    }
    rep.gronwall_ok = rep.gronwall_excess <= rel_tol * std::max(emax, atol);
    return rep;
}

PoincareResult poincare_check(const std::vector<double>& f, double c, double d, double qtol)
{
    if (!(d > c))
        throw ValidationError("poincare_check needs c < d");
    if (f.size() < 4)
        throw ValidationError("poincare_check needs at least four samples");
    const std::size_t n = f.size();
    const double h = (d - c) / static_cast<double>(n - 1);
    const double avg = trapezoid(f, h) / (d - c);
    const auto df = derivative(f, h);
    std::vector<double> l(n), r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = c + static_cast<double>(i) * h;
        l[i] = (f[i] - avg) * (f[i] - avg);
        r[i] = 0.5 * (y - c) * (d - y) * df[i] * df[i];
    }
    PoincareResult out;
    out.lhs = trapezoid(l, h);
    out.rhs = trapezoid(r, h);
    out.ok = out.lhs <= out.rhs * (1.0 + qtol);
    return out;
}

LeadingConstants leading_constants(const GasParams& gas, const ShockData& shock)
{
    const double g = gas.gamma;
    if (!(g > 1.0))
        throw ValidationError("leading_constants needs gamma > 1");
    LeadingConstants lc;
    lc.alpha_gamma = (g * g + 5.0 * g - 4.0) / (2.0 * g) - 7.0 * (g + 1.0) / 8.0;
    lc.alpha_gamma_factored = -(3.0 * g * g - 13.0 * g + 16.0) / (8.0 * g);
    if (std::abs(lc.alpha_gamma - lc.alpha_gamma_factored) > 1e-12 * std::max(1.0, std::abs(lc.alpha_gamma)))
        throw NumericalError("alpha_gamma: the two closed forms disagree");
    lc.M = shift_constant(gas, shock);
    return lc;
}

const std::vector<std::string>& record_field_names()
{
    static const std::vector<std::string> names{
        "t",     "X",     "Xdot",  "E_weighted", "G1",   "G2",   "GS",   "D_rho",   "D_u1",   "D_th1", "D_u2",
        "D_th2", "D_weighted", "Y1", "Y2", "Y3", "Y4", "Y5", "Y6", "P1", "P2", "P3", "P4", "P5", "sup_err",
        "l2_err", "h1_err"};
    return names;
}

std::vector<double> record_values(const DiagnosticsRecord& r)
{
    std::vector<double> v{r.t,    r.X,    r.Xdot, r.E_weighted, r.G1,   r.G2,   r.GS,
                          r.D_rho, r.D_u1, r.D_th1, r.D_u2,     r.D_th2, r.D_weighted};
    v.insert(v.end(), r.Y.begin(), r.Y.end());
    v.insert(v.end(), r.P.begin(), r.P.end());
    v.push_back(r.sup_err);
    v.push_back(r.l2_err);
    v.push_back(r.h1_err);
    return v;
}

} // namespace nsf
