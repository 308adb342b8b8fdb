#pragma once

// Relative-entropy functionals of the weighted (a-contraction) framework,
// evaluated on the solver grid by the trapezoid rule. Perturbation
// derivatives use the grid stencils of numerics.hpp.

#include <array>
#include <string>
#include <vector>

#include "nsf/halfline_solver.hpp"
#include "nsf/profile.hpp"
#include "nsf/shift_weight.hpp"

namespace nsf {

struct DiagnosticsRecord {
    double t = 0.0;
    double X = 0.0;
    double Xdot = 0.0;
    double E_weighted = 0.0;
    double G1 = 0.0, G2 = 0.0, GS = 0.0;
    double D_rho = 0.0, D_u1 = 0.0, D_th1 = 0.0, D_u2 = 0.0, D_th2 = 0.0;
    double D_weighted = 0.0; ///< int a (mu |psi_x|^2 + kappa/theta |zeta_x|^2)
    std::array<double, 6> Y{};
    std::array<double, 5> P{};
    double sup_err = 0.0;
    double l2_err = 0.0;
    double h1_err = 0.0;

    double P_sum() const { return P[0] + P[1] + P[2] + P[3] + P[4]; }
};

/// Context shared by all evaluators.
struct DiagContext {
    GasParams gas;
    ShockData shock;
    Grid1D grid;
    double M = 0.0;
};

struct GoodTerms {
    double G1 = 0, G2 = 0, GS = 0, D_rho = 0, D_u1 = 0, D_th1 = 0, D_u2 = 0, D_th2 = 0, D_weighted = 0;
};

GoodTerms good_terms(const DiagContext& c, const Field& f, const ReferenceGrid& ref);
std::array<double, 6> y_decomposition(const DiagContext& c, const Field& f, const ReferenceGrid& ref);
std::array<double, 5> boundary_terms(const DiagContext& c, const Field& f, const ReferenceGrid& ref);
double weighted_entropy(const DiagContext& c, const Field& f, const ReferenceGrid& ref);

/// Every functional at once; Xdot and X are copied into the record.
DiagnosticsRecord evaluate(const DiagContext& c, const Field& f, const ReferenceGrid& ref, double X, double Xdot);

/// |Xdot + (M/delta)(Y1+Y2+Y3)| / ((M/delta)(|Y1|+|Y2|+|Y3|)), zero when the scale vanishes.
double shift_identity_error(const DiagContext& c, const DiagnosticsRecord& r);

enum class CStarFit { LeastSquares, OneSided };

struct DissipationReport {
    double c_star = 0.0;
    double c_star_least_squares = 0.0;
    double c_star_one_sided = 0.0;
    std::size_t steps = 0;
    std::size_t violations = 0;
    double pass_fraction = 1.0;
    std::vector<std::size_t> violation_steps;
    double gronwall_excess = 0.0; ///< max_t [E(t) - E(0) - int_0^t P_+] (<= 0 expected)
    bool gronwall_ok = true;
};

/// Discrete check of
///   dE/dt <= -(G1+G2)/4 - (C*/2) GS - delta/(4M) Xdot^2 - D/10 + P
/// with dE/dt = (E_{n+1}-E_n)/dt against the average of the right-hand side
/// at both ends of the step. C* is fitted on the first quarter of the series.
DissipationReport entropy_dissipation_check(const std::vector<DiagnosticsRecord>& series, double M, double delta,
                                            double rel_tol = 1e-3, double atol = 1e-14,
                                            CStarFit fit = CStarFit::OneSided);

struct PoincareResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

/// int |f - avg|^2 <= 1/2 int (y-c)(d-y)|f'|^2 on uniform samples of [c, d].
PoincareResult poincare_check(const std::vector<double>& f, double c, double d, double qtol = 1e-8);

struct LeadingConstants {
    double alpha_gamma = 0.0;
    double alpha_gamma_factored = 0.0;
    double M = 0.0;
};

/// alpha_gamma = (gamma^2+5gamma-4)/(2gamma) - 7(gamma+1)/8, checked against
/// -(3gamma^2-13gamma+16)/(8gamma); NumericalError if they differ by more than 1e-12.
LeadingConstants leading_constants(const GasParams& gas, const ShockData& shock);

/// Field names in schema order, as used in NDJSON and CSV output.
const std::vector<std::string>& record_field_names();

/// Flattened values matching record_field_names().
std::vector<double> record_values(const DiagnosticsRecord& r);

} // namespace nsf
