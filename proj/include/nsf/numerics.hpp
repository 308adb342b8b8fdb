#pragma once

// Small numerical helpers shared by the diagnostics and the sweep fits.

#include <cstddef>
#include <vector>

namespace nsf {

/// Composite trapezoid rule on a uniform grid with spacing h.
double trapezoid(const std::vector<double>& f, double h);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y ~ slope x + intercept. Needs at least two points.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of log y against log x (all entries must be positive).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Central first derivative; second-order one-sided three-point stencils at the ends.
std::vector<double> derivative(const std::vector<double>& f, double h);

/// Central second derivative; (2f0 - 5f1 + 4f2 - f3)/h^2 at the ends.
std::vector<double> second_derivative(const std::vector<double>& f, double h);

} // namespace nsf
