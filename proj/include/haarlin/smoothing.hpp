#pragma once

#include <cstddef>
#include <vector>

namespace haarlin {

/// The compactly supported mollifier chi_eps: (1/(g eps)) exp(-1/(1-(x/eps)^2))
/// on (-eps, eps), zero outside.
double bump(double x, double eps);

/// g = int_{-1}^1 exp(-1/(1-x^2)) dx, computed to >= 12 digits (cached).
double bump_norm_constant();

/// hat{chi}_eps(xi) = hat{chi}_1(eps xi), by oscillation-aware panel quadrature
/// (panel width at most a half period). Real and even.
double bump_ft_numeric(double xi, double eps = 1.0);

/// Steepest-descent leading order of hat{chi}_1(eps xi); requires eps*xi >= 25
/// so the dropped (eps xi)^{-1/2} correction stays small.
double bump_ft_asymptotic(double xi, double eps = 1.0);

/// Phase cosine of the asymptotic formula (for excluding near-zero points).
double bump_ft_phase_cos(double xi, double eps = 1.0);

/// h(r) = r + (2/g)(2-r) int_r^1 exp(-1/(1-t^2)) dt, 0 < r < 1.
double smoothing_floor(double r);

struct TabulatedDensity {
    double x0 = 0;  // left endpoint
    double dx = 0;  // uniform step
    std::vector<double> f;
    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
};

/// f * chi_eps on the same grid. The discrete kernel is normalized, so mass
/// is preserved to rounding. Requires dx <= eps/8.
TabulatedDensity convolve_density(const TabulatedDensity& f, double eps);

}  // namespace haarlin
