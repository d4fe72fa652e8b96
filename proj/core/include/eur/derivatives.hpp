#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace eur {

using cdouble = std::complex<double>;

/// Symmetric difference of order 4 in the interior (5-point), order 2 one
/// step from the ends, first-order one-sided at the ends themselves.
double stencil_derivative(const double* a, std::size_t n, std::size_t k, double dx);
cdouble stencil_derivative(const cdouble* a, std::size_t n, std::size_t k, double dx);

/// 2nd-order-only variant (plain central difference), used for the
/// resolution probe in the Fisher divergence diagnostics.
double stencil_derivative_order2(const double* a, std::size_t n, std::size_t k, double dx);

/// Support mask: cells with density >= eps_rel * max(density). Returns the
/// absolute floor used.
std::vector<char> support_mask(const std::vector<double>& p, double eps_rel, double* floor_out);

/// Derivative of ln p on the support of p.
///
/// Two estimators are blended per cell:
///  - direct differencing of ln(max(p, floor)): exact for log-quadratic
///    (Gaussian) densities at any resolution;
///  - stencil of p divided by p: robust across interior zeros of p, where
///    ln p is singular and differencing it is meaningless.
/// The choice is made by the size of the local 4th difference of ln p, which
/// vanishes identically for log-quadratic densities and is O(1) within a few
/// cells of a node. Off-support cells get g = 0 and mask = 0.
struct LogDerivative {
    std::vector<double> g;
    std::vector<char> mask;
    double floor = 0.0;
};

LogDerivative log_density_derivative(const std::vector<double>& p, double dx, double eps_rel,
                                     int order = 4);

}  // namespace eur
