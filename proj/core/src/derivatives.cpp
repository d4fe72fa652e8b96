#include "eur/derivatives.hpp"

#include <algorithm>
#include <cmath>

namespace eur {

namespace {

// Threshold on |delta^4 ln p| separating "smooth log-density" cells from
// cells near a zero of p; 12/k^4 for a cell k steps from a node, so 0.004
// hands cells within ~7 steps of a node to the p-stencil estimator, where
// differencing ln p still carries O(1e-4) errors.
constexpr double kLogGuard = 0.004;

template <typename T>
T stencil_impl(const T* a, std::size_t n, std::size_t k, double dx) {
    if (k >= 2 && k + 2 < n)
        return (a[k - 2] - 8.0 * a[k - 1] + 8.0 * a[k + 1] - a[k + 2]) / (12.0 * dx);
    if (k >= 1 && k + 1 < n) return (a[k + 1] - a[k - 1]) / (2.0 * dx);
    if (k == 0 && n >= 2) return (a[1] - a[0]) / dx;
    if (k + 1 == n && n >= 2) return (a[n - 1] - a[n - 2]) / dx;
    return T{};
}

}  // namespace

double stencil_derivative(const double* a, std::size_t n, std::size_t k, double dx) {
    return stencil_impl(a, n, k, dx);
}

cdouble stencil_derivative(const cdouble* a, std::size_t n, std::size_t k, double dx) {
    return stencil_impl(a, n, k, dx);
}

double stencil_derivative_order2(const double* a, std::size_t n, std::size_t k, double dx) {
    if (k >= 1 && k + 1 < n) return (a[k + 1] - a[k - 1]) / (2.0 * dx);
    return stencil_impl(a, n, k, dx);
}

std::vector<char> support_mask(const std::vector<double>& p, double eps_rel, double* floor_out) {
    double pmax = 0.0;
    for (double v : p) pmax = std::max(pmax, v);
    const double floor = eps_rel * pmax;
    if (floor_out) *floor_out = floor;
    std::vector<char> mask(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) mask[k] = p[k] >= floor && p[k] > 0.0;
    return mask;
}

LogDerivative log_density_derivative(const std::vector<double>& p, double dx, double eps_rel,
                                     int order) {
    const std::size_t n = p.size();
    LogDerivative out;
    out.mask = support_mask(p, eps_rel, &out.floor);
    out.g.assign(n, 0.0);

    std::vector<double> logp(n);
    const double lf = std::log(std::max(out.floor, 1e-300));
    for (std::size_t k = 0; k < n; ++k)
        logp[k] = (p[k] > out.floor) ? std::log(p[k]) : lf;

    // Interior holes: masked cells with support on both sides (a zero of p
    // landing on a sample). Their clamped logs can make a valley look like a
    // monotone ramp, so windows containing one never take the log branch.
    std::vector<char> hole(n, 0);
    {
        std::vector<char> left(n, 0), right(n, 0);
        char seen = 0;
        for (std::size_t k = 0; k < n; ++k) {
            left[k] = seen;
            seen = seen || out.mask[k];
        }
        seen = 0;
        for (std::size_t k = n; k-- > 0;) {
            right[k] = seen;
            seen = seen || out.mask[k];
        }
        for (std::size_t k = 0; k < n; ++k) hole[k] = !out.mask[k] && left[k] && right[k];
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (!out.mask[k]) continue;
        bool log_ok = false;
        if (k >= 2 && k + 2 < n) {
            bool any_hole = false, any_off = false;
            for (std::size_t m = k - 2; m <= k + 2; ++m) {
                any_hole = any_hole || hole[m];
                any_off = any_off || !out.mask[m];
            }
            if (any_hole) {
                log_ok = false;  // an on-sample zero of p: stencil p directly
            } else if (!any_off) {
                const double d4 = logp[k - 2] - 4.0 * logp[k - 1] + 6.0 * logp[k] -
                                  4.0 * logp[k + 1] + logp[k + 2];
                log_ok = std::abs(d4) <= kLogGuard;
            } else {
                // Support-edge window: the density falls below the floor at
                // one end. A stencil of p is exponentially wrong when p spans
                // orders of magnitude, while the floor-clamped log difference
                // stays bounded; use it on monotone steep flanks.
                bool up = true, down = true;
                for (std::size_t o = 0; o < 4; ++o) {
                    const double step = logp[k - 1 + o] - logp[k - 2 + o];
                    up = up && step >= 0.0;
                    down = down && step <= 0.0;
                }
                const double range = std::max({logp[k - 2], logp[k], logp[k + 2]}) -
                                     std::min({logp[k - 2], logp[k], logp[k + 2]});
                log_ok = (up || down) && range > 2.0;
            }
        }
        if (log_ok) {
            out.g[k] = (order >= 4) ? stencil_derivative(logp.data(), n, k, dx)
                                    : stencil_derivative_order2(logp.data(), n, k, dx);
        } else {
            const double dp = (order >= 4) ? stencil_derivative(p.data(), n, k, dx)
                                           : stencil_derivative_order2(p.data(), n, k, dx);
            out.g[k] = dp / p[k];
        }
    }
    return out;
}

}  // namespace eur
