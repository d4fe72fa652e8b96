#include "eur/state_factory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eur {

namespace {

void require_coverage(const Grid1D& g, double lo, double hi, const char* what) {
    if (g.left() > lo || g.right() < hi)
        throw std::domain_error(std::string(what) + ": state truncated on grid");
}

}  // namespace

GridState make_gaussian(const Grid1D& grid, double mu, double sigma, double p0, double chirp,
                        double hbar) {
    if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian: sigma must be positive");
    require_coverage(grid, mu - 6.0 * sigma, mu + 6.0 * sigma, "make_gaussian");
    std::vector<cdouble> a(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double u = grid.x(k) - mu;
        const double envelope = std::exp(-u * u / (4.0 * sigma * sigma));
        const double phase = (p0 * u + chirp * u * u) / hbar;
        a[k] = envelope * cdouble{std::cos(phase), std::sin(phase)};
    }
    return GridState(grid, std::move(a), hbar);
}

GridState make_harmonic_eigenstate(const Grid1D& grid, int n, double mass, double omega,
                                   double hbar) {
    if (n < 0) throw std::invalid_argument("make_harmonic_eigenstate: n must be >= 0");
    if (!(mass > 0.0) || !(omega > 0.0))
        throw std::invalid_argument("make_harmonic_eigenstate: need positive mass and omega");
    const double s = std::sqrt(mass * omega / hbar);  // xi = s * x
    const double turn = std::sqrt(2.0 * n + 1.0) / s;
    require_coverage(grid, -(turn + 5.0 / s), turn + 5.0 / s, "make_harmonic_eigenstate");
    std::vector<cdouble> a(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double xi = s * grid.x(k);
        // Orthonormal Hermite-function recurrence, stable for the n used here:
        // h_0 = pi^(-1/4) e^{-xi^2/2}, h_j = xi sqrt(2/j) h_{j-1} - sqrt((j-1)/j) h_{j-2}.
        double hm1 = 0.0;
        double h = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
        for (int j = 1; j <= n; ++j) {
            const double hj = xi * std::sqrt(2.0 / j) * h - std::sqrt((j - 1.0) / j) * hm1;
            hm1 = h;
            h = hj;
        }
        a[k] = h;  // real amplitudes, exactly zero imaginary part
    }
    return GridState(grid, std::move(a), hbar);
}

GridState make_box(const Grid1D& grid, double a, double b, double hbar) {
    if (!(b > a)) throw std::invalid_argument("make_box: empty interval");
    require_coverage(grid, a, b, "make_box");
    std::vector<cdouble> amp(grid.n, cdouble{0.0, 0.0});
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.x(k);
        if (x >= a && x <= b) amp[k] = 1.0;
    }
    return GridState(grid, std::move(amp), hbar);
}

GridState make_from_samples(const Grid1D& grid, std::vector<cdouble> samples, double hbar) {
    return GridState(grid, std::move(samples), hbar);
}

GridState superpose(const std::vector<cdouble>& coeffs, const std::vector<GridState>& states) {
    if (coeffs.size() != states.size() || states.empty())
        throw std::invalid_argument("superpose: coefficient/state mismatch");
    std::vector<cdouble> a(states[0].grid.n, cdouble{0.0, 0.0});
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (!(states[s].grid == states[0].grid) || states[s].hbar != states[0].hbar)
            throw std::invalid_argument("superpose: incompatible states");
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += coeffs[s] * states[s].amplitudes[k];
    }
    return GridState(states[0].grid, std::move(a), states[0].hbar);
}

GridState2D make_epr(const Grid2D& grid, double sigma, double tau, double a, double p0,
                     double hbar) {
    if (!(sigma > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("make_epr: need positive sigma and tau");
    // Marginal std of each particle is sqrt(sigma^2 + tau^2)/2 around +-a/2.
    const double spread = 0.5 * std::sqrt(sigma * sigma + tau * tau);
    require_coverage(grid.gx, -0.5 * std::abs(a) - 4.0 * spread,
                     0.5 * std::abs(a) + 4.0 * spread, "make_epr");
    require_coverage(grid.gy, -0.5 * std::abs(a) - 4.0 * spread,
                     0.5 * std::abs(a) + 4.0 * spread, "make_epr");
    const std::size_t nx = grid.gx.n, ny = grid.gy.n;
    std::vector<cdouble> amp(nx * ny);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double x1 = grid.gx.x(ix);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double x2 = grid.gy.x(iy);
            const double u = x1 - x2 - a;
            const double v = x1 + x2;
            const double envelope =
                std::exp(-u * u / (4.0 * sigma * sigma) - v * v / (4.0 * tau * tau));
            const double phase = 0.5 * p0 * v / hbar;
            amp[ix * ny + iy] = envelope * cdouble{std::cos(phase), std::sin(phase)};
        }
    }
    return GridState2D(grid, std::move(amp), hbar);
}

GridState2D make_product(const GridState& s1, const GridState& s2) {
    if (s1.hbar != s2.hbar) throw std::invalid_argument("make_product: hbar mismatch");
    Grid2D g{s1.grid, s2.grid};
    std::vector<cdouble> amp(g.size());
    for (std::size_t ix = 0; ix < s1.grid.n; ++ix)
        for (std::size_t iy = 0; iy < s2.grid.n; ++iy)
            amp[ix * s2.grid.n + iy] = s1.amplitudes[ix] * s2.amplitudes[iy];
    return GridState2D(g, std::move(amp), s1.hbar);
}

GridState2D superpose2d(const std::vector<cdouble>& coeffs,
                        const std::vector<GridState2D>& states) {
    if (coeffs.size() != states.size() || states.empty())
        throw std::invalid_argument("superpose2d: coefficient/state mismatch");
    std::vector<cdouble> a(states[0].amplitudes.size(), cdouble{0.0, 0.0});
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s].amplitudes.size() != a.size() || states[s].hbar != states[0].hbar)
            throw std::invalid_argument("superpose2d: incompatible states");
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += coeffs[s] * states[s].amplitudes[k];
    }
    return GridState2D(states[0].grid, std::move(a), states[0].hbar);
}

NumberState make_fock(int n, double hbar) {
    return NumberState(n, n, {cdouble{1.0, 0.0}}, hbar, n >= 0);
}

NumberState make_number_superposition(int n_min, std::vector<cdouble> coeffs, double hbar,
                                      bool photon_mode) {
    const int n_max = n_min + static_cast<int>(coeffs.size()) - 1;
    return NumberState(n_min, n_max, std::move(coeffs), hbar, photon_mode);
}

}  // namespace eur
