#include "eur/random_states.hpp"

#include <cmath>
#include <numbers>

#include "eur/state_factory.hpp"

namespace eur {

namespace {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

GridState random_chirped_gaussian(Rng& rng, const Grid1D& grid, double hbar) {
    const double sigma = uniform(rng, 0.5, 2.0);
    const double mu = uniform(rng, -2.0, 2.0);
    const double p0 = uniform(rng, -2.0, 2.0);
    const double chirp = uniform(rng, -0.5, 0.5);
    return make_gaussian(grid, mu, sigma, p0, chirp, hbar);
}

GridState random_smooth_mixture(Rng& rng, const Grid1D& grid, double hbar) {
    const int parts = std::uniform_int_distribution<int>(2, 4)(rng);
    std::vector<cdouble> amp(grid.n, cdouble{0.0, 0.0});
    for (int c = 0; c < parts; ++c) {
        const double mu = uniform(rng, -3.0, 3.0);
        const double sigma = uniform(rng, 0.7, 1.5);
        const double w = uniform(rng, 0.4, 1.0);
        for (std::size_t k = 0; k < grid.n; ++k) {
            const double u = grid.x(k) - mu;
            amp[k] += w * std::exp(-u * u / (4.0 * sigma * sigma));
        }
    }
    const double p0 = uniform(rng, -1.0, 1.0);
    const double chirp = uniform(rng, -0.3, 0.3);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.x(k);
        const double phase = (p0 * x + chirp * x * x) / hbar;
        amp[k] *= cdouble{std::cos(phase), std::sin(phase)};
    }
    return GridState(grid, std::move(amp), hbar);
}

GridState random_phase_mixture(Rng& rng, const Grid1D& grid, double hbar) {
    const int parts = std::uniform_int_distribution<int>(2, 3)(rng);
    std::vector<GridState> comps;
    std::vector<cdouble> coeffs;
    for (int c = 0; c < parts; ++c) {
        const double mu = uniform(rng, -2.5, 2.5);
        const double sigma = uniform(rng, 0.7, 1.4);
        const double p0 = uniform(rng, -0.8, 0.8);
        comps.push_back(make_gaussian(grid, mu, sigma, p0, 0.0, hbar));
        const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const double w = uniform(rng, 0.5, 1.0);
        coeffs.push_back(w * cdouble{std::cos(theta), std::sin(theta)});
    }
    return superpose(coeffs, comps);
}

GridState random_equivalence_state(Rng& rng, const Grid1D& grid, double hbar) {
    // Sized so that on a [-14, 14] grid every supported row (down to 1e-4 of
    // the density peak) keeps the full correlation range x +- xi/2 on-grid:
    // the row farthest out needs another ~5.3 sigma of clearance.
    const double sigma = uniform(rng, 1.0, 1.3);
    const double mu = uniform(rng, -0.8, 0.8);
    const double p0 = uniform(rng, -0.5, 0.5);
    const double chirp = uniform(rng, -0.1, 0.1);
    return make_gaussian(grid, mu, sigma, p0, chirp, hbar);
}

GridState2D random_entangled_2d(Rng& rng, const Grid2D& grid, double hbar) {
    const auto part = [&](double lo, double hi) { return uniform(rng, lo, hi); };
    GridState a1 = make_gaussian(grid.gx, part(-1.5, -0.3), part(0.9, 1.4), part(-0.4, 0.4),
                                 0.0, hbar);
    GridState a2 = make_gaussian(grid.gy, part(0.3, 1.5), part(0.9, 1.4), part(-0.4, 0.4),
                                 0.0, hbar);
    GridState b1 = make_gaussian(grid.gx, part(0.3, 1.5), part(0.9, 1.4), part(-0.4, 0.4),
                                 0.0, hbar);
    GridState b2 = make_gaussian(grid.gy, part(-1.5, -0.3), part(0.9, 1.4), part(-0.4, 0.4),
                                 0.0, hbar);
    const double theta = uniform(rng, 0.2, 2.9);
    const double r = uniform(rng, 0.6, 1.0);
    return superpose2d({cdouble{1.0, 0.0}, r * cdouble{std::cos(theta), std::sin(theta)}},
                       {make_product(a1, a2), make_product(b1, b2)});
}

Eigen::VectorXcd random_pure_vector(Rng& rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(d);
    for (int i = 0; i < d; ++i) v[i] = cdouble{gauss(rng), gauss(rng)};
    v.normalize();
    return v;
}

Eigen::MatrixXcd random_hermitian(Rng& rng, int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = cdouble{gauss(rng), gauss(rng)};
    return 0.5 * (m + m.adjoint()).eval();
}

Eigen::MatrixXcd random_density_matrix(Rng& rng, int d) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    double wsum = 0.0;
    for (int k = 0; k < d; ++k) {
        const double w = gamma(rng);
        const Eigen::VectorXcd v = random_pure_vector(rng, d);
        rho += w * v * v.adjoint();
        wsum += w;
    }
    return rho / wsum;
}

NumberState random_number_state(Rng& rng, int n_max, double hbar) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cdouble> c(static_cast<std::size_t>(n_max) + 1);
    for (auto& v : c) {
        v = cdouble{gauss(rng), gauss(rng)};
        if (std::abs(v) < 0.1) v += cdouble{0.2, 0.1};  // keep all modes populated
    }
    return make_number_superposition(0, std::move(c), hbar);
}

}  // namespace eur
