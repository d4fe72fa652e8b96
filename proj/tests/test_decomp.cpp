#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "eur/decomp.hpp"
#include "eur/random_states.hpp"
#include "eur/state_factory.hpp"

using namespace eur;

namespace {
const Grid1D kGrid = Grid1D::over(-12.0, 12.0, 2048);
}

TEST_CASE("boosted gaussian has constant classical momentum p0") {
    const GridState s = make_gaussian(kGrid, 0.3, 1.0, 2.0, 0.0);
    const ClassicalField f = classical_momentum_field(s);
    for (std::size_t k = 0; k < kGrid.n; ++k)
        if (f.mask[k]) CHECK(f.values[k] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("chirp makes the classical momentum linear in x") {
    // arg psi = (p0 u + alpha u^2)/hbar  =>  P_cl = p0 + 2 alpha u
    const Grid1D g = Grid1D::over(-12.0, 12.0, 4096);
    const double p0 = 0.5, alpha = 0.2, mu = 0.0;
    const GridState s = make_gaussian(g, mu, 1.0, p0, alpha);
    const ClassicalField f = classical_momentum_field(s, 1e-6);
    double worst = 0.0;
    for (std::size_t k = 0; k < g.n; ++k)
        if (f.mask[k])
            worst = std::max(worst,
                             std::abs(f.values[k] - (p0 + 2.0 * alpha * (g.x(k) - mu))));
    CHECK(worst < 1e-6);
}

TEST_CASE("real wavefunctions have an exactly zero classical momentum") {
    for (int n : {0, 1, 3}) {
        const GridState s = make_harmonic_eigenstate(kGrid, n);
        const ClassicalField f = classical_momentum_field(s);
        for (std::size_t k = 0; k < kGrid.n; ++k) CHECK(f.values[k] == 0.0);
    }
}

TEST_CASE("gaussian decomposition stats") {
    const double sigma = 0.8;
    SUBCASE("at rest: all momentum spread is nonclassical") {
        const GridState s = make_gaussian(kGrid, 0.0, sigma, 0.0, 0.0);
        const DecompStats st = momentum_decomposition_stats(s);
        CHECK(st.var_cl == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(st.var_nc == doctest::Approx(0.25 / (sigma * sigma)).epsilon(1e-9));
        CHECK(st.min_error == doctest::Approx(st.var_nc).epsilon(1e-9));
    }
    SUBCASE("boost shifts both means, not the nonclassical spread") {
        const GridState s = make_gaussian(kGrid, 0.0, sigma, 1.4, 0.0);
        const DecompStats st = momentum_decomposition_stats(s);
        CHECK(st.mean_obs == doctest::Approx(1.4).epsilon(1e-9));
        CHECK(st.mean_cl == doctest::Approx(1.4).epsilon(1e-8));
        CHECK(st.var_nc == doctest::Approx(0.25 / (sigma * sigma)).epsilon(1e-7));
    }
}

TEST_CASE("first oscillator level: var_obs = var_nc = 3/2") {
    const GridState s = make_harmonic_eigenstate(kGrid, 1);
    const DecompStats st = momentum_decomposition_stats(s);
    CHECK(st.var_obs == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(st.var_cl == 0.0);
    CHECK(st.var_nc == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("estimator error is minimized exactly at the classical field") {
    const GridState s = make_gaussian(kGrid, 0.0, 1.0, 0.8, 0.25);
    const ClassicalField pcl = classical_momentum_field(s);
    const DecompStats st = momentum_decomposition_stats(s);
    const double at_min = estimator_error(s, pcl);
    CHECK(at_min == doctest::Approx(st.min_error).epsilon(1e-12));

    SUBCASE("constant offset adds c^2") {
        ClassicalField shifted = pcl;
        for (double& v : shifted.values) v += 0.7;
        CHECK(estimator_error(s, shifted) ==
              doctest::Approx(at_min + 0.49).epsilon(1e-9));
    }
    SUBCASE("zero estimator returns <P^2>") {
        ClassicalField zero = pcl;
        for (double& v : zero.values) v = 0.0;
        const double second = st.var_obs + st.mean_obs * st.mean_obs;
        CHECK(estimator_error(s, zero) == doctest::Approx(second).epsilon(1e-12));
    }
    SUBCASE("random perturbations never beat the optimum") {
        Rng rng(19);
        std::normal_distribution<double> gauss(0.0, 0.3);
        for (int trial = 0; trial < 100; ++trial) {
            ClassicalField f = pcl;
            for (double& v : f.values) v += gauss(rng);
            CHECK(estimator_error(s, f) >= at_min - 1e-12);
        }
    }
}

TEST_CASE("density-operator field matches the pure-state field") {
    const Grid1D g = Grid1D::over(-10.0, 10.0, 512);
    const GridState s = make_gaussian(g, 0.0, 1.0, 0.9, 0.3);
    const ClassicalField direct = classical_momentum_field(s);
    const ClassicalField via_rho = classical_momentum_field_mixed(density_from_pure(s));
    for (std::size_t k = 0; k < g.n; ++k)
        if (direct.mask[k] && via_rho.mask[k])
            CHECK(via_rho.values[k] == doctest::Approx(direct.values[k]).epsilon(1e-8));
}

TEST_CASE("two-component mixture interpolates the boosts with a tanh profile") {
    // w+-(x) gaussian at -+x0 with boost -+p0: P_cl = p0 tanh(x x0 / sigma^2)
    const Grid1D g = Grid1D::over(-12.0, 12.0, 2048);
    const double x0 = 1.0, p0 = 1.5, sigma = 1.0;
    const GridState plus = make_gaussian(g, x0, sigma, p0, 0.0);
    const GridState minus = make_gaussian(g, -x0, sigma, -p0, 0.0);
    const GridDensity rho = density_from_mixture({0.5, 0.5}, {plus, minus});
    const ClassicalField f = classical_momentum_field_mixed(rho);
    for (std::size_t k = 0; k < g.n; ++k) {
        if (!f.mask[k] || std::abs(g.x(k)) > 4.0) continue;
        const double expect = p0 * std::tanh(g.x(k) * x0 / (sigma * sigma));
        CHECK(f.values[k] == doctest::Approx(expect).epsilon(1e-6));
    }
    const std::size_t mid = g.index_of(0.5 * g.dx);
    CHECK(std::abs(f.values[mid]) < 0.02);  // near-zero at the symmetry point
}

TEST_CASE("real-amplitude mixtures have an exactly zero field") {
    const Grid1D g = Grid1D::over(-9.0, 9.0, 512);
    const GridDensity rho = density_from_mixture(
        {0.5, 0.5}, {make_harmonic_eigenstate(g, 0), make_harmonic_eigenstate(g, 1)});
    const ClassicalField f = classical_momentum_field_mixed(rho);
    for (std::size_t k = 0; k < g.n; ++k) CHECK(f.values[k] == 0.0);
}

TEST_CASE("conjugate field of a displaced packet is its center") {
    // arg psi~(p) = -p xbar / hbar, so X_cl(p) = xbar. The conjugate grid
    // spacing pi/L leaves an O((p dp / DeltaP^2)^4) envelope wobble at the
    // far momentum tails, so compare above a 1e-4 floor.
    const Grid1D g = Grid1D::over(-60.0, 60.0, 8192);
    const GridState s = make_gaussian(g, 0.25, 1.0, 0.0, 0.0);
    const ClassicalField f = classical_position_field(s, 1e-4);
    for (std::size_t k = 0; k < f.grid.n; ++k)
        if (f.mask[k]) CHECK(f.values[k] == doctest::Approx(0.25).epsilon(1e-4));
}

TEST_CASE("real even wavefunction: conjugate field vanishes") {
    // psi~ is real up to transform rounding; cells within 1e-6 of the
    // momentum-density peak stay clear of the roundoff-dominated nodes
    const GridState s = make_harmonic_eigenstate(kGrid, 2);
    const ClassicalField f = classical_position_field(s, 1e-6);
    for (std::size_t k = 0; k < f.grid.n; ++k)
        if (f.mask[k]) CHECK(std::abs(f.values[k]) < 1e-8);
}

TEST_CASE("vector field of a product of boosted gaussians is constant") {
    const Grid1D g = Grid1D::over(-10.0, 10.0, 256);
    const GridState2D s = make_product(make_gaussian(g, 0.0, 1.0, 0.7, 0.0),
                                       make_gaussian(g, 0.5, 1.2, -0.4, 0.0));
    const VectorField2D f = vector_classical_momentum(s);
    for (std::size_t k = 0; k < s.amplitudes.size(); ++k) {
        if (!f.mask[k]) continue;
        CHECK(f.v1[k] == doctest::Approx(0.7).epsilon(1e-8));
        CHECK(f.v2[k] == doctest::Approx(-0.4).epsilon(1e-8));
    }
}

TEST_CASE("EPR vector field is constant p0/2 on both particles") {
    const Grid1D axis = Grid1D::over(-18.0, 18.0, 1024);
    const GridState2D s = make_epr({axis, axis}, 0.4, 8.0, 1.0, 2.0);
    const VectorField2D f = vector_classical_momentum(s, 1e-8);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.amplitudes.size(); ++k) {
        if (!f.mask[k]) continue;
        worst = std::max({worst, std::abs(f.v1[k] - 1.0), std::abs(f.v2[k] - 1.0)});
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("entangled superpositions make particle-1 momentum depend on x2") {
    Rng rng(5);
    const Grid1D axis = Grid1D::over(-12.0, 12.0, 256);
    const GridState2D s = random_entangled_2d(rng, {axis, axis});
    const VectorField2D f = vector_classical_momentum(s);
    // fix an x1 row through the support and scan x2
    const std::size_t ny = axis.n;
    double vmin = 1e300, vmax = -1e300;
    for (std::size_t ix = 0; ix < axis.n; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t k = ix * ny + iy;
            if (!f.mask[k]) continue;
            vmin = std::min(vmin, f.v1[k]);
            vmax = std::max(vmax, f.v1[k]);
        }
    CHECK(vmax - vmin > 0.01);
}

TEST_CASE("2D classical momentum is curl-free on uniformly stencilled cells") {
    Rng rng(23);
    const Grid1D axis = Grid1D::over(-12.0, 12.0, 256);
    for (int trial = 0; trial < 5; ++trial) {
        const GridState2D s = random_entangled_2d(rng, {axis, axis});
        const VectorField2D f = vector_classical_momentum(s);
        const std::size_t n = axis.n;
        double worst = 0.0;
        for (std::size_t ix = 4; ix + 4 < n; ++ix)
            for (std::size_t iy = 4; iy + 4 < n; ++iy) {
                bool ok = true;
                for (std::ptrdiff_t a = -2; a <= 2 && ok; ++a)
                    for (std::ptrdiff_t b = -2; b <= 2 && ok; ++b)
                        ok = f.mask[(ix + a) * n + (iy + b)] != 0;
                if (!ok) continue;
                // d v1 / dy - d v2 / dx with the interior 5-point stencil
                const auto at1 = [&](std::ptrdiff_t dy) { return f.v1[ix * n + iy + dy]; };
                const auto at2 = [&](std::ptrdiff_t dx) { return f.v2[(ix + dx) * n + iy]; };
                const double d1 =
                    (at1(-2) - 8.0 * at1(-1) + 8.0 * at1(1) - at1(2)) / (12.0 * axis.dx);
                const double d2 =
                    (at2(-2) - 8.0 * at2(-1) + 8.0 * at2(1) - at2(2)) / (12.0 * axis.dx);
                worst = std::max(worst, std::abs(d1 - d2));
            }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("number state classical fields") {
    SUBCASE("single number state: N_cl = n, no nonclassical spread") {
        const ClassicalField f = number_classical_field(make_fock(3), 64);
        for (std::size_t j = 0; j < f.grid.n; ++j)
            CHECK(f.values[j] == doctest::Approx(3.0).epsilon(1e-12));
        const DecompStats st = number_decomposition_stats(make_fock(3), 64);
        CHECK(st.var_nc == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("(|0>+|1>)/sqrt2: N_cl = 1/2 everywhere, Var_nc = 1/4") {
        const double c = 1.0 / std::sqrt(2.0);
        const NumberState ns = make_number_superposition(0, {cdouble{c, 0}, cdouble{c, 0}});
        const ClassicalField f = number_classical_field(ns, 256);
        for (std::size_t j = 0; j < f.grid.n; ++j)
            if (f.mask[j]) CHECK(f.values[j] == doctest::Approx(0.5).epsilon(1e-12));
        const DecompStats st = number_decomposition_stats(ns, 256);
        CHECK(st.var_nc == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(st.var_cl == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("(|0>+|2>)/sqrt2: additivity VarN = VarN_cl + VarN_nc") {
        const double c = 1.0 / std::sqrt(2.0);
        const NumberState ns =
            make_number_superposition(0, {cdouble{c, 0}, cdouble{0, 0}, cdouble{c, 0}});
        const DecompStats st = number_decomposition_stats(ns, 256);
        CHECK(st.var_obs == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(st.var_obs ==
              doctest::Approx(st.var_cl + st.var_nc).epsilon(1e-10));
    }
}

TEST_CASE("variance additivity holds across random states") {
    Rng rng(77);
    for (int i = 0; i < 40; ++i) {
        const GridState s = random_smooth_mixture(rng, Grid1D::over(-14.0, 14.0, 4096));
        const DecompStats st = momentum_decomposition_stats(s);
        CHECK(st.var_obs == doctest::Approx(st.var_cl + st.var_nc).epsilon(1e-8));
        CHECK(st.mean_obs == doctest::Approx(st.mean_cl).epsilon(1e-8));
        CHECK(st.min_error >= 0.0);
    }
    // number decomposition additivity
    for (int i = 0; i < 20; ++i) {
        const NumberState ns = random_number_state(rng, 6);
        const DecompStats st = number_decomposition_stats(ns, 256);
        CHECK(st.var_obs == doctest::Approx(st.var_cl + st.var_nc).epsilon(1e-10));
    }
}
