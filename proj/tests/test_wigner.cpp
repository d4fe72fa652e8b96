#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eur/random_states.hpp"
#include "eur/state_factory.hpp"
#include "eur/wigner.hpp"

using namespace eur;

TEST_CASE("gaussian Wigner function matches the analytic phase-space gaussian") {
    // psi = (2 pi s^2)^{-1/4} e^{-x^2/4s^2 + i p0 x} gives
    // W(x,p) = (pi hbar)^{-1} exp(-x^2/(2 s^2) - 2 s^2 (p-p0)^2 / hbar^2)
    const double s = 0.9, p0 = 0.7;
    const Grid1D g = Grid1D::over(-12.0, 12.0, 512);
    const WignerGrid w = wigner_function(make_gaussian(g, 0.0, s, p0, 0.0));
    double worst = 0.0;
    for (std::size_t k = 0; k < w.xgrid.n; k += 7)
        for (std::size_t m = 0; m < w.pgrid.n; m += 7) {
            const double x = w.xgrid.x(k), p = w.pgrid.x(m);
            const double expect = std::exp(-x * x / (2.0 * s * s) -
                                           2.0 * s * s * (p - p0) * (p - p0)) /
                                  std::numbers::pi;
            worst = std::max(worst, std::abs(w.at(k, m) - expect));
        }
    CHECK(worst < 1e-10);
}

TEST_CASE("marginals reproduce both densities") {
    Rng rng(5);
    const Grid1D g = Grid1D::over(-14.0, 14.0, 1024);
    const GridState s = random_equivalence_state(rng, g);
    const WignerGrid w = wigner_function(s);

    const std::vector<double> mx = wigner_marginal_x(w);
    const GridDistribution px = position_density(s);
    for (std::size_t k = 0; k < g.n; k += 11)
        CHECK(mx[k] == doctest::Approx(px.p[k]).epsilon(1e-10));

    // total mass via either marginal
    double mass = 0.0;
    for (double v : mx) mass += v;
    CHECK(mass * g.dx == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("purity equals tr[rho^2] for pure and mixed states") {
    const Grid1D g = Grid1D::over(-9.0, 9.0, 256);
    const GridState a = make_harmonic_eigenstate(g, 0);
    const GridState b = make_harmonic_eigenstate(g, 1);
    CHECK(wigner_purity(wigner_function(a)) == doctest::Approx(1.0).epsilon(1e-10));

    const GridDensity mix = density_from_mixture({0.3, 0.7}, {a, b});
    CHECK(wigner_purity(wigner_function(mix)) ==
          doctest::Approx(mix.purity()).epsilon(1e-10));
}

TEST_CASE("quasiclassical momentum equals the direct classical momentum") {
    const Grid1D g = Grid1D::over(-14.0, 14.0, 2048);
    SUBCASE("chirped boosted gaussian") {
        const GridState s = make_gaussian(g, 0.4, 1.1, 0.5, 0.1);
        const WignerGrid w = wigner_function(s);
        const ClassicalField via_w = wigner_classical_momentum(w, 1e-4);
        const ClassicalField direct = classical_momentum_field(s, 1e-4);
        double worst = 0.0;
        for (std::size_t k = 0; k < g.n; ++k)
            if (via_w.mask[k] && direct.mask[k])
                worst = std::max(worst, std::abs(via_w.values[k] - direct.values[k]));
        CHECK(worst < 1e-6);
    }
    SUBCASE("real wavefunction: field vanishes") {
        const WignerGrid w = wigner_function(make_harmonic_eigenstate(g, 2));
        const ClassicalField f = wigner_classical_momentum(w, 1e-6);
        for (std::size_t k = 0; k < g.n; ++k)
            if (f.mask[k]) CHECK(std::abs(f.values[k]) < 1e-10);
    }
    SUBCASE("two-lobe superposition with opposite boosts, between the lobes") {
        const Grid1D gf = Grid1D::over(-14.0, 14.0, 4096);
        const GridState l = make_gaussian(gf, -1.6, 0.8, 1.0, 0.0);
        const GridState r = make_gaussian(gf, 1.6, 0.8, -1.0, 0.0);
        const GridState cat = superpose({cdouble{1.0, 0.0}, cdouble{1.0, 0.0}}, {l, r});
        const WignerGrid w = wigner_function(cat);
        const ClassicalField via_w = wigner_classical_momentum(w, 0.02);
        const ClassicalField direct = classical_momentum_field(cat, 0.02);
        double worst = 0.0;
        bool saw_midline = false;
        for (std::size_t k = 0; k < gf.n; ++k) {
            if (!(via_w.mask[k] && direct.mask[k])) continue;
            if (std::abs(gf.x(k)) < 0.8) saw_midline = true;
            worst = std::max(worst, std::abs(via_w.values[k] - direct.values[k]));
        }
        CHECK(saw_midline);  // the inter-lobe region is part of the comparison
        CHECK(worst < 5e-4);
    }
}

TEST_CASE("cat state fringes push W negative, gaussians stay nonnegative") {
    const Grid1D g = Grid1D::over(-12.0, 12.0, 512);
    const GridState g1 = make_gaussian(g, -2.5, 0.8, 0.0, 0.0);
    const GridState g2 = make_gaussian(g, 2.5, 0.8, 0.0, 0.0);
    const WignerGrid wg = wigner_function(g1);
    CHECK(*std::min_element(wg.w.begin(), wg.w.end()) > -1e-10);

    const GridState cat = superpose({cdouble{1.0, 0.0}, cdouble{1.0, 0.0}}, {g1, g2});
    const WignerGrid wc = wigner_function(cat);
    CHECK(*std::min_element(wc.w.begin(), wc.w.end()) < -1e-3);
}

TEST_CASE("boost translates the Wigner function along p") {
    const Grid1D g = Grid1D::over(-10.0, 10.0, 256);
    const WignerGrid w0 = wigner_function(make_gaussian(g, 0.0, 1.0, 0.0, 0.0));
    // boost by an exact multiple of the Wigner p spacing
    const double p0 = 8.0 * w0.pgrid.dx;
    const WignerGrid wb = wigner_function(make_gaussian(g, 0.0, 1.0, p0, 0.0));
    double worst = 0.0;
    for (std::size_t k = 0; k < w0.xgrid.n; ++k)
        for (std::size_t m = 0; m + 8 < w0.pgrid.n; ++m)
            worst = std::max(worst, std::abs(wb.at(k, m + 8) - w0.at(k, m)));
    CHECK(worst < 1e-12);
}

TEST_CASE("phase-space covariance diagnostics") {
    const Grid1D g = Grid1D::over(-8.0, 8.0, 512);
    const double s = 1.0 / std::sqrt(2.0);  // ground state of the unit oscillator
    SUBCASE("gaussian: matrix near diag(DeltaX^2, DeltaP^2), stable under the sweep") {
        const WignerGrid w = wigner_function(make_gaussian(g, 0.0, s, 0.0, 0.0));
        const WignerCovarianceReport r = wigner_covariance(w, 1e-6);
        CHECK(!r.sign_change);
        CHECK(r.matrix.xx == doctest::Approx(s * s).epsilon(0.02));
        CHECK(r.matrix.yy == doctest::Approx(0.25 / (s * s)).epsilon(0.02));
        CHECK(std::abs(r.matrix.xy) < 0.01);
        CHECK(r.sweep_drift < 0.05);
    }
    SUBCASE("translation leaves the matrix unchanged") {
        const WignerGrid w0 = wigner_function(make_gaussian(g, 0.0, s, 0.0, 0.0));
        const WignerGrid w1 = wigner_function(make_gaussian(g, 0.8, s, 0.6, 0.0));
        const WignerCovarianceReport a = wigner_covariance(w0, 1e-6);
        const WignerCovarianceReport b = wigner_covariance(w1, 1e-6);
        CHECK(b.matrix.xx == doctest::Approx(a.matrix.xx).epsilon(0.01));
        CHECK(b.matrix.yy == doctest::Approx(a.matrix.yy).epsilon(0.01));
    }
    SUBCASE("cat state: sign change flagged") {
        const GridState cat = superpose(
            {cdouble{1.0, 0.0}, cdouble{1.0, 0.0}},
            {make_gaussian(g, -2.0, 0.7, 0.0, 0.0), make_gaussian(g, 2.0, 0.7, 0.0, 0.0)});
        const WignerCovarianceReport r = wigner_covariance(wigner_function(cat), 1e-6);
        CHECK(r.sign_change);
    }
}
