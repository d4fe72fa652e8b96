#include "eur/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>

#include "eur/finite_dim.hpp"
#include "eur/random_states.hpp"
#include "eur/state_factory.hpp"
#include "eur/wigner.hpp"

namespace eur {

namespace {

double param(const ScenarioSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return (it != spec.params.end()) ? it->second : fallback;
}

std::size_t grid_n(const ScenarioSpec& spec, std::size_t fallback) {
    return spec.grid_n ? spec.grid_n : fallback;
}

void note_param(Report& rep, const std::string& k, double v) { rep.params[k] = v; }

/// Density-weighted mean of a classical field (the measured value of a
/// constant field).
double field_mean(const GridState& s, const ClassicalField& f) {
    double m = 0.0;
    for (std::size_t k = 0; k < s.grid.n; ++k)
        if (f.mask[k]) m += std::norm(s.amplitudes[k]) * f.values[k];
    return m * s.grid.dx;
}

GridState random_mixture_component(Rng& rng, const Grid1D& grid, double hbar) {
    // Node-free positive mixture with a global boost + chirp, sized so the
    // 1e-12 support stays inside the grid.
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int parts = 2 + static_cast<int>(u01(rng) * 2.0);
    std::vector<cdouble> amp(grid.n, cdouble{0.0, 0.0});
    for (int c = 0; c < parts; ++c) {
        const double mu = -2.2 + 4.4 * u01(rng);
        const double sigma = 0.7 + 0.5 * u01(rng);
        const double w = 0.4 + 0.6 * u01(rng);
        for (std::size_t k = 0; k < grid.n; ++k) {
            const double d = grid.x(k) - mu;
            amp[k] += w * std::exp(-d * d / (4.0 * sigma * sigma));
        }
    }
    const double p0 = -1.0 + 2.0 * u01(rng);
    const double chirp = -0.3 + 0.6 * u01(rng);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.x(k);
        const double phase = (p0 * x + chirp * x * x) / hbar;
        amp[k] *= cdouble{std::cos(phase), std::sin(phase)};
    }
    return GridState(grid, std::move(amp), hbar);
}

// ---- scenario bodies ---------------------------------------------------------

Report scenario_gaussian_family(const ScenarioSpec& spec) {
    Report rep;
    const std::size_t count = static_cast<std::size_t>(param(spec, "count", 20));
    const std::size_t n = grid_n(spec, 4096);
    const double L = param(spec, "domain", 20.0);
    const double tol = 1e-4 * spec.tol_scale;
    note_param(rep, "count", static_cast<double>(count));
    note_param(rep, "grid_n", static_cast<double>(n));
    note_param(rep, "domain", L);

    Rng rng(spec.seed);
    struct Draw {
        double mu, sigma, p0, chirp;
    };
    std::vector<Draw> draws(count);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (auto& d : draws) {
        d.sigma = 0.5 + 1.5 * u01(rng);
        d.mu = -2.0 + 4.0 * u01(rng);
        d.p0 = -2.0 + 4.0 * u01(rng);
        d.chirp = -0.5 + 1.0 * u01(rng);
    }

    const auto worst_gap = [&](std::size_t nn) {
        const Grid1D g = Grid1D::over(-L, L, nn);
        double worst = 0.0;
        for (const auto& d : draws) {
            const GridState s = make_gaussian(g, d.mu, d.sigma, d.p0, d.chirp, spec.hbar);
            const ExactURResult r = exact_ur_position(s, tol);
            worst = std::max(worst, std::abs(r.exact.ratio - 1.0));
        }
        return worst;
    };

    const Grid1D g = Grid1D::over(-L, L, n);
    double worst = 0.0, heis_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const auto& d = draws[i];
        const GridState s = make_gaussian(g, d.mu, d.sigma, d.p0, d.chirp, spec.hbar);
        ExactURResult r = exact_ur_position(s, tol);
        r.exact.name = "draw " + std::to_string(i) + ": deltaX * DeltaP_nc = hbar/2";
        rep.checks.push_back(r.exact);
        worst = std::max(worst, std::abs(r.exact.ratio - 1.0));
        heis_min = std::min(heis_min, r.heisenberg.lhs - r.heisenberg.rhs);
        if (i == 0) {
            const ClassicalField f = classical_momentum_field(s);
            FieldExport fe;
            fe.name = "pcl_draw0";
            fe.columns = {"x", "value"};
            for (std::size_t k = 0; k < g.n; ++k)
                if (f.mask[k]) fe.rows.push_back({g.x(k), f.values[k]});
            rep.fields.push_back(std::move(fe));
        }
    }
    rep.checks.push_back(inequality_check("Heisenberg margin over all draws",
                                          "heisenberg", heis_min, 0.0,
                                          1e-9 * spec.hbar));
    if (param(spec, "refine", 1.0) != 0.0) {
        const double worst_fine = worst_gap(2 * n);
        rep.checks.push_back(inequality_check(
            "halving dx reduces worst |ratio-1| at least 3x", "exact-position-momentum",
            worst / std::max(worst_fine, 1e-300), 3.0, 0.0));
        note_param(rep, "worst_gap", worst);
        note_param(rep, "worst_gap_refined", worst_fine);
    }
    return rep;
}

Report scenario_harmonic(const ScenarioSpec& spec) {
    Report rep;
    const std::size_t n = grid_n(spec, 2048);
    const double L = param(spec, "domain", 12.0);
    const double tol = 1e-4 * spec.tol_scale;
    note_param(rep, "grid_n", static_cast<double>(n));
    note_param(rep, "domain", L);
    const Grid1D g = Grid1D::over(-L, L, n);

    for (int level = 0; level <= 5; ++level) {
        const GridState s = make_harmonic_eigenstate(g, level, 1.0, 1.0, spec.hbar);
        ExactURResult r = exact_ur_position(s, tol);
        r.exact.name = "oscillator n=" + std::to_string(level) + ": deltaX * DeltaP = hbar/2";
        r.exact.ref_tag = "real-wavefunction-identity";
        rep.checks.push_back(r.exact);
        if (level == 1) {
            rep.checks.push_back(equality_check("n=1: deltaX = 1/sqrt(6)",
                                                "real-wavefunction-identity", r.fisher.delta,
                                                1.0 / std::sqrt(6.0), tol));
            rep.checks.push_back(equality_check("n=1: DeltaP = sqrt(3/2)",
                                                "real-wavefunction-identity",
                                                std::sqrt(r.stats.var_obs),
                                                std::sqrt(1.5), tol));
        }
    }

    const GridState ground = make_harmonic_eigenstate(g, 0, 1.0, 1.0, spec.hbar);
    const EnergyReport er = energy_decomposition(
        ground, [](double x) { return 0.5 * x * x; }, 1.0, 1e-6 * spec.tol_scale);
    rep.checks.push_back(er.consistency);
    rep.checks.push_back(equality_check("ground state: nonclassical kinetic = 1/4",
                                        "energy-decomposition", er.nonclassical_kinetic, 0.25,
                                        1e-6 * spec.tol_scale));
    rep.checks.push_back(equality_check("ground state: E = 1/2", "energy-decomposition",
                                        er.total, 0.5, 1e-6 * spec.tol_scale));

    const EntropicBoundResult eb = entropic_bound_estimates(spec.hbar, 1.0, 1.0, 1.0);
    rep.checks.push_back(eb.harmonic);
    return rep;
}

Report scenario_bouncing_ball(const ScenarioSpec& spec) {
    Report rep;
    const EntropicBoundResult eb = entropic_bound_estimates(spec.hbar, 1.0, 1.0, 1.0);
    rep.checks.push_back(eb.bounce_bound);
    rep.checks.push_back(eb.bounce_exact);
    RelationCheck airy = equality_check("first Airy zero magnitude", "bounce-exact",
                                        eb.airy_zero, 2.33811, 1e-5);
    rep.checks.push_back(airy);
    note_param(rep, "airy_zero", eb.airy_zero);
    note_param(rep, "bound_coefficient", eb.bounce_coefficient);
    note_param(rep, "exact_coefficient", eb.exact_coefficient);
    return rep;
}

Report scenario_epr(const ScenarioSpec& spec) {
    Report rep;
    const std::size_t n = grid_n(spec, 512);
    // Domain balances two error floors on the narrow total-momentum mode
    // (width hbar/tau): corner truncation of the v-Gaussian falls with L,
    // x-resolution aliasing of the sigma-wide structure rises with L.
    // At n = 512 the total-momentum variance is best near L = 27.
    const double L = param(spec, "domain", 27.0);
    const double sigma = param(spec, "sigma", 0.1);
    const double tau = param(spec, "tau", 10.0);
    const double a = param(spec, "a", 1.0);
    const double p0 = param(spec, "p0", 2.0);
    const double tol = 1e-3 * spec.tol_scale;
    note_param(rep, "grid_n", static_cast<double>(n));
    note_param(rep, "domain", L);
    note_param(rep, "sigma", sigma);
    note_param(rep, "tau", tau);
    note_param(rep, "a", a);
    note_param(rep, "p0", p0);

    const Grid1D axis = Grid1D::over(-L, L, n);
    const GridState2D s = make_epr({axis, axis}, sigma, tau, a, p0, spec.hbar);

    // Heisenberg matrix product saturates for this Gaussian state.
    const MatrixURResult mr = matrix_ur_check(s, tol);
    const double scale = 0.25 * spec.hbar * spec.hbar;
    const char* names[2][2] = {{"Cov(X)Cov(P)_11", "Cov(X)Cov(P)_12"},
                               {"Cov(X)Cov(P)_21", "Cov(X)Cov(P)_22"}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double target = (i == j) ? 1.0 : 0.0;
            rep.checks.push_back(equality_check(
                std::string(names[i][j]) + " = (hbar/2)^2 I", "epr-matrix-relation",
                mr.heis_product[i][j] / scale - target + 1.0, 1.0, tol));
        }

    const CorrelationRelationResult cr = correlation_relation_check(s, tol);
    rep.checks.push_back(cr.sum_check);
    note_param(rep, "r_fisher_x", cr.r_fisher_x);
    note_param(rep, "r_pearson_pnc", cr.r_pearson_pnc);

    // Gaussian state: Pearson correlations of X and P cancel as well.
    {
        const GridDistribution2D dx2 = position_density(s);
        double mx[2];
        Sym2 cx;
        moments(dx2, mx, cx);
        double mp[2];
        Sym2 cp;
        spectral_momentum_moments(s, mp, cp);
        const double rpx = cx.xy / std::sqrt(cx.xx * cx.yy);
        const double rpp = cp.xy / std::sqrt(cp.xx * cp.yy);
        rep.checks.push_back(equality_check("r_P(X) + r_P(P) = 0", "epr-correlation",
                                            rpx + rpp + 1.0, 1.0, tol));
    }

    // Momentum measurement on particle 2 steers the classical momentum of
    // particle 1 to ptilde = (sigma^2 p + tau^2 (p0 - p)) / (sigma^2 + tau^2).
    // Outcomes snap to the conjugate grid; ptilde is evaluated at the snapped p.
    const Grid1D conj = axis.conjugate(spec.hbar);
    for (double p_req : {0.0, 1.0, 2.0}) {
        const double p = conj.x(conj.index_of(p_req));
        const GridState collapsed = condition_on_momentum(s, 2, p);
        const ClassicalField f = classical_momentum_field(collapsed);
        const double ptilde =
            (sigma * sigma * p + tau * tau * (p0 - p)) / (sigma * sigma + tau * tau);
        rep.checks.push_back(equality_check(
            "P_cl(1) after P2 = " + std::to_string(p_req) + " equals ptilde", "epr-collapse",
            field_mean(collapsed, f) - ptilde + 1.0, 1.0, tol));
    }

    // One non-Gaussian entangled state carries the full matrix relation.
    {
        Rng rng(spec.seed);
        const std::size_t n2 = static_cast<std::size_t>(param(spec, "entangled_n", 1024));
        const Grid1D ax2 = Grid1D::over(-12.0, 12.0, n2);
        const GridState2D e = random_entangled_2d(rng, {ax2, ax2}, spec.hbar);
        MatrixURResult em = matrix_ur_check(e, tol);
        for (auto& c : em.checks) {
            c.name = "entangled " + c.name;
            rep.checks.push_back(c);
        }
        const CorrelationRelationResult ec = correlation_relation_check(e, tol);
        RelationCheck sum = ec.sum_check;
        sum.name = "entangled r_P(P_nc) + r_F(X) = 0";
        rep.checks.push_back(sum);
    }
    return rep;
}

Report scenario_fock(const ScenarioSpec& spec) {
    Report rep;
    const std::size_t n_phi = grid_n(spec, 256);
    const double tol = 1e-8 * spec.tol_scale;
    note_param(rep, "n_phi", static_cast<double>(n_phi));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    {
        const NumberState s01 = make_number_superposition(
            0, {cdouble{inv_sqrt2, 0.0}, cdouble{inv_sqrt2, 0.0}}, spec.hbar);
        PhaseNumberResult r = exact_ur_phase_number(s01, PhaseNumberMode::photon, n_phi, tol);
        r.exact.name = "(|0>+|1>)/sqrt2: " + r.exact.name;
        rep.checks.push_back(r.exact);
        rep.checks.push_back(equality_check("(|0>+|1>)/sqrt2: deltaPhi = 1", "phase-number",
                                            r.fisher.delta, 1.0, 1e-10));
        rep.checks.push_back(equality_check("(|0>+|1>)/sqrt2: DeltaN_nc = 1/2", "phase-number",
                                            std::sqrt(r.stats.var_nc), 0.5, 1e-10));
    }
    {
        const NumberState s02 = make_number_superposition(
            0, {cdouble{inv_sqrt2, 0.0}, cdouble{0.0, 0.0}, cdouble{inv_sqrt2, 0.0}},
            spec.hbar);
        PhaseNumberResult r = exact_ur_phase_number(s02, PhaseNumberMode::photon, n_phi, tol);
        r.exact.name = "(|0>+|2>)/sqrt2: " + r.exact.name;
        rep.checks.push_back(r.exact);
    }
    {
        const NumberState fock = make_fock(3, spec.hbar);
        PhaseNumberResult r = exact_ur_phase_number(fock, PhaseNumberMode::photon, n_phi, tol);
        r.exact.name = "|3>: " + r.exact.name;
        rep.checks.push_back(r.exact);  // expected status: indeterminate
    }
    {
        // Planar rotor, negative indices allowed; same product at hbar/2.
        const NumberState rotor(-1, 1,
                                {cdouble{inv_sqrt2, 0.0}, cdouble{0.0, 0.0},
                                 cdouble{inv_sqrt2, 0.0}},
                                spec.hbar, /*photon_mode=*/false);
        PhaseNumberResult r = exact_ur_phase_number(rotor, PhaseNumberMode::rotor, n_phi, tol);
        r.exact.name = "rotor (|-1>+|1>)/sqrt2: " + r.exact.name;
        rep.checks.push_back(r.exact);
    }
    {
        // Mixtures only bound the product from below.
        const NumberState a = make_number_superposition(
            0, {cdouble{inv_sqrt2, 0.0}, cdouble{inv_sqrt2, 0.0}}, spec.hbar);
        const NumberState b = make_number_superposition(
            0, {cdouble{0.6, 0.0}, cdouble{0.0, 0.5}, cdouble{0.0, 0.0},
                cdouble{0.624499799839840, 0.0}},
            spec.hbar);
        PhaseNumberResult r = exact_ur_phase_number_mixed({0.5, 0.5}, {a, b},
                                                          PhaseNumberMode::photon, n_phi);
        r.exact.name = "mixture: " + r.exact.name + " (lower bound)";
        rep.checks.push_back(r.exact);
    }
    return rep;
}

Report scenario_mub(const ScenarioSpec& spec) {
    Report rep;
    Rng rng(spec.seed);
    for (int d : {2, 3, 5}) {
        const MubSet m = mub_bases(d);
        rep.checks.push_back(absolute_check(
            "d=" + std::to_string(d) + ": basis overlaps are 1/d", "mutually-unbiased-bases",
            m.max_overlap_deviation(), 0.0, 1e-12));
        const FiniteState pure = FiniteState::pure(random_pure_vector(rng, d));
        IvanovicResult iv = ivanovic_check(pure, m, 1e-12 * spec.tol_scale);
        iv.equality.name = "d=" + std::to_string(d) + " random pure: " + iv.equality.name;
        rep.checks.push_back(iv.equality);
        const FiniteState mixed = FiniteState(random_density_matrix(rng, d));
        IvanovicResult ivm = ivanovic_check(mixed, m, 1e-12 * spec.tol_scale);
        ivm.equality.name = "d=" + std::to_string(d) + " random mixed: " + ivm.equality.name;
        rep.checks.push_back(ivm.equality);
        rep.checks.push_back(ivm.bound);
    }
    {
        // Qubit |0>: collision lengths (1, 2, 2), reciprocals sum to 2.
        Eigen::VectorXcd ket0(2);
        ket0 << 1.0, 0.0;
        const IvanovicResult iv = ivanovic_check(FiniteState::pure(ket0), mub_bases(2));
        rep.checks.push_back(equality_check("qubit |0>: sum 1/L_i = 2", "collision-length-sum",
                                            iv.equality.lhs, 2.0, 1e-12));
        const FiniteState mm = FiniteState::maximally_mixed(2);
        const IvanovicResult ivm = ivanovic_check(mm, mub_bases(2));
        rep.checks.push_back(equality_check("qubit I/2: sum 1/L_i = 3/2",
                                            "collision-length-sum", ivm.equality.lhs, 1.5,
                                            1e-12));
    }
    {
        // A = sigma_z, B = sigma_x, psi = (|0> + i|1>)/sqrt2.
        Eigen::MatrixXcd z(2, 2), x(2, 2);
        z << 1.0, 0.0, 0.0, -1.0;
        x << 0.0, 1.0, 1.0, 0.0;
        Eigen::VectorXcd psi(2);
        psi << cdouble{1.0, 0.0}, cdouble{0.0, 1.0};
        const GeneralizedURResult r = generalized_ur(FiniteObservable(z), FiniteObservable(x),
                                                     FiniteState::pure(psi), spec.hbar,
                                                     1e-10 * spec.tol_scale);
        rep.checks.push_back(r.check);
        rep.checks.push_back(equality_check("qubit example: delta_B A = 1/2", "finite-exact",
                                            r.delta_ba, 0.5, 1e-12));
        rep.checks.push_back(equality_check("qubit example: Delta B^A_nc = 1", "finite-exact",
                                            r.spread_nc, 1.0, 1e-12));
    }
    return rep;
}

Report scenario_diffusion(const ScenarioSpec& spec) {
    Report rep;
    const std::size_t n = grid_n(spec, 512);
    const double L = param(spec, "domain", 12.0);
    const double gamma = param(spec, "gamma", 0.1);
    note_param(rep, "grid_n", static_cast<double>(n));
    note_param(rep, "gamma", gamma);

    const Grid1D g = Grid1D::over(-L, L, n);
    const double dx = g.dx;
    const double dt = 0.2 * dx * dx / gamma;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(1.5 / dt));
    note_param(rep, "dt", dt);
    note_param(rep, "steps", static_cast<double>(steps));

    {
        const GridState s = make_gaussian(g, 0.0, 1.0, 0.0, 0.0, spec.hbar);
        const DiffusionReport dr =
            diffusion_entropy_rate_check(position_density(s), gamma, steps, dt);
        rep.checks.push_back(absolute_check("Gaussian heat flow: max |dS/dt / (gamma F) - 1|",
                                            "entropy-rate", dr.max_rel_mismatch, 0.0,
                                            0.01 * spec.tol_scale));
    }
    {
        const GridState a = make_gaussian(g, -1.5, 0.8, 0.0, 0.0, spec.hbar);
        const GridState b = make_gaussian(g, 1.5, 0.8, 0.0, 0.0, spec.hbar);
        std::vector<double> p(g.n);
        for (std::size_t k = 0; k < g.n; ++k)
            p[k] = 0.5 * std::norm(a.amplitudes[k]) + 0.5 * std::norm(b.amplitudes[k]);
        GridDistribution bimodal(g, std::move(p));
        bimodal.normalize();
        const DiffusionReport dr = diffusion_entropy_rate_check(bimodal, gamma, steps, dt);
        rep.checks.push_back(absolute_check("bimodal heat flow: max |dS/dt / (gamma F) - 1|",
                                            "entropy-rate", dr.max_rel_mismatch, 0.0,
                                            0.02 * spec.tol_scale));
    }
    {
        // Stationary uniform periodic density: zero rate, divergent deltaX.
        GridDistribution uniform(g, std::vector<double>(g.n, 1.0 / (2.0 * L)),
                                 /*periodic=*/true);
        DiffusionOptions opt;
        opt.periodic = true;
        opt.checkpoint_every = 5;
        const DiffusionReport dr = diffusion_entropy_rate_check(uniform, gamma, 50, dt, opt);
        double max_rate = 0.0;
        bool divergent = !dr.checkpoints.empty();
        for (const auto& cp : dr.checkpoints) {
            max_rate = std::max(max_rate, std::abs(cp.measured_rate));
            divergent = divergent && cp.fisher_divergent;
        }
        rep.checks.push_back(absolute_check("uniform periodic: dS/dt = 0", "entropy-rate",
                                            max_rate, 0.0, 1e-10));
        rep.checks.push_back(absolute_check("uniform periodic: deltaX divergent",
                                            "entropy-rate", divergent ? 0.0 : 1.0, 0.0, 0.5));
    }
    return rep;
}

Report scenario_wigner_equivalence(const ScenarioSpec& spec) {
    Report rep;
    const std::size_t count = static_cast<std::size_t>(param(spec, "count", 50));
    const std::size_t n = grid_n(spec, 2048);
    const double L = param(spec, "domain", 14.0);
    const double field_eps = param(spec, "field_eps", 1e-4);
    const double tol = 1e-6 * spec.tol_scale;
    note_param(rep, "count", static_cast<double>(count));
    note_param(rep, "grid_n", static_cast<double>(n));
    note_param(rep, "domain", L);

    Rng rng(spec.seed);
    const Grid1D g = Grid1D::over(-L, L, n);
    double worst_field = 0.0, worst_marginal = 0.0, worst_purity = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const GridState s = random_equivalence_state(rng, g, spec.hbar);
        const WignerGrid w = wigner_function(s);

        const ClassicalField via_wigner = wigner_classical_momentum(w, field_eps);
        const ClassicalField direct = classical_momentum_field(s, field_eps);
        for (std::size_t k = 0; k < g.n; ++k)
            if (via_wigner.mask[k] && direct.mask[k])
                worst_field =
                    std::max(worst_field, std::abs(via_wigner.values[k] - direct.values[k]));

        const std::vector<double> mx = wigner_marginal_x(w);
        const GridDistribution px = position_density(s);
        for (std::size_t k = 0; k < g.n; ++k)
            worst_marginal = std::max(worst_marginal, std::abs(mx[k] - px.p[k]));

        // Momentum density on the Wigner p-grid via a zero-padded transform
        // (pad factor 4 reproduces the Wigner p spacing exactly).
        const std::size_t pad = 4 * n;
        std::vector<cdouble> amp(pad, cdouble{0.0, 0.0});
        const std::size_t off = (pad - n) / 2;
        for (std::size_t k = 0; k < n; ++k) amp[off + k] = s.amplitudes[k];
        GridState wide;
        wide.grid = Grid1D(g.x0 - static_cast<double>(off) * g.dx, g.dx, pad);
        wide.amplitudes = std::move(amp);
        wide.hbar = s.hbar;
        const GridState tilde = momentum_representation(wide);
        const std::vector<double> mp = wigner_marginal_p(w);
        for (std::size_t m = 0; m < w.pgrid.n; ++m) {
            const std::size_t j = m + pad / 2 - w.pgrid.n / 2;
            const double ref = std::norm(tilde.amplitudes[j]);
            worst_marginal = std::max(worst_marginal, std::abs(mp[m] - ref));
        }
        worst_purity = std::max(worst_purity, std::abs(wigner_purity(w) - 1.0));
    }
    rep.checks.push_back(absolute_check("max |P_cl from W - direct P_cl| on joint support",
                                        "wigner-equivalence", worst_field, 0.0, tol));
    rep.checks.push_back(absolute_check("max marginal deviation", "wigner-marginals",
                                        worst_marginal, 0.0, tol));
    rep.checks.push_back(absolute_check("max |(2 pi hbar) Int W^2 - 1|", "wigner-purity",
                                        worst_purity, 0.0, tol));

    {
        // Interference makes W negative for a two-lobe superposition but not
        // for a Gaussian.
        const Grid1D gc = Grid1D::over(-12.0, 12.0, 512);
        const GridState g1 = make_gaussian(gc, -2.5, 0.8, 0.0, 0.0, spec.hbar);
        const GridState g2 = make_gaussian(gc, 2.5, 0.8, 0.0, 0.0, spec.hbar);
        const GridState cat = superpose({cdouble{1.0, 0.0}, cdouble{1.0, 0.0}}, {g1, g2});
        const WignerGrid wcat = wigner_function(cat);
        const double min_cat = *std::min_element(wcat.w.begin(), wcat.w.end());
        rep.checks.push_back(inequality_check("cat state: min W < 0 (fringes)",
                                              "wigner-negativity", -min_cat, 1e-3, 0.0));
        const WignerGrid wg = wigner_function(g1);
        const double min_g = *std::min_element(wg.w.begin(), wg.w.end());
        rep.checks.push_back(inequality_check("Gaussian: W >= -1e-10", "wigner-nonnegative",
                                              min_g, -1e-10, 0.0));

        // plot-ready cat-state phase-space slice (decimated)
        FieldExport fe;
        fe.name = "wigner_cat";
        fe.columns = {"x", "p", "value"};
        for (std::size_t k = 0; k < wcat.xgrid.n; k += 8)
            for (std::size_t m = 0; m < wcat.pgrid.n; m += 8) {
                const double v = wcat.at(k, m);
                if (std::abs(wcat.pgrid.x(m)) > 6.0) continue;
                fe.rows.push_back({wcat.xgrid.x(k), wcat.pgrid.x(m), v});
            }
        rep.fields.push_back(std::move(fe));
    }
    return rep;
}

Report scenario_mixtures(const ScenarioSpec& spec) {
    Report rep;
    const std::size_t count = static_cast<std::size_t>(param(spec, "count", 10));
    const std::size_t n = grid_n(spec, 1024);
    const double L = param(spec, "domain", 10.0);
    note_param(rep, "count", static_cast<double>(count));
    note_param(rep, "grid_n", static_cast<double>(n));

    Rng rng(spec.seed);
    const Grid1D g = Grid1D::over(-L, L, n);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst_identity = 0.0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const GridState psi1 = random_mixture_component(rng, g, spec.hbar);
        const GridState psi2 = random_mixture_component(rng, g, spec.hbar);
        const double w = 0.25 + 0.5 * u01(rng);
        const GridDensity rho = density_from_mixture({w, 1.0 - w}, {psi1, psi2});
        const MixedURResult r = mixed_ur_check(rho, 1e-6 * spec.tol_scale);
        worst_identity = std::max(worst_identity, std::abs(r.identity.ratio - 1.0));
        min_margin = std::min(min_margin, r.exact_inequality.lhs - r.exact_inequality.rhs);
        if (i < 2) {
            RelationCheck c = r.identity;
            c.name = "mixture " + std::to_string(i) + ": " + c.name;
            rep.checks.push_back(c);
        }
    }
    rep.checks.push_back(absolute_check("worst rhoeq identity |ratio - 1| over mixtures",
                                        "mixed-identity", worst_identity, 0.0,
                                        1e-6 * spec.tol_scale));
    rep.checks.push_back(inequality_check("deltaX DeltaP_nc >= hbar/2 margin over mixtures",
                                          "mixed-exact-inequality", min_margin, 0.0, 1e-12));

    for (int i = 0; i < 2; ++i) {
        const GridState psi = random_mixture_component(rng, g, spec.hbar);
        const MixedURResult r = mixed_ur_check(density_from_pure(psi), 1e-6 * spec.tol_scale);
        rep.checks.push_back(equality_check(
            "pure density " + std::to_string(i) + ": deltaX DeltaP_nc = hbar/2 (saturation)",
            "mixed-exact-inequality", r.exact_inequality.lhs, r.exact_inequality.rhs,
            1e-4 * spec.tol_scale));
    }
    return rep;
}

Report scenario_box_divergence(const ScenarioSpec& spec) {
    Report rep;
    const double L = param(spec, "domain", 4.0);
    std::vector<double> dps;
    bool all_flagged = true;
    for (std::size_t n : {512u, 1024u, 2048u, 4096u}) {
        const Grid1D g = Grid1D::over(-L, L, n);
        const GridState s = make_box(g, 0.0, 1.0, spec.hbar);
        const FisherResult fr = fisher_length(position_density(s));
        all_flagged = all_flagged && fr.divergent;
        dps.push_back(std::sqrt(spectral_momentum_moments(s).variance));
    }
    rep.checks.push_back(absolute_check("box: Fisher divergence flagged at every n",
                                        "box-divergence", all_flagged ? 0.0 : 1.0, 0.0, 0.5));
    double min_growth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < dps.size(); ++i)
        min_growth = std::min(min_growth, dps[i] / dps[i - 1]);
    rep.checks.push_back(inequality_check("box: DeltaP grows under each refinement",
                                          "box-divergence", min_growth, 1.0, 0.0));
    note_param(rep, "delta_p_coarsest", dps.front());
    note_param(rep, "delta_p_finest", dps.back());

    const Grid1D g = Grid1D::over(-L, L, 1024);
    const GridState s = make_box(g, 0.0, 1.0, spec.hbar);
    const ExactURResult r = exact_ur_position(s);
    rep.checks.push_back(absolute_check("box: exact relation reports divergent",
                                        "box-divergence",
                                        r.exact.status == CheckStatus::divergent ? 0.0 : 1.0,
                                        0.0, 0.5));
    return rep;
}

struct ScenarioEntry {
    std::string description;
    std::function<Report(const ScenarioSpec&)> run;
};

const std::map<std::string, ScenarioEntry>& registry() {
    static const std::map<std::string, ScenarioEntry> reg = {
        {"gaussian-family",
         {"chirped boosted Gaussians: exact position-momentum equality with grid refinement",
          scenario_gaussian_family}},
        {"harmonic",
         {"harmonic oscillator eigenstates: real-wavefunction identity, energy split, "
          "entropic ground-state bound",
          scenario_harmonic}},
        {"bouncing-ball",
         {"entropic lower bound for a particle bouncing in gravity vs the Airy value",
          scenario_bouncing_ball}},
        {"epr",
         {"two-particle EPR state: matrix uncertainty product, correlation sum, and "
          "conditional collapse of the classical momentum",
          scenario_epr}},
        {"fock",
         {"phase and number: exact product 1/2 for superpositions, indeterminate for "
          "number states, rotor variant, mixture lower bound",
          scenario_fock}},
        {"mub",
         {"mutually unbiased bases: collision-length sum rule and the qubit "
          "generalized exact relation",
          scenario_mub}},
        {"diffusion",
         {"heat-flow entropy production rate against gamma / deltaX^2", scenario_diffusion}},
        {"wigner-equivalence",
         {"Wigner quasiclassical momentum equals the direct classical momentum; marginal "
          "and purity fidelity",
          scenario_wigner_equivalence}},
        {"mixtures",
         {"rank-2 mixed states: density-operator identity and inequality, pure-state "
          "saturation",
          scenario_mixtures}},
        {"box-divergence",
         {"box state: flagged Fisher divergence and momentum spread growth under refinement",
          scenario_box_divergence}},
    };
    return reg;
}

}  // namespace

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : registry()) names.push_back(k);
    return names;
}

std::string scenario_description(const std::string& name) {
    const auto it = registry().find(name);
    return (it != registry().end()) ? it->second.description : std::string{};
}

bool has_scenario(const std::string& name) { return registry().count(name) != 0; }

Report run_scenario(const ScenarioSpec& spec) {
    const auto it = registry().find(spec.name);
    if (it == registry().end())
        throw std::invalid_argument("unknown scenario: " + spec.name);
    const auto t0 = std::chrono::steady_clock::now();
    Report rep = it->second.run(spec);
    rep.scenario = spec.name;
    rep.params["seed"] = static_cast<double>(spec.seed);
    rep.params["hbar"] = spec.hbar;
    rep.params["tol_scale"] = spec.tol_scale;
    for (const auto& [k, v] : spec.params) rep.params[k] = v;
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace eur
