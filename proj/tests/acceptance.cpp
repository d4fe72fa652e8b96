// Acceptance suite: runs every verification criterion end to end and prints
// one PASS/FAIL line each. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "eur/finite_dim.hpp"
#include "eur/random_states.hpp"
#include "eur/scenarios.hpp"
#include "eur/state_factory.hpp"

using namespace eur;

namespace {

int g_failures = 0;

void line(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++g_failures;
}

double timed(const std::function<Report()>& f, Report& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool checks_pass(const Report& rep, const std::string& prefix = "") {
    bool ok = true;
    for (const auto& c : rep.checks)
        if (prefix.empty() || c.name.rfind(prefix, 0) == 0)
            ok = ok && c.status != CheckStatus::fail;
    return ok;
}

const RelationCheck* find_check(const Report& rep, const std::string& needle) {
    for (const auto& c : rep.checks)
        if (c.name.find(needle) != std::string::npos) return &c;
    return nullptr;
}

char buf[256];

// 1. Exact equality for 20 seeded chirped boosted gaussians at n = 4096 on
//    [-20, 20]; ratio within 1e-4; halving dx cuts the worst gap 3x; < 10 s.
void criterion_1() {
    ScenarioSpec spec;
    spec.name = "gaussian-family";
    Report rep;
    const double secs = timed([&] { return run_scenario(spec); }, rep);
    const auto* refine = find_check(rep, "halving dx");
    const bool ok = checks_pass(rep) && refine && refine->passed() && secs < 10.0;
    std::snprintf(buf, sizeof(buf),
                  "gaussian family: worst |ratio-1| = %.2e, refinement factor %.1f, %.2f s",
                  rep.params.at("worst_gap"), refine ? refine->lhs : 0.0, secs);
    line(1, ok, buf);
}

// 2. Oscillator eigenstates n = 0..5: deltaX DeltaP = hbar/2 within 1e-4;
//    n = 1 reproduces deltaX = 1/sqrt6 and DeltaP = sqrt(3/2).
void criterion_2() {
    ScenarioSpec spec;
    spec.name = "harmonic";
    const Report rep = run_scenario(spec);
    bool ok = true;
    double worst = 0.0;
    for (const auto& c : rep.checks)
        if (c.name.find("oscillator n=") != std::string::npos ||
            c.name.find("n=1:") != std::string::npos) {
            ok = ok && c.passed();
            worst = std::max(worst, std::abs(c.ratio - 1.0));
        }
    std::snprintf(buf, sizeof(buf),
                  "oscillator levels 0..5 and the n=1 values: worst |ratio-1| = %.2e", worst);
    line(2, ok, buf);
}

// 3. Mixed states: both sides of the density-operator identity within 1e-6
//    for 10 random rank-2 mixtures; inequality never violated; pure inputs
//    saturate within 1e-4.
void criterion_3() {
    ScenarioSpec spec;
    spec.name = "mixtures";
    const Report rep = run_scenario(spec);
    const auto* worst = find_check(rep, "worst rhoeq identity");
    const auto* margin = find_check(rep, "margin over mixtures");
    std::snprintf(buf, sizeof(buf),
                  "rank-2 mixtures: worst identity gap %.2e, inequality margin %.3f",
                  worst ? worst->lhs : 1.0, margin ? margin->lhs : -1.0);
    line(3, checks_pass(rep), buf);
}

// 4. EPR at 512^2: Cov(X)Cov(P) = (hbar/2)^2 I within 1e-3 per entry and
//    |r_P(P_nc) + r_F(X)| < 1e-3; one non-gaussian entangled state passes
//    FCov(X) Cov(P_nc) = (hbar/2)^2 I within 1e-3. Runtime < 60 s.
// 5. EPR collapse: P2 measurements steer P_cl(1) to ptilde within 1e-3.
void criteria_4_and_5() {
    ScenarioSpec spec;
    spec.name = "epr";
    Report rep;
    const double secs = timed([&] { return run_scenario(spec); }, rep);

    bool ok4 = secs < 60.0;
    double worst_entry = 0.0;
    for (const auto& c : rep.checks) {
        if (c.name.find("Cov(X)Cov(P)") != std::string::npos) {
            ok4 = ok4 && c.passed();
            worst_entry = std::max(worst_entry, c.absolute_gap);
        }
        if (c.name.find("entangled") != std::string::npos) ok4 = ok4 && c.passed();
    }
    const auto* sum = find_check(rep, "r_P(P_nc) + r_F(X)");
    ok4 = ok4 && sum && sum->passed();
    std::snprintf(buf, sizeof(buf),
                  "EPR matrix relation: worst entry gap %.2e, |corr sum| = %.2e, %.1f s",
                  worst_entry, sum ? sum->absolute_gap : 1.0, secs);
    line(4, ok4, buf);

    bool ok5 = true;
    double worst5 = 0.0;
    for (const auto& c : rep.checks)
        if (c.name.find("after P2") != std::string::npos) {
            ok5 = ok5 && c.passed();
            worst5 = std::max(worst5, c.absolute_gap);
        }
    std::snprintf(buf, sizeof(buf), "EPR collapse to ptilde: worst gap %.2e", worst5);
    line(5, ok5, buf);
}

// 6. Phase and number: products equal 1/2 within 1e-8 at n_phi = 256;
//    a single number state reports indeterminate.
void criterion_6() {
    ScenarioSpec spec;
    spec.name = "fock";
    const Report rep = run_scenario(spec);
    const auto* s01 = find_check(rep, "(|0>+|1>)/sqrt2: deltaPhi * DeltaN_nc");
    const auto* s02 = find_check(rep, "(|0>+|2>)/sqrt2: deltaPhi * DeltaN_nc");
    const auto* fock = find_check(rep, "|3>");
    const bool ok = s01 && s01->passed() && std::abs(s01->lhs - 0.5) < 1e-8 && s02 &&
                    s02->passed() && std::abs(s02->lhs - 0.5) < 1e-8 && fock &&
                    fock->status == CheckStatus::indeterminate;
    std::snprintf(buf, sizeof(buf),
                  "phase-number products: gaps %.2e / %.2e, |n> indeterminate: %s",
                  s01 ? std::abs(s01->lhs - 0.5) : 1.0, s02 ? std::abs(s02->lhs - 0.5) : 1.0,
                  fock && fock->status == CheckStatus::indeterminate ? "yes" : "no");
    line(6, ok, buf);
}

// 7. Energy bounds: harmonic estimate hbar*omega/2 within 1e-6; bouncing-ball
//    coefficients 1.249 and 1.856 within 5e-4.
void criterion_7() {
    const EntropicBoundResult r = entropic_bound_estimates();
    const bool ok = std::abs(r.harmonic_minimum - 0.5) < 1e-6 &&
                    std::abs(r.bounce_coefficient - 1.249) < 5e-4 &&
                    std::abs(r.exact_coefficient - 1.856) < 5e-4;
    std::snprintf(buf, sizeof(buf),
                  "energy bounds: harmonic %.8f, bounce %.6f, exact %.6f",
                  r.harmonic_minimum, r.bounce_coefficient, r.exact_coefficient);
    line(7, ok, buf);
}

// 8. Wigner: quasiclassical field equals the direct field within 1e-6 on the
//    joint support for 50 seeded states; marginals and purity within 1e-6.
void criterion_8() {
    ScenarioSpec spec;
    spec.name = "wigner-equivalence";
    const Report rep = run_scenario(spec);
    const auto* field = find_check(rep, "direct P_cl");
    const auto* marg = find_check(rep, "marginal");
    const auto* pur = find_check(rep, "W^2");
    const bool ok = field && field->passed() && marg && marg->passed() && pur &&
                    pur->passed();
    std::snprintf(buf, sizeof(buf),
                  "Wigner equivalence: field %.2e, marginals %.2e, purity %.2e",
                  field ? field->lhs : 1.0, marg ? marg->lhs : 1.0, pur ? pur->lhs : 1.0);
    line(8, ok, buf);
}

// 9. Heat-flow entropy rate: gaussian within 1%, bimodal within 2%.
void criterion_9() {
    ScenarioSpec spec;
    spec.name = "diffusion";
    const Report rep = run_scenario(spec);
    const auto* g = find_check(rep, "Gaussian heat flow");
    const auto* b = find_check(rep, "bimodal heat flow");
    const bool ok = g && g->passed() && b && b->passed();
    std::snprintf(buf, sizeof(buf), "entropy rate: gaussian %.2e (<1%%), bimodal %.2e (<2%%)",
                  g ? g->lhs : 1.0, b ? b->lhs : 1.0);
    line(9, ok, buf);
}

// 10. Finite dimensions: collision-length equality within 1e-12 for 100
//     random states in d = 2, 3, 5; generalized product = hbar/2 within 1e-8
//     for 100 random non-indeterminate pure states in d = 2, 3; the qubit
//     example reproduced exactly.
void criterion_10() {
    Rng rng(2024);
    bool ok = true;
    double worst_iv = 0.0;
    for (int d : {2, 3, 5}) {
        const MubSet m = mub_bases(d);
        for (int trial = 0; trial < 100; ++trial) {
            const FiniteState rho = (trial % 2 == 0)
                                        ? FiniteState::pure(random_pure_vector(rng, d))
                                        : FiniteState(random_density_matrix(rng, d));
            const IvanovicResult r = ivanovic_check(rho, m, 1e-12);
            ok = ok && r.equality.passed() && r.bound.passed();
            worst_iv = std::max(worst_iv, r.equality.absolute_gap);
        }
    }
    double worst_g = 0.0;
    for (int d : {2, 3}) {
        int collected = 0;
        while (collected < 100) {
            const FiniteObservable a(random_hermitian(rng, d));
            const FiniteObservable b(random_hermitian(rng, d));
            const GeneralizedURResult r =
                generalized_ur(a, b, FiniteState::pure(random_pure_vector(rng, d)), 1.0, 1e-8);
            if (r.indeterminate) continue;
            ++collected;
            ok = ok && r.check.passed();
            worst_g = std::max(worst_g, std::abs(r.check.lhs - 0.5));
        }
    }
    Eigen::MatrixXcd z(2, 2), x(2, 2);
    z << 1.0, 0.0, 0.0, -1.0;
    x << 0.0, 1.0, 1.0, 0.0;
    Eigen::VectorXcd psi(2);
    psi << cdouble{1.0, 0.0}, cdouble{0.0, 1.0};
    const GeneralizedURResult q =
        generalized_ur(FiniteObservable(z), FiniteObservable(x), FiniteState::pure(psi));
    ok = ok && std::abs(q.delta_ba - 0.5) < 1e-13 && std::abs(q.spread_nc - 1.0) < 1e-13;
    std::snprintf(buf, sizeof(buf),
                  "finite dimensions: worst sum-rule gap %.2e, worst product gap %.2e",
                  worst_iv, worst_g);
    line(10, ok, buf);
}

// 11. Box state flags Fisher divergence; DeltaP grows monotonically under
//     three grid refinements.
void criterion_11() {
    ScenarioSpec spec;
    spec.name = "box-divergence";
    const Report rep = run_scenario(spec);
    std::snprintf(buf, sizeof(buf), "box divergence: DeltaP %.2f -> %.2f over refinements",
                  rep.params.at("delta_p_coarsest"), rep.params.at("delta_p_finest"));
    line(11, checks_pass(rep), buf);
}

// 12. Property suites with zero violations: Cramer-Rao, variance additivity,
//     estimator optimality, curl-free 2D classical momentum.
void criterion_12() {
    Rng rng(777);
    const Grid1D g = Grid1D::over(-16.0, 16.0, 8192);
    bool cramer = true, additive = true, optimal = true, curl_free = true;

    for (int i = 0; i < 30; ++i) {
        const GridState s =
            (i % 3 == 2) ? random_phase_mixture(rng, g) : random_smooth_mixture(rng, g);
        const GridDistribution d = position_density(s);
        const FisherResult fr = fisher_length(d);
        cramer = cramer && std::sqrt(moments(d).variance) >= fr.delta - 1e-9;
        if (i % 3 != 2) {
            const DecompStats st = momentum_decomposition_stats(s);
            additive = additive &&
                       std::abs(st.var_obs - st.var_cl - st.var_nc) <=
                           1e-8 * std::max(1.0, std::abs(st.var_obs));
        }
    }

    {
        const GridState s = random_smooth_mixture(rng, g);
        const ClassicalField pcl = classical_momentum_field(s);
        const double best = estimator_error(s, pcl);
        std::normal_distribution<double> gauss(0.0, 0.5);
        for (int trial = 0; trial < 100; ++trial) {
            ClassicalField f = pcl;
            for (double& v : f.values) v += gauss(rng);
            optimal = optimal && estimator_error(s, f) >= best - 1e-12;
        }
    }

    {
        const Grid1D axis = Grid1D::over(-12.0, 12.0, 256);
        for (int trial = 0; trial < 4; ++trial) {
            const GridState2D s = random_entangled_2d(rng, {axis, axis});
            const VectorField2D f = vector_classical_momentum(s);
            const std::size_t n = axis.n;
            for (std::size_t ix = 4; ix + 4 < n; ++ix)
                for (std::size_t iy = 4; iy + 4 < n; ++iy) {
                    bool window = true;
                    for (std::ptrdiff_t a = -2; a <= 2 && window; ++a)
                        for (std::ptrdiff_t b = -2; b <= 2 && window; ++b)
                            window = f.mask[(ix + a) * n + (iy + b)] != 0;
                    if (!window) continue;
                    const auto at1 = [&](std::ptrdiff_t dy) { return f.v1[ix * n + iy + dy]; };
                    const auto at2 = [&](std::ptrdiff_t dx) {
                        return f.v2[(ix + dx) * n + iy];
                    };
                    const double curl =
                        (at1(-2) - 8.0 * at1(-1) + 8.0 * at1(1) - at1(2)) / (12.0 * axis.dx) -
                        (at2(-2) - 8.0 * at2(-1) + 8.0 * at2(1) - at2(2)) / (12.0 * axis.dx);
                    curl_free = curl_free && std::abs(curl) < 1e-8;
                }
        }
    }

    const bool ok = cramer && additive && optimal && curl_free;
    std::snprintf(buf, sizeof(buf),
                  "properties: Cramer-Rao %s, additivity %s, optimality %s, curl-free %s",
                  cramer ? "ok" : "VIOLATED", additive ? "ok" : "VIOLATED",
                  optimal ? "ok" : "VIOLATED", curl_free ? "ok" : "VIOLATED");
    line(12, ok, buf);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criteria_4_and_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%d criterion failure(s)\n", g_failures);
    return g_failures;
}
