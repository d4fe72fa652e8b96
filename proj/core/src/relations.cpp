#include "eur/relations.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eur/airy.hpp"

namespace eur {

namespace {

constexpr double kTiny = 1e-14;

double golden_minimize(const std::function<double(double)>& f, double lo, double hi) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 300 && (b - a) > 1e-14 * (std::abs(a) + std::abs(b)); ++i) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return f(0.5 * (a + b));
}

void mat_mul(const Sym2& a, const Sym2& b, double out[2][2]) {
    out[0][0] = a.xx * b.xx + a.xy * b.xy;
    out[0][1] = a.xx * b.xy + a.xy * b.yy;
    out[1][0] = a.xy * b.xx + a.yy * b.xy;
    out[1][1] = a.xy * b.xy + a.yy * b.yy;
}

}  // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::divergent: return "divergent";
        case CheckStatus::indeterminate: return "indeterminate";
    }
    return "fail";
}

RelationCheck equality_check(std::string name, std::string tag, double lhs, double rhs,
                             double tol) {
    RelationCheck c;
    c.name = std::move(name);
    c.ref_tag = std::move(tag);
    c.lhs = lhs;
    c.rhs = rhs;
    c.absolute_gap = std::abs(lhs - rhs);
    c.tolerance = tol;
    if (rhs != 0.0) {
        c.ratio = lhs / rhs;
        c.status = (std::abs(c.ratio - 1.0) < tol) ? CheckStatus::pass : CheckStatus::fail;
    } else {
        c.ratio = std::numeric_limits<double>::quiet_NaN();
        c.status = (c.absolute_gap < tol) ? CheckStatus::pass : CheckStatus::fail;
    }
    return c;
}

RelationCheck inequality_check(std::string name, std::string tag, double lhs, double rhs,
                               double tol) {
    RelationCheck c;
    c.name = std::move(name);
    c.ref_tag = std::move(tag);
    c.lhs = lhs;
    c.rhs = rhs;
    c.ratio = (rhs != 0.0) ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
    c.absolute_gap = lhs - rhs;
    c.tolerance = tol;
    c.status = (lhs >= rhs - tol) ? CheckStatus::pass : CheckStatus::fail;
    return c;
}

RelationCheck absolute_check(std::string name, std::string tag, double value, double target,
                             double tol) {
    RelationCheck c;
    c.name = std::move(name);
    c.ref_tag = std::move(tag);
    c.lhs = value;
    c.rhs = target;
    c.ratio = (target != 0.0) ? value / target : std::numeric_limits<double>::quiet_NaN();
    c.absolute_gap = std::abs(value - target);
    c.tolerance = tol;
    c.status = (c.absolute_gap <= tol) ? CheckStatus::pass : CheckStatus::fail;
    return c;
}

ExactURResult exact_ur_position(const GridState& s, double tol, double eps_rel) {
    ExactURResult r;
    r.stats = momentum_decomposition_stats(s, eps_rel);
    const GridDistribution d = position_density(s);
    r.fisher = fisher_length(d, eps_rel);

    const double half = 0.5 * s.hbar;
    const double dp_nc = std::sqrt(std::max(0.0, r.stats.var_nc));
    r.exact = equality_check("deltaX * DeltaP_nc = hbar/2", "exact-position-momentum",
                             r.fisher.delta * dp_nc, half, tol);
    if (r.fisher.divergent) {
        r.exact.status = CheckStatus::divergent;
        r.exact.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    const double dx = std::sqrt(moments(d).variance);
    const double dp = std::sqrt(std::max(0.0, r.stats.var_obs));
    r.heisenberg = inequality_check("DeltaX * DeltaP >= hbar/2", "heisenberg", dx * dp, half,
                                    1e-9 * half);
    return r;
}

ExactURResult exact_ur_conjugate(const GridState& s, double tol, double eps_rel) {
    // Mirror relation evaluated by feeding the momentum representation back
    // through the position machinery; the double transform only reflects
    // coordinates, leaving every variance unchanged.
    ExactURResult r = exact_ur_position(momentum_representation(s), tol, eps_rel);
    r.exact.name = "DeltaX_nc * deltaP = hbar/2";
    r.exact.ref_tag = "exact-momentum-position";
    return r;
}

MixedURResult mixed_ur_check(const GridDensity& r, double identity_tol, double ineq_tol,
                             double eps_rel) {
    MixedURResult out;
    const Moments pm = density_momentum_moments(r);
    out.stats = momentum_decomposition_stats(r, pm, eps_rel);
    out.fisher = fisher_length(r.diagonal(), eps_rel);

    const MomentumDensityField mf = momentum_density_field(r, eps_rel);
    double pcl2 = 0.0, integral = 0.0;
    for (std::size_t k = 0; k < r.grid.n; ++k) {
        if (!mf.mask[k]) continue;
        const double re = mf.p_rho[k].real();
        pcl2 += re * re / mf.density[k];
        integral += std::norm(mf.p_rho[k]) / mf.density[k];
    }
    pcl2 *= r.grid.dx;
    integral *= r.grid.dx;

    const double lhs_identity =
        0.25 * r.hbar * r.hbar * out.fisher.fisher_info + pcl2;
    out.identity = equality_check("hbar^2/(4 deltaX^2) + <P_cl^2> = Int |<x|P rho|x>|^2 / p",
                                  "mixed-identity", lhs_identity, integral, identity_tol);
    const double second_p = pm.variance + pm.mean * pm.mean;
    out.bound = inequality_check("Int |<x|P rho|x>|^2 / p <= <P^2>", "mixed-bound", second_p,
                                 integral, ineq_tol * std::max(1.0, second_p));
    const double half = 0.5 * r.hbar;
    const double dp_nc = std::sqrt(std::max(0.0, out.stats.var_nc));
    out.exact_inequality =
        inequality_check("deltaX * DeltaP_nc >= hbar/2", "mixed-exact-inequality",
                         out.fisher.delta * dp_nc, half, ineq_tol * half);
    if (out.fisher.divergent) {
        out.identity.status = CheckStatus::divergent;
        out.exact_inequality.status = CheckStatus::divergent;
    }
    return out;
}

MatrixURResult matrix_ur_check(const GridState2D& s, double tol, double eps_rel) {
    MatrixURResult r;
    const GridDistribution2D d = position_density(s);
    double mean_x[2];
    moments(d, mean_x, r.cov_x);
    const FisherCovariance fc = fisher_covariance(d, eps_rel);
    r.fcov_x = fc.matrix;

    double mean_p[2];
    spectral_momentum_moments(s, mean_p, r.cov_p);

    double mean_cl[2];
    classical_momentum_cov(s, mean_cl, r.cov_pcl, eps_rel);
    r.cov_pnc = {r.cov_p.xx - r.cov_pcl.xx, r.cov_p.xy - r.cov_pcl.xy,
                 r.cov_p.yy - r.cov_pcl.yy};

    mat_mul(r.fcov_x, r.cov_pnc, r.product);
    mat_mul(r.cov_x, r.cov_p, r.heis_product);

    const double scale = 0.25 * s.hbar * s.hbar;
    r.max_entry_gap = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double target = (i == j) ? scale : 0.0;
            r.max_entry_gap =
                std::max(r.max_entry_gap, std::abs(r.product[i][j] - target) / scale);
        }
    r.symmetry_gap = std::abs(r.product[0][1] - r.product[1][0]) / scale;
    r.additivity_residual =
        std::max(std::abs(mean_p[0] - mean_cl[0]), std::abs(mean_p[1] - mean_cl[1]));

    r.checks.push_back(equality_check("[FCov(X) Cov(P_nc)]_11 = (hbar/2)^2",
                                      "matrix-exact-11", r.product[0][0], scale, tol));
    r.checks.push_back(equality_check("[FCov(X) Cov(P_nc)]_22 = (hbar/2)^2",
                                      "matrix-exact-22", r.product[1][1], scale, tol));
    r.checks.push_back(absolute_check("[FCov(X) Cov(P_nc)]_12 = 0", "matrix-exact-12",
                                      r.product[0][1] / scale, 0.0, tol));
    r.checks.push_back(absolute_check("FCov(X) Cov(P_nc) symmetric", "matrix-symmetry",
                                      r.symmetry_gap, 0.0, tol));
    return r;
}

CorrelationRelationResult correlation_relation_check(const GridState2D& s, double tol,
                                                     double eps_rel) {
    CorrelationRelationResult out;
    const GridDistribution2D d = position_density(s);
    const FisherCovariance fc = fisher_covariance(d, eps_rel);
    if (!(fc.matrix.xx > 0.0) || !(fc.matrix.yy > 0.0))
        throw std::domain_error("correlation_relation_check: degenerate Fisher covariance");
    out.r_fisher_x = fc.matrix.xy / std::sqrt(fc.matrix.xx * fc.matrix.yy);

    double mean_p[2];
    Sym2 cov_p;
    spectral_momentum_moments(s, mean_p, cov_p);
    double mean_cl[2];
    Sym2 cov_pcl;
    classical_momentum_cov(s, mean_cl, cov_pcl, eps_rel);
    const Sym2 cov_pnc{cov_p.xx - cov_pcl.xx, cov_p.xy - cov_pcl.xy, cov_p.yy - cov_pcl.yy};
    if (!(cov_pnc.xx > 0.0) || !(cov_pnc.yy > 0.0))
        throw std::domain_error("correlation_relation_check: degenerate P_nc marginal");
    out.r_pearson_pnc = cov_pnc.xy / std::sqrt(cov_pnc.xx * cov_pnc.yy);

    out.sum_check = absolute_check("r_P(P_nc) + r_F(X) = 0", "correlation-sum",
                                   out.r_pearson_pnc + out.r_fisher_x, 0.0, tol);
    return out;
}

namespace {

PhaseNumberResult phase_number_impl(const GridDistribution& pd, const DecompStats& stats,
                                    PhaseNumberMode mode, double hbar, double tol,
                                    bool equality, double eps_rel) {
    PhaseNumberResult out;
    out.stats = stats;
    out.fisher = fisher_length(pd, eps_rel);

    const double unit = (mode == PhaseNumberMode::photon) ? 1.0 : hbar;
    const double rhs = 0.5 * unit;
    const double spread_nc = unit * std::sqrt(std::max(0.0, stats.var_nc));
    const double lhs = out.fisher.delta * spread_nc;

    const char* name = (mode == PhaseNumberMode::photon)
                           ? "deltaPhi * DeltaN_nc = 1/2"
                           : "deltaPhi * DeltaJ_nc = hbar/2";
    const char* tag = (mode == PhaseNumberMode::photon) ? "phase-number" : "phase-angular-momentum";
    out.exact = equality ? equality_check(name, tag, lhs, rhs, tol)
                         : inequality_check(name, tag, lhs, rhs, tol);

    // Flat phase density: Fisher information exactly zero while the
    // nonclassical spread vanishes — a 0 * infinity product.
    if (out.fisher.fisher_info <= kTiny && stats.var_nc <= kTiny) {
        out.exact.status = CheckStatus::indeterminate;
        out.exact.ratio = std::numeric_limits<double>::quiet_NaN();
    } else if (out.fisher.divergent) {
        out.exact.status = CheckStatus::divergent;
    }
    return out;
}

}  // namespace

PhaseNumberResult exact_ur_phase_number(const NumberState& ns, PhaseNumberMode mode,
                                        std::size_t n_phi, double tol, double eps_rel) {
    return phase_number_impl(phase_distribution(ns, n_phi),
                             number_decomposition_stats(ns, n_phi, eps_rel), mode, ns.hbar,
                             tol, /*equality=*/true, eps_rel);
}

PhaseNumberResult exact_ur_phase_number_mixed(const std::vector<double>& weights,
                                              const std::vector<NumberState>& states,
                                              PhaseNumberMode mode, std::size_t n_phi,
                                              double tol, double eps_rel) {
    if (states.empty()) throw std::invalid_argument("exact_ur_phase_number_mixed: no states");
    // Mixture phase density from the number-basis density matrix.
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    GridDistribution pd;
    {
        std::vector<double> acc;
        Grid1D g;
        for (std::size_t s = 0; s < states.size(); ++s) {
            GridDistribution one = phase_distribution(states[s], n_phi);
            if (acc.empty()) {
                acc.assign(one.p.size(), 0.0);
                g = one.grid;
            }
            for (std::size_t j = 0; j < acc.size(); ++j)
                acc[j] += weights[s] / wsum * one.p[j];
        }
        pd = GridDistribution(g, std::move(acc), /*periodic=*/true);
    }
    return phase_number_impl(pd, number_decomposition_stats(weights, states, n_phi, eps_rel),
                             mode, states[0].hbar, tol, /*equality=*/false, eps_rel);
}

EnergyReport energy_decomposition(const GridState& s, const std::function<double(double)>& V,
                                  double mass, double tol, double eps_rel) {
    if (!(mass > 0.0)) throw std::invalid_argument("energy_decomposition: mass must be positive");
    EnergyReport rep;
    const GridDistribution d = position_density(s);
    double vbar = 0.0;
    for (std::size_t k = 0; k < d.grid.n; ++k) vbar += d.p[k] * V(d.grid.x(k));
    vbar *= d.grid.dx;
    rep.potential = vbar;

    const Moments pm = spectral_momentum_moments(s);
    rep.total = (pm.variance + pm.mean * pm.mean) / (2.0 * mass) + vbar;

    const FisherResult fr = fisher_length(d, eps_rel);
    rep.divergent = fr.divergent;
    rep.nonclassical_kinetic = s.hbar * s.hbar * fr.fisher_info / (8.0 * mass);

    const ClassicalField pcl = classical_momentum_field(s, eps_rel);
    double pcl2 = 0.0;
    for (std::size_t k = 0; k < d.grid.n; ++k)
        if (pcl.mask[k]) pcl2 += d.p[k] * pcl.values[k] * pcl.values[k];
    pcl2 *= d.grid.dx;
    rep.classical_kinetic = pcl2 / (2.0 * mass);

    rep.decomposed_total = rep.nonclassical_kinetic + rep.classical_kinetic + rep.potential;
    rep.consistency = equality_check("E = hbar^2/(8m deltaX^2) + <P_cl^2>/2m + <V>",
                                     "energy-decomposition", rep.decomposed_total, rep.total,
                                     tol);
    if (rep.divergent) rep.consistency.status = CheckStatus::divergent;
    return rep;
}

EntropicBoundResult entropic_bound_estimates(double hbar, double mass, double omega, double g) {
    EntropicBoundResult out;

    // Harmonic oscillator: entropy at fixed <x^2> is maximized by a Gaussian,
    // giving the bound hbar^2/(8 m s2) + m omega^2 s2 / 2; minimize over s2.
    const double s2_star = 0.5 * hbar / (mass * omega);
    out.harmonic_minimum = golden_minimize(
        [&](double s2) {
            return hbar * hbar / (8.0 * mass * s2) + 0.5 * mass * omega * omega * s2;
        },
        1e-3 * s2_star, 1e3 * s2_star);
    out.harmonic = equality_check("entropic harmonic bound = hbar*omega/2",
                                  "entropic-harmonic", out.harmonic_minimum,
                                  0.5 * hbar * omega, 1e-6);

    // Bouncing particle: entropy at fixed <x> = lambda is maximized by the
    // exponential density, giving pi hbar^2/(4 m e lambda^2) + m g lambda.
    const double lam_star = std::cbrt(std::numbers::pi * hbar * hbar /
                                      (2.0 * std::numbers::e * mass * g));
    const double e_min = golden_minimize(
        [&](double lam) {
            return std::numbers::pi * hbar * hbar /
                       (4.0 * mass * std::numbers::e * lam * lam) +
                   mass * g * lam;
        },
        1e-3 * lam_star, 1e3 * lam_star);
    const double unit = std::cbrt(mass * g * g * hbar * hbar);
    out.bounce_coefficient = e_min / unit;
    out.bounce_bound = absolute_check("bouncing-ball bound coefficient", "entropic-bounce",
                                      out.bounce_coefficient, 1.249, 5e-4);

    out.airy_zero = airy_first_zero_magnitude();
    out.exact_coefficient = std::cbrt(0.5) * out.airy_zero;
    out.bounce_exact = absolute_check("bouncing-ball exact coefficient", "bounce-exact",
                                      out.exact_coefficient, 1.856, 5e-4);
    return out;
}

}  // namespace eur
