#include "eur/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eur/derivatives.hpp"
#include "eur/fft.hpp"

namespace eur {

namespace {

constexpr double kDivergenceDrift = 0.10;

FisherResult result_from_info(double f, double span, double eps, double drift,
                              double mismatch) {
    FisherResult r;
    r.fisher_info = f;
    r.epsilon_used = eps;
    r.sweep_drift = drift;
    r.order_mismatch = mismatch;
    // Any genuine distribution on this grid has f * span^2 >= O(1); far below
    // that is a numerically flat density whose formal delta is infinite.
    if (f * span * span > 1e-16) {
        r.delta = 1.0 / std::sqrt(f);
    } else {
        r.fisher_info = 0.0;
        r.delta = std::numeric_limits<double>::infinity();
        r.divergent = true;
    }
    if (drift > kDivergenceDrift || mismatch > kDivergenceDrift) r.divergent = true;
    return r;
}

/// The Fisher integrand p'^2/p has the finite limit 2 p'' at an interior
/// zero of p. A sample landing exactly on such a node is masked off support,
/// which would leave an O(dx) quadrature hole; fill it from the even local
/// expansion p = c u^2 + f u^4 fitted to the four surrounding cells:
/// cell integral = 4 c dx + f dx^3.
double node_hole_fill(const std::vector<double>& p, const std::vector<char>& mask, double dx,
                      bool periodic) {
    const std::size_t n = p.size();
    const auto at = [&](std::ptrdiff_t i) -> double {
        if (periodic) return p[static_cast<std::size_t>((i % static_cast<std::ptrdiff_t>(n) +
                                                         static_cast<std::ptrdiff_t>(n)) %
                                                        static_cast<std::ptrdiff_t>(n))];
        return (i >= 0 && i < static_cast<std::ptrdiff_t>(n)) ? p[static_cast<std::size_t>(i)]
                                                              : 0.0;
    };
    const auto in_support = [&](std::ptrdiff_t i) -> bool {
        if (periodic)
            return mask[static_cast<std::size_t>(
                       (i % static_cast<std::ptrdiff_t>(n) + static_cast<std::ptrdiff_t>(n)) %
                       static_cast<std::ptrdiff_t>(n))] != 0;
        return i >= 0 && i < static_cast<std::ptrdiff_t>(n) &&
               mask[static_cast<std::size_t>(i)] != 0;
    };
    double fill = 0.0;
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) {
        if (mask[static_cast<std::size_t>(k)]) continue;
        if (!(in_support(k - 1) && in_support(k + 1))) continue;  // not an interior node
        const double s1 = at(k - 1) + at(k + 1);
        if (in_support(k - 2) && in_support(k + 2)) {
            const double s2 = at(k - 2) + at(k + 2);
            const double c = (16.0 * s1 - s2) / (24.0 * dx * dx);
            const double f4 = (s2 - 4.0 * s1) / (24.0 * dx * dx * dx * dx);
            fill += std::max(0.0, 4.0 * c * dx + f4 * dx * dx * dx);
        } else {
            fill += std::max(0.0, 2.0 * s1 / dx);
        }
    }
    return fill;
}

double line_fisher_info(const std::vector<double>& p, double dx, double eps_rel, int order) {
    const LogDerivative ld = log_density_derivative(p, dx, eps_rel, order);
    double f = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (ld.mask[k]) f += p[k] * ld.g[k] * ld.g[k];
    return f * dx + node_hole_fill(p, ld.mask, dx, /*periodic=*/false);
}

/// Spectral d/dphi on the periodic grid; exact for trigonometric
/// polynomials of degree < n/2, which covers every number-state phase
/// distribution by the n_phi precondition.
std::vector<double> periodic_spectral_derivative(const std::vector<double>& p, double period) {
    const std::size_t n = p.size();
    std::vector<cdouble> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = p[k];
    const Fft& plan = cached_fft(n);
    plan.forward(f);
    const double w0 = 2.0 * std::numbers::pi / period;
    for (std::size_t j = 0; j < n; ++j) {
        double freq = (j <= n / 2) ? static_cast<double>(j) : static_cast<double>(j) - n;
        if (2 * j == n) freq = 0.0;  // Nyquist mode has no well-defined derivative sign
        f[j] *= cdouble{0.0, freq * w0};
    }
    plan.inverse(f);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = f[k].real() / static_cast<double>(n);
    return out;
}

double periodic_fisher_info(const GridDistribution& d, double eps_rel) {
    const double period = d.grid.dx * static_cast<double>(d.grid.n);
    const std::vector<double> dp = periodic_spectral_derivative(d.p, period);
    double floor = 0.0;
    const auto mask = support_mask(d.p, eps_rel, &floor);
    double f = 0.0;
    for (std::size_t k = 0; k < d.grid.n; ++k)
        if (mask[k]) f += dp[k] * dp[k] / d.p[k];
    return f * d.grid.dx + node_hole_fill(d.p, mask, d.grid.dx, /*periodic=*/true);
}

}  // namespace

FisherResult fisher_length(const GridDistribution& d, double eps_rel) {
    if (d.periodic) {
        const double f = periodic_fisher_info(d, eps_rel);
        double drift = 0.0;
        double eps = eps_rel;
        for (int h = 1; h <= 4; ++h) {
            eps *= 0.5;
            const double fh = periodic_fisher_info(d, eps);
            if (f > 0.0) drift = std::max(drift, std::abs(fh - f) / f);
        }
        return result_from_info(f, d.grid.dx * static_cast<double>(d.grid.n), eps_rel, drift,
                                0.0);
    }
    const double f = line_fisher_info(d.p, d.grid.dx, eps_rel, 4);
    double drift = 0.0;
    double eps = eps_rel;
    for (int h = 1; h <= 4; ++h) {
        eps *= 0.5;
        const double fh = line_fisher_info(d.p, d.grid.dx, eps, 4);
        if (f > 0.0) drift = std::max(drift, std::abs(fh - f) / f);
    }
    const double f2 = line_fisher_info(d.p, d.grid.dx, eps_rel, 2);
    const double mismatch = (f > 0.0) ? std::abs(f2 - f) / f : 0.0;
    return result_from_info(f, d.grid.dx * static_cast<double>(d.grid.n), eps_rel, drift,
                            mismatch);
}

namespace {

double mixed_fisher_info(const GridDensity& r, double eps_rel, int order) {
    const std::size_t n = r.grid.n;
    std::vector<double> diag(n);
    for (std::size_t k = 0; k < n; ++k) diag[k] = std::max(0.0, r.at(k, k).real());
    double floor = 0.0;
    const auto mask = support_mask(diag, eps_rel, &floor);
    std::vector<cdouble> col(n);
    double f = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!mask[k]) continue;
        const std::size_t lo = (k >= 2) ? k - 2 : 0;
        const std::size_t hi = std::min(n - 1, k + 2);
        for (std::size_t i = lo; i <= hi; ++i) col[i] = r.at(i, k);
        const cdouble d = (order >= 4)
                              ? stencil_derivative(col.data(), n, k, r.grid.dx)
                              : (k >= 1 && k + 1 < n
                                     ? (col[k + 1] - col[k - 1]) / (2.0 * r.grid.dx)
                                     : stencil_derivative(col.data(), n, k, r.grid.dx));
        // <x|[P,rho]|x> = 2i Im <x|P rho|x>, and <x|P rho|x> = -i hbar d.
        const double im = (cdouble{0.0, -r.hbar} * d).imag();
        f += im * im / diag[k];
    }
    // same interior-node limit as the distribution path (see node_hole_fill)
    return 4.0 * f * r.grid.dx / (r.hbar * r.hbar) +
           node_hole_fill(diag, mask, r.grid.dx, /*periodic=*/false);
}

}  // namespace

FisherResult fisher_length_mixed(const GridDensity& r, double eps_rel) {
    const double f = mixed_fisher_info(r, eps_rel, 4);
    double drift = 0.0;
    double eps = eps_rel;
    for (int h = 1; h <= 4; ++h) {
        eps *= 0.5;
        const double fh = mixed_fisher_info(r, eps, 4);
        if (f > 0.0) drift = std::max(drift, std::abs(fh - f) / f);
    }
    const double f2 = mixed_fisher_info(r, eps_rel, 2);
    const double mismatch = (f > 0.0) ? std::abs(f2 - f) / f : 0.0;
    return result_from_info(f, r.grid.dx * static_cast<double>(r.grid.n), eps_rel, drift,
                            mismatch);
}

FisherCovariance fisher_covariance(const GridDistribution2D& d, double eps_rel) {
    const std::size_t nx = d.grid.gx.n, ny = d.grid.gy.n;
    double pmax = 0.0;
    for (double v : d.p) pmax = std::max(pmax, v);
    const double floor = eps_rel * pmax;

    // Per-line hybrid log-derivatives against the global floor.
    std::vector<double> g1(nx * ny, 0.0), g2(nx * ny, 0.0);
    std::vector<char> m1(nx * ny, 0), m2(nx * ny, 0);
    std::vector<double> line(std::max(nx, ny));
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) line[ix] = d.p[ix * ny + iy];
        std::vector<double> sub(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(nx));
        double lmax = 0.0;
        for (double v : sub) lmax = std::max(lmax, v);
        if (lmax < floor) continue;
        const LogDerivative ld = log_density_derivative(sub, d.grid.gx.dx, floor / lmax, 4);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            g1[ix * ny + iy] = ld.g[ix];
            m1[ix * ny + iy] = ld.mask[ix];
        }
    }
    for (std::size_t ix = 0; ix < nx; ++ix) {
        std::vector<double> sub(ny);
        for (std::size_t iy = 0; iy < ny; ++iy) sub[iy] = d.p[ix * ny + iy];
        double lmax = 0.0;
        for (double v : sub) lmax = std::max(lmax, v);
        if (lmax < floor) continue;
        const LogDerivative ld = log_density_derivative(sub, d.grid.gy.dx, floor / lmax, 4);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            g2[ix * ny + iy] = ld.g[iy];
            m2[ix * ny + iy] = ld.mask[iy];
        }
    }

    Sym2 info{0.0, 0.0, 0.0};
    const double da = d.cell_area();
    for (std::size_t k = 0; k < nx * ny; ++k) {
        if (!(m1[k] && m2[k])) continue;
        info.xx += d.p[k] * g1[k] * g1[k];
        info.xy += d.p[k] * g1[k] * g2[k];
        info.yy += d.p[k] * g2[k] * g2[k];
    }
    info.xx *= da;
    info.xy *= da;
    info.yy *= da;

    const double det = info.xx * info.yy - info.xy * info.xy;
    const double tr = info.xx + info.yy;
    if (!(det > 0.0))
        throw std::domain_error("fisher_covariance: singular information matrix");
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    const double lmax = 0.5 * tr + disc, lmin = 0.5 * tr - disc;

    FisherCovariance out;
    out.information = info;
    out.matrix = {info.yy / det, -info.xy / det, info.xx / det};
    out.inverse_conditioning = (lmin > 0.0) ? lmax / lmin : std::numeric_limits<double>::infinity();
    return out;
}

double collision_length(const std::vector<double>& probs) {
    double s = 0.0, s2 = 0.0;
    for (double p : probs) {
        if (p < -1e-12) throw std::invalid_argument("collision_length: negative probability");
        s += p;
        s2 += p * p;
    }
    if (std::abs(s - 1.0) > 1e-9)
        throw std::invalid_argument("collision_length: probabilities not normalized");
    return 1.0 / s2;
}

std::pair<double, double> entropy_and_ensemble_length(const GridDistribution& d) {
    double s = 0.0;
    for (double v : d.p)
        if (v > 0.0) s -= v * std::log(v);
    s *= d.grid.dx;
    return {s, std::exp(s)};
}

CorrelationPair correlations(const GridDistribution2D& d, double eps_rel) {
    double mean[2];
    Sym2 cov;
    moments(d, mean, cov);
    if (!(cov.xx > 0.0) || !(cov.yy > 0.0))
        throw std::domain_error("correlations: degenerate marginal variance");
    const FisherCovariance fc = fisher_covariance(d, eps_rel);
    if (!(fc.matrix.xx > 0.0) || !(fc.matrix.yy > 0.0))
        throw std::domain_error("correlations: degenerate Fisher covariance");
    CorrelationPair out;
    out.r_pearson = cov.xy / std::sqrt(cov.xx * cov.yy);
    out.r_fisher = fc.matrix.xy / std::sqrt(fc.matrix.xx * fc.matrix.yy);
    return out;
}

DiffusionReport diffusion_entropy_rate_check(const GridDistribution& d, double gamma,
                                             std::size_t steps, double dt,
                                             const DiffusionOptions& opt) {
    if (!(gamma > 0.0)) throw std::invalid_argument("diffusion: gamma must be positive");
    const double dx = d.grid.dx;
    if (dt > dx * dx / (2.0 * gamma))
        throw std::invalid_argument("diffusion: explicit step violates dt <= dx^2/(2 gamma)");

    const std::size_t n = d.grid.n;
    std::vector<double> p = d.p, next(n);
    const bool per = opt.periodic || d.periodic;

    const auto entropy = [&](const std::vector<double>& q) {
        double s = 0.0;
        for (double v : q)
            if (v > 0.0) s -= v * std::log(v);
        return s * dx;
    };
    const auto step_once = [&](const std::vector<double>& q, std::vector<double>& out) {
        for (std::size_t k = 0; k < n; ++k) {
            const double qm = (k > 0) ? q[k - 1] : (per ? q[n - 1] : 0.0);
            const double qp = (k + 1 < n) ? q[k + 1] : (per ? q[0] : 0.0);
            out[k] = q[k] + dt * (gamma * (qp - 2.0 * q[k] + qm) / (dx * dx) +
                                  opt.drift * (qp - qm) / (2.0 * dx));
            if (out[k] < -1e-12)
                throw std::runtime_error("diffusion: instability detected (negative density)");
            if (out[k] < 0.0) out[k] = 0.0;
        }
    };

    DiffusionReport rep;
    double s_prev = entropy(p);
    std::vector<double> history_s{s_prev};
    for (std::size_t step = 1; step <= steps; ++step) {
        step_once(p, next);
        p.swap(next);
        history_s.push_back(entropy(p));
        const bool at_checkpoint =
            (step % opt.checkpoint_every == 0) && step + 1 <= steps && step >= 2;
        if (at_checkpoint) {
            // dS/dt at step s needs S at s-1 and s+1; take one extra step ahead.
            std::vector<double> ahead(n);
            step_once(p, ahead);
            const double s_after = entropy(ahead);
            DiffusionCheckpoint cp;
            cp.t = static_cast<double>(step) * dt;
            cp.measured_rate = (s_after - history_s[step - 1]) / (2.0 * dt);
            GridDistribution snapshot(d.grid, p, per);
            const FisherResult fr = fisher_length(snapshot, opt.eps_rel);
            cp.fisher_divergent = fr.divergent;
            cp.predicted_rate = (fr.fisher_info > 0.0) ? gamma * fr.fisher_info : 0.0;
            if (!cp.fisher_divergent && cp.predicted_rate != 0.0) {
                cp.rel_mismatch =
                    std::abs(cp.measured_rate - cp.predicted_rate) / cp.predicted_rate;
                rep.max_rel_mismatch = std::max(rep.max_rel_mismatch, cp.rel_mismatch);
            } else {
                cp.rel_mismatch = std::abs(cp.measured_rate);
            }
            rep.checkpoints.push_back(cp);
        }
    }
    return rep;
}

}  // namespace eur
