#include "eur/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "eur/derivatives.hpp"

namespace eur {

namespace {

double wrap_pi(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a + std::numbers::pi, two_pi);
    if (a < 0.0) a += two_pi;
    return a - std::numbers::pi;
}

DecompStats assemble_stats(double mean_obs, double second_obs, double mean_cl,
                           double second_cl) {
    DecompStats st;
    st.mean_obs = mean_obs;
    st.mean_cl = mean_cl;
    st.var_obs = second_obs - mean_obs * mean_obs;
    st.var_cl = second_cl - mean_cl * mean_cl;
    st.min_error = second_obs - second_cl;
    const double gap = mean_obs - mean_cl;
    st.var_nc = st.min_error - gap * gap;
    return st;
}

}  // namespace

ClassicalField classical_momentum_field(const GridState& s, double eps_rel) {
    const std::size_t n = s.grid.n;
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = std::norm(s.amplitudes[k]);
    ClassicalField f;
    f.grid = s.grid;
    f.mask = support_mask(p, eps_rel, &f.floor);
    f.values.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (!f.mask[k]) continue;
        const cdouble d = stencil_derivative(s.amplitudes.data(), n, k, s.grid.dx);
        f.values[k] = s.hbar * (d / s.amplitudes[k]).imag();
    }
    return f;
}

MomentumDensityField momentum_density_field(const GridState& s, double eps_rel) {
    const std::size_t n = s.grid.n;
    MomentumDensityField f;
    f.grid = s.grid;
    f.p_rho.assign(n, cdouble{0.0, 0.0});
    f.density.resize(n);
    for (std::size_t k = 0; k < n; ++k) f.density[k] = std::norm(s.amplitudes[k]);
    f.mask = support_mask(f.density, eps_rel, &f.floor);
    const cdouble minus_i_hbar{0.0, -s.hbar};
    for (std::size_t k = 0; k < n; ++k) {
        const cdouble d = stencil_derivative(s.amplitudes.data(), n, k, s.grid.dx);
        f.p_rho[k] = minus_i_hbar * d * std::conj(s.amplitudes[k]);
    }
    return f;
}

MomentumDensityField momentum_density_field(const GridDensity& r, double eps_rel) {
    const std::size_t n = r.grid.n;
    MomentumDensityField f;
    f.grid = r.grid;
    f.p_rho.assign(n, cdouble{0.0, 0.0});
    f.density.resize(n);
    for (std::size_t k = 0; k < n; ++k) f.density[k] = std::max(0.0, r.at(k, k).real());
    f.mask = support_mask(f.density, eps_rel, &f.floor);
    const cdouble minus_i_hbar{0.0, -r.hbar};
    // derivative along the first index of rho(x, x') at x' = x
    std::vector<cdouble> col(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = (k >= 2) ? k - 2 : 0;
        const std::size_t hi = std::min(n - 1, k + 2);
        for (std::size_t i = lo; i <= hi; ++i) col[i] = r.at(i, k);
        f.p_rho[k] = minus_i_hbar * stencil_derivative(col.data(), n, k, r.grid.dx);
    }
    return f;
}

ClassicalField classical_momentum_field_mixed(const GridDensity& r, double eps_rel) {
    MomentumDensityField mf = momentum_density_field(r, eps_rel);
    ClassicalField f;
    f.grid = mf.grid;
    f.mask = std::move(mf.mask);
    f.floor = mf.floor;
    f.values.assign(r.grid.n, 0.0);
    for (std::size_t k = 0; k < r.grid.n; ++k)
        if (f.mask[k]) f.values[k] = mf.p_rho[k].real() / mf.density[k];
    return f;
}

ClassicalField classical_position_field(const GridState& s, double eps_rel) {
    GridState tilde = momentum_representation(s);
    ClassicalField f = classical_momentum_field(tilde, eps_rel);
    // conjugate convention: X_cl(p) = -hbar d(arg psi~)/dp
    for (double& v : f.values) v = -v;
    return f;
}

namespace {

DecompStats grid_stats(const GridDistribution& pos_density, const ClassicalField& pcl,
                       const Moments& spectral) {
    double mean_cl = 0.0, second_cl = 0.0;
    for (std::size_t k = 0; k < pos_density.grid.n; ++k) {
        if (!pcl.mask[k]) continue;
        const double w = pos_density.p[k];
        mean_cl += w * pcl.values[k];
        second_cl += w * pcl.values[k] * pcl.values[k];
    }
    mean_cl *= pos_density.grid.dx;
    second_cl *= pos_density.grid.dx;
    const double second_obs = spectral.variance + spectral.mean * spectral.mean;
    return assemble_stats(spectral.mean, second_obs, mean_cl, second_cl);
}

}  // namespace

DecompStats momentum_decomposition_stats(const GridState& s, double eps_rel) {
    return grid_stats(position_density(s), classical_momentum_field(s, eps_rel),
                      spectral_momentum_moments(s));
}

DecompStats momentum_decomposition_stats(const GridDensity& r, double eps_rel) {
    return momentum_decomposition_stats(r, density_momentum_moments(r), eps_rel);
}

DecompStats momentum_decomposition_stats(const GridDensity& r, const Moments& spectral,
                                         double eps_rel) {
    return grid_stats(r.diagonal(), classical_momentum_field_mixed(r, eps_rel), spectral);
}

double estimator_error(const GridState& s, const ClassicalField& estimate, double eps_rel) {
    if (!(estimate.grid == s.grid))
        throw std::invalid_argument("estimator_error: estimate lives on a different grid");
    const GridDistribution d = position_density(s);
    const ClassicalField pcl = classical_momentum_field(s, eps_rel);
    double second_est = 0.0, cross = 0.0;
    for (std::size_t k = 0; k < d.grid.n; ++k) {
        if (!pcl.mask[k]) continue;
        if (!estimate.mask[k])
            throw std::invalid_argument("estimator_error: estimate undefined on state support");
        const double w = d.p[k];
        second_est += w * estimate.values[k] * estimate.values[k];
        cross += w * estimate.values[k] * pcl.values[k];
    }
    second_est *= d.grid.dx;
    cross *= d.grid.dx;
    const Moments sm = spectral_momentum_moments(s);
    const double second_obs = sm.variance + sm.mean * sm.mean;
    return second_obs + second_est - 2.0 * cross;
}

VectorField2D vector_classical_momentum(const GridState2D& s, double eps_rel) {
    const std::size_t nx = s.grid.gx.n, ny = s.grid.gy.n;
    const std::size_t total = nx * ny;
    std::vector<double> p(total);
    for (std::size_t k = 0; k < total; ++k) p[k] = std::norm(s.amplitudes[k]);
    VectorField2D f;
    f.grid = s.grid;
    f.mask = support_mask(p, eps_rel, &f.floor);
    f.v1.assign(total, 0.0);
    f.v2.assign(total, 0.0);

    // Globally unwrap arg(psi) by BFS from the density peak; principal-value
    // steps between neighbors. Cells reached with inconsistent values carry a
    // loop residue (phase vortex near a node) and are masked out.
    std::vector<double> theta(total, 0.0);
    std::vector<char> assigned(total, 0), valid = f.mask;
    std::size_t seed = 0;
    for (std::size_t k = 1; k < total; ++k)
        if (p[k] > p[seed]) seed = k;
    std::vector<double> pv(total);
    for (std::size_t k = 0; k < total; ++k) pv[k] = std::arg(s.amplitudes[k]);

    std::queue<std::size_t> q;
    theta[seed] = pv[seed];
    assigned[seed] = 1;
    q.push(seed);
    const auto neighbors = [&](std::size_t k, std::size_t out[4]) {
        const std::size_t ix = k / ny, iy = k % ny;
        std::size_t cnt = 0;
        if (ix > 0) out[cnt++] = k - ny;
        if (ix + 1 < nx) out[cnt++] = k + ny;
        if (iy > 0) out[cnt++] = k - 1;
        if (iy + 1 < ny) out[cnt++] = k + 1;
        return cnt;
    };
    while (!q.empty()) {
        const std::size_t k = q.front();
        q.pop();
        std::size_t nb[4];
        const std::size_t cnt = neighbors(k, nb);
        for (std::size_t i = 0; i < cnt; ++i) {
            const std::size_t m = nb[i];
            if (!f.mask[m]) continue;
            const double cand = theta[k] + wrap_pi(pv[m] - pv[k]);
            if (!assigned[m]) {
                theta[m] = cand;
                assigned[m] = 1;
                q.push(m);
            } else if (std::abs(cand - theta[m]) > 1e-6) {
                valid[k] = valid[m] = 0;
            }
        }
    }
    for (std::size_t k = 0; k < total; ++k)
        if (!assigned[k]) valid[k] = 0;

    // Gradient of the unwrapped phase, axis by axis; a cell keeps its value
    // only if the full symmetric window along that axis is valid.
    std::vector<double> line(std::max(nx, ny));
    const auto window_ok = [&](std::size_t k, std::ptrdiff_t stride, std::size_t idx,
                               std::size_t len) {
        const std::size_t r = (idx >= 2 && idx + 2 < len) ? 2 : 1;
        for (std::size_t o = 1; o <= r; ++o) {
            if (idx < o || idx + o >= len) return false;
            if (!valid[k - static_cast<std::size_t>(stride) * o] ||
                !valid[k + static_cast<std::size_t>(stride) * o])
                return false;
        }
        return true;
    };
    std::vector<char> out_mask(total, 0);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t k = ix * ny + iy;
            if (!valid[k]) continue;
            const bool ok1 = window_ok(k, static_cast<std::ptrdiff_t>(ny), ix, nx);
            const bool ok2 = window_ok(k, 1, iy, ny);
            if (!(ok1 && ok2)) continue;
            out_mask[k] = 1;
        }
    }
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) line[ix] = theta[ix * ny + iy];
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const std::size_t k = ix * ny + iy;
            if (out_mask[k])
                f.v1[k] = s.hbar * stencil_derivative(line.data(), nx, ix, s.grid.gx.dx);
        }
    }
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) line[iy] = theta[ix * ny + iy];
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t k = ix * ny + iy;
            if (out_mask[k])
                f.v2[k] = s.hbar * stencil_derivative(line.data(), ny, iy, s.grid.gy.dx);
        }
    }
    f.mask = std::move(out_mask);
    return f;
}

void classical_momentum_cov(const GridState2D& s, double mean[2], Sym2& cov,
                            double eps_rel) {
    const std::size_t nx = s.grid.gx.n, ny = s.grid.gy.n;
    const std::size_t total = nx * ny;
    const double da = s.grid.gx.dx * s.grid.gy.dx;

    std::vector<double> p(total);
    for (std::size_t k = 0; k < total; ++k) p[k] = std::norm(s.amplitudes[k]);
    double floor = 0.0;
    const auto mask = support_mask(p, eps_rel, &floor);

    // numerators hbar * Im(psi* d_j psi) = p * P_cl,j
    std::vector<double> n1(total, 0.0), n2(total, 0.0);
    std::vector<cdouble> line(std::max(nx, ny));
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) line[ix] = s.amplitudes[ix * ny + iy];
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const cdouble d = stencil_derivative(line.data(), nx, ix, s.grid.gx.dx);
            n1[ix * ny + iy] = s.hbar * (std::conj(line[ix]) * d).imag();
        }
    }
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iy = 0; iy < ny; ++iy) line[iy] = s.amplitudes[ix * ny + iy];
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const cdouble d = stencil_derivative(line.data(), ny, iy, s.grid.gy.dx);
            n2[ix * ny + iy] = s.hbar * (std::conj(line[iy]) * d).imag();
        }
    }

    double m1 = 0.0, m2 = 0.0, s11 = 0.0, s22 = 0.0, s12 = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
        m1 += n1[k];
        m2 += n2[k];
        if (!mask[k]) continue;
        s11 += n1[k] * n1[k] / p[k];
        s22 += n2[k] * n2[k] / p[k];
        s12 += n1[k] * n2[k] / p[k];
    }
    m1 *= da; m2 *= da; s11 *= da; s22 *= da; s12 *= da;
    mean[0] = m1;
    mean[1] = m2;
    cov = {s11 - m1 * m1, s12 - m1 * m2, s22 - m2 * m2};
}

// ---- number / phase ---------------------------------------------------------

namespace {

struct PhaseFields {
    Grid1D grid;
    std::vector<double> density;   // p(phi)
    std::vector<double> ncl_num;   // Re <phi|N rho|phi> / (2 pi)
};

/// Evaluate p(phi) and the numerator of N_cl for a number-basis density
/// rho_{nm}; both are trigonometric polynomials, evaluated exactly.
PhaseFields phase_fields(const std::vector<double>& weights,
                         const std::vector<NumberState>& states, std::size_t n_phi) {
    if (weights.size() != states.size() || states.empty())
        throw std::invalid_argument("phase_fields: weight/state mismatch");
    int nmin = states[0].n_min, nmax = states[0].n_max;
    for (const auto& s : states) {
        nmin = std::min(nmin, s.n_min);
        nmax = std::max(nmax, s.n_max);
    }
    const std::size_t needed = 2 * static_cast<std::size_t>(nmax - nmin) + 2;
    if (n_phi < needed)
        throw std::invalid_argument("phase_fields: n_phi too small, aliasing");
    double wsum = 0.0;
    for (double w : weights) wsum += w;

    const double two_pi = 2.0 * std::numbers::pi;
    PhaseFields out;
    out.grid = Grid1D::over(0.0, two_pi, n_phi);
    out.density.assign(n_phi, 0.0);
    out.ncl_num.assign(n_phi, 0.0);
    for (std::size_t j = 0; j < n_phi; ++j) {
        const double phi = out.grid.x(j);
        for (std::size_t s = 0; s < states.size(); ++s) {
            cdouble b{0.0, 0.0}, c{0.0, 0.0};
            for (int k = 0; k < states[s].count(); ++k) {
                const int nn = states[s].n_min + k;
                const double ang = -static_cast<double>(nn) * phi;
                const cdouble e{std::cos(ang), std::sin(ang)};
                b += states[s].c[k] * e;
                c += static_cast<double>(nn) * states[s].c[k] * e;
            }
            const double w = weights[s] / wsum;
            out.density[j] += w * std::norm(b) / two_pi;
            out.ncl_num[j] += w * (c * std::conj(b)).real() / two_pi;
        }
    }
    return out;
}

ClassicalField field_from_phase(const PhaseFields& pf, double eps_rel) {
    ClassicalField f;
    f.grid = pf.grid;
    f.mask = support_mask(pf.density, eps_rel, &f.floor);
    f.values.assign(pf.grid.n, 0.0);
    for (std::size_t j = 0; j < pf.grid.n; ++j)
        if (f.mask[j]) f.values[j] = pf.ncl_num[j] / pf.density[j];
    return f;
}

DecompStats stats_from_phase(const PhaseFields& pf, double mean_n, double second_n,
                             double eps_rel) {
    ClassicalField f = field_from_phase(pf, eps_rel);
    double mean_cl = 0.0, second_cl = 0.0;
    for (std::size_t j = 0; j < pf.grid.n; ++j) {
        if (!f.mask[j]) continue;
        mean_cl += pf.density[j] * f.values[j];
        second_cl += pf.density[j] * f.values[j] * f.values[j];
    }
    mean_cl *= pf.grid.dx;
    second_cl *= pf.grid.dx;
    return assemble_stats(mean_n, second_n, mean_cl, second_cl);
}

}  // namespace

ClassicalField number_classical_field(const NumberState& ns, std::size_t n_phi,
                                      double eps_rel) {
    return field_from_phase(phase_fields({1.0}, {ns}, n_phi), eps_rel);
}

ClassicalField number_classical_field_mixed(const std::vector<double>& weights,
                                            const std::vector<NumberState>& states,
                                            std::size_t n_phi, double eps_rel) {
    return field_from_phase(phase_fields(weights, states, n_phi), eps_rel);
}

DecompStats number_decomposition_stats(const NumberState& ns, std::size_t n_phi,
                                       double eps_rel) {
    const double mean = ns.mean_n();
    const double second = ns.var_n() + mean * mean;
    return stats_from_phase(phase_fields({1.0}, {ns}, n_phi), mean, second, eps_rel);
}

DecompStats number_decomposition_stats(const std::vector<double>& weights,
                                       const std::vector<NumberState>& states,
                                       std::size_t n_phi, double eps_rel) {
    double wsum = 0.0;
    for (double w : weights) wsum += w;
    double mean = 0.0, second = 0.0;
    for (std::size_t s = 0; s < states.size(); ++s) {
        const double w = weights[s] / wsum;
        const double m = states[s].mean_n();
        mean += w * m;
        second += w * (states[s].var_n() + m * m);
    }
    return stats_from_phase(phase_fields(weights, states, n_phi), mean, second, eps_rel);
}

}  // namespace eur
