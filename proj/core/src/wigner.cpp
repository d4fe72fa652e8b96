#include "eur/wigner.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "eur/derivatives.hpp"
#include "eur/fft.hpp"

namespace eur {

namespace {

/// Shared row loop: `correlation(k, j)` returns <x_k - j dx|rho|x_k + j dx>.
WignerGrid build_wigner(const Grid1D& g, double hbar,
                        const std::function<cdouble(std::size_t, std::ptrdiff_t)>& correlation) {
    const std::size_t n = g.n;
    const std::size_t m = 2 * n;
    const double dxi = 2.0 * g.dx;
    const double dpw = 2.0 * std::numbers::pi * hbar / (static_cast<double>(m) * dxi);

    WignerGrid out;
    out.xgrid = g;
    out.pgrid = Grid1D(-0.5 * static_cast<double>(m) * dpw, dpw, m);
    out.hbar = hbar;
    out.w.assign(n * m, 0.0);

    const Fft& plan = cached_fft(m);
    const double scale = dxi / (2.0 * std::numbers::pi * hbar);

    const auto do_rows = [&](std::size_t k_begin, std::size_t k_end) {
        std::vector<cdouble> f(m);
        for (std::size_t k = k_begin; k < k_end; ++k) {
            std::fill(f.begin(), f.end(), cdouble{0.0, 0.0});
            const std::ptrdiff_t kk = static_cast<std::ptrdiff_t>(k);
            const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
            const std::ptrdiff_t jmax = std::min(kk, nn - 1 - kk);
            // A(-j) = conj(A(j)); fill both halves, sign twist centers p = 0.
            for (std::ptrdiff_t j = 0; j <= jmax; ++j) {
                cdouble a = correlation(k, j);
                if (j & 1) a = -a;
                f[static_cast<std::size_t>(j)] = a;
                if (j > 0) f[m - static_cast<std::size_t>(j)] = std::conj(a);
            }
            plan.inverse(f.data());
            double* row = out.w.data() + k * m;
            for (std::size_t i = 0; i < m; ++i) row[i] = scale * f[i].real();
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_threads = std::min<std::size_t>(hw, 4);
    if (n_threads <= 1 || n < 64) {
        do_rows(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + n_threads - 1) / n_threads;
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(do_rows, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace

WignerGrid wigner_function(const GridState& s) {
    const auto& a = s.amplitudes;
    return build_wigner(s.grid, s.hbar, [&a](std::size_t k, std::ptrdiff_t j) {
        const std::size_t lo = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) - j);
        const std::size_t hi = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) + j);
        return a[lo] * std::conj(a[hi]);
    });
}

WignerGrid wigner_function(const GridDensity& r) {
    const std::size_t n = r.grid.n;
    const auto* rho = r.rho.data();
    return build_wigner(r.grid, r.hbar, [rho, n](std::size_t k, std::ptrdiff_t j) {
        const std::size_t lo = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) - j);
        const std::size_t hi = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(k) + j);
        return rho[lo * n + hi];
    });
}

std::vector<double> wigner_marginal_x(const WignerGrid& w) {
    const std::size_t n = w.xgrid.n, m = w.pgrid.n;
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        const double* row = w.w.data() + k * m;
        for (std::size_t i = 0; i < m; ++i) s += row[i];
        out[k] = s * w.pgrid.dx;
    }
    return out;
}

std::vector<double> wigner_marginal_p(const WignerGrid& w) {
    const std::size_t n = w.xgrid.n, m = w.pgrid.n;
    std::vector<double> out(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double* row = w.w.data() + k * m;
        for (std::size_t i = 0; i < m; ++i) out[i] += row[i];
    }
    for (double& v : out) v *= w.xgrid.dx;
    return out;
}

double wigner_purity(const WignerGrid& w) {
    double s = 0.0;
    for (double v : w.w) s += v * v;
    return 2.0 * std::numbers::pi * w.hbar * s * w.xgrid.dx * w.pgrid.dx;
}

ClassicalField wigner_classical_momentum(const WignerGrid& w, double eps_rel) {
    const std::size_t n = w.xgrid.n, m = w.pgrid.n;
    std::vector<double> denom(n, 0.0), numer(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double* row = w.w.data() + k * m;
        double d = 0.0, nu = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            d += row[i];
            nu += row[i] * w.pgrid.x(i);
        }
        denom[k] = d * w.pgrid.dx;
        numer[k] = nu * w.pgrid.dx;
    }
    ClassicalField f;
    f.grid = w.xgrid;
    f.mask = support_mask(denom, eps_rel, &f.floor);
    f.values.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        if (f.mask[k]) f.values[k] = numer[k] / denom[k];
    return f;
}

namespace {

Sym2 wigner_information(const WignerGrid& w, double eps_abs) {
    const std::size_t n = w.xgrid.n, m = w.pgrid.n;
    std::vector<double> col(n);
    std::vector<double> gx(n * m, 0.0), gp(n * m, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double* row = w.w.data() + k * m;
        for (std::size_t i = 0; i < m; ++i)
            gp[k * m + i] = stencil_derivative(row, m, i, w.pgrid.dx);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < n; ++k) col[k] = w.at(k, i);
        for (std::size_t k = 0; k < n; ++k)
            gx[k * m + i] = stencil_derivative(col.data(), n, k, w.xgrid.dx);
    }
    Sym2 info{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < n * m; ++k) {
        if (std::abs(w.w[k]) < eps_abs) continue;
        const double inv = 1.0 / w.w[k];
        info.xx += gx[k] * gx[k] * inv;
        info.xy += gx[k] * gp[k] * inv;
        info.yy += gp[k] * gp[k] * inv;
    }
    const double da = w.xgrid.dx * w.pgrid.dx;
    info.xx *= da;
    info.xy *= da;
    info.yy *= da;
    return info;
}

}  // namespace

WignerCovarianceReport wigner_covariance(const WignerGrid& w, double eps_w) {
    double wmax = 0.0, wmin = 0.0;
    for (double v : w.w) {
        wmax = std::max(wmax, v);
        wmin = std::min(wmin, v);
    }
    const double scale = std::max(wmax, -wmin);
    WignerCovarianceReport rep;
    rep.eps_used = eps_w;
    rep.sign_change = (wmin < -eps_w * scale);

    const Sym2 info = wigner_information(w, eps_w * scale);
    rep.information = info;
    const double det = info.xx * info.yy - info.xy * info.xy;
    if (det != 0.0) rep.matrix = {info.yy / det, -info.xy / det, info.xx / det};

    double eps = eps_w;
    for (int h = 1; h <= 4; ++h) {
        eps *= 0.5;
        const Sym2 ih = wigner_information(w, eps * scale);
        const auto drift = [](double a, double b) {
            return (a != 0.0) ? std::abs(b - a) / std::abs(a) : std::abs(b);
        };
        rep.sweep_drift = std::max({rep.sweep_drift, drift(info.xx, ih.xx),
                                    drift(info.yy, ih.yy)});
    }
    return rep;
}

}  // namespace eur
