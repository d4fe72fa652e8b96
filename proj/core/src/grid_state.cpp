#include "eur/grid_state.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eur/fft.hpp"

namespace eur {

namespace {

constexpr double kNormTol = 1e-10;

void check_hbar(double hbar) {
    if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
}

/// Forward half of the transform described in eur/fft.hpp: returns amplitudes
/// on the conjugate grid. `sign` = -1 maps position -> momentum; +1 back.
std::vector<cdouble> conjugate_transform(const Grid1D& g, const std::vector<cdouble>& a,
                                         double hbar, int sign) {
    const std::size_t n = g.n;
    const double dx = g.dx;
    const double dp = 2.0 * std::numbers::pi * hbar / (static_cast<double>(n) * dx);
    std::vector<cdouble> f(n);
    for (std::size_t k = 0; k < n; ++k) f[k] = (k & 1) ? -a[k] : a[k];
    const Fft& plan = cached_fft(n);
    if (sign < 0)
        plan.forward(f);
    else
        plan.inverse(f);
    const double scale = dx / std::sqrt(2.0 * std::numbers::pi * hbar);
    const double pmin = -0.5 * static_cast<double>(n) * dp;
    for (std::size_t j = 0; j < n; ++j) {
        const double pj = pmin + static_cast<double>(j) * dp;
        const double ang = static_cast<double>(sign) * pj * g.x0 / hbar;
        f[j] *= scale * cdouble{std::cos(ang), std::sin(ang)};
    }
    return f;
}

}  // namespace

// ---- GridState ---------------------------------------------------------------

GridState::GridState(Grid1D g, std::vector<cdouble> amp, double hb)
    : grid(g), amplitudes(std::move(amp)), hbar(hb) {
    check_hbar(hb);
    if (amplitudes.size() != grid.n)
        throw std::invalid_argument("GridState: amplitude count does not match grid");
    normalize();
}

double GridState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s * grid.dx;
}

void GridState::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw std::invalid_argument("GridState: zero norm");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) a *= inv;
}

bool GridState::is_real(double tol) const {
    for (const auto& a : amplitudes)
        if (std::abs(a.imag()) > tol) return false;
    return true;
}

GridState2D::GridState2D(Grid2D g, std::vector<cdouble> amp, double hb)
    : grid(g), amplitudes(std::move(amp)), hbar(hb) {
    check_hbar(hb);
    if (amplitudes.size() != grid.size())
        throw std::invalid_argument("GridState2D: amplitude count does not match grid");
    normalize();
}

double GridState2D::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s * grid.gx.dx * grid.gy.dx;
}

void GridState2D::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw std::invalid_argument("GridState2D: zero norm");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) a *= inv;
}

// ---- distributions -----------------------------------------------------------

GridDistribution::GridDistribution(Grid1D g, std::vector<double> values, bool per)
    : grid(g), p(std::move(values)), periodic(per) {
    if (p.size() != grid.n)
        throw std::invalid_argument("GridDistribution: size mismatch");
    double pmax = 0.0;
    for (double v : p) pmax = std::max(pmax, v);
    for (double& v : p) {
        if (v < -1e-12 * pmax)
            throw std::invalid_argument("GridDistribution: negative probability");
        if (v < 0.0) v = 0.0;
    }
}

double GridDistribution::total() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s * grid.dx;
}

void GridDistribution::normalize() {
    const double t = total();
    if (!(t > 0.0)) throw std::invalid_argument("GridDistribution: zero mass");
    for (double& v : p) v /= t;
}

GridDistribution2D::GridDistribution2D(Grid2D g, std::vector<double> values)
    : grid(g), p(std::move(values)) {
    if (p.size() != grid.size())
        throw std::invalid_argument("GridDistribution2D: size mismatch");
}

void GridDistribution2D::normalize() {
    double t = 0.0;
    for (double v : p) t += v;
    t *= cell_area();
    if (!(t > 0.0)) throw std::invalid_argument("GridDistribution2D: zero mass");
    for (double& v : p) v /= t;
}

// ---- density operator ----------------------------------------------------------

GridDensity::GridDensity(Grid1D g, std::vector<cdouble> matrix, double hb)
    : grid(g), rho(std::move(matrix)), hbar(hb) {
    check_hbar(hb);
    const std::size_t n = grid.n;
    if (rho.size() != n * n) throw std::invalid_argument("GridDensity: matrix size mismatch");
    double max_abs = 0.0;
    for (const auto& v : rho) max_abs = std::max(max_abs, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cdouble d = rho[i * n + j] - std::conj(rho[j * n + i]);
            if (std::abs(d) > 1e-12 * max_abs)
                throw std::invalid_argument("GridDensity: matrix not Hermitian");
        }
    const double tr = trace();
    if (std::abs(tr - 1.0) > kNormTol) {
        if (!(tr > 0.0)) throw std::invalid_argument("GridDensity: nonpositive trace");
        for (auto& v : rho) v /= tr;
    }
}

double GridDensity::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) s += rho[i * grid.n + i].real();
    return s * grid.dx;
}

double GridDensity::purity() const {
    double s = 0.0;
    for (const auto& v : rho) s += std::norm(v);
    return s * grid.dx * grid.dx;
}

GridDistribution GridDensity::diagonal() const {
    std::vector<double> p(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) p[i] = std::max(0.0, rho[i * grid.n + i].real());
    return GridDistribution(grid, std::move(p));
}

double GridDensity::min_eigenvalue() const {
    using Mat = Eigen::MatrixXcd;
    const auto n = static_cast<Eigen::Index>(grid.n);
    Eigen::Map<const Mat> m(rho.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() * grid.dx;
}

// ---- number states -------------------------------------------------------------

NumberState::NumberState(int nmin, int nmax, std::vector<cdouble> coeffs, double hb,
                         bool photon_mode)
    : n_min(nmin), n_max(nmax), c(std::move(coeffs)), hbar(hb) {
    check_hbar(hb);
    if (nmax < nmin) throw std::invalid_argument("NumberState: empty index range");
    if (photon_mode && nmin < 0)
        throw std::invalid_argument("NumberState: photon mode requires n_min >= 0");
    if (c.size() != static_cast<std::size_t>(count()))
        throw std::invalid_argument("NumberState: coefficient count mismatch");
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    if (!(s > 0.0)) throw std::invalid_argument("NumberState: zero norm");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& v : c) v *= inv;
}

double NumberState::mean_n() const {
    double s = 0.0;
    for (int k = 0; k < count(); ++k) s += (n_min + k) * std::norm(c[k]);
    return s;
}

double NumberState::var_n() const {
    double s = 0.0, s2 = 0.0;
    for (int k = 0; k < count(); ++k) {
        const double nn = n_min + k;
        const double w = std::norm(c[k]);
        s += nn * w;
        s2 += nn * nn * w;
    }
    return s2 - s * s;
}

// ---- densities and moments -------------------------------------------------

GridDistribution position_density(const GridState& s) {
    std::vector<double> p(s.grid.n);
    for (std::size_t k = 0; k < s.grid.n; ++k) p[k] = std::norm(s.amplitudes[k]);
    return GridDistribution(s.grid, std::move(p));
}

GridDistribution2D position_density(const GridState2D& s) {
    std::vector<double> p(s.amplitudes.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(s.amplitudes[k]);
    return GridDistribution2D(s.grid, std::move(p));
}

Moments moments(const GridDistribution& d) {
    double m = 0.0, m2 = 0.0;
    for (std::size_t k = 0; k < d.grid.n; ++k) {
        const double x = d.grid.x(k);
        m += d.p[k] * x;
        m2 += d.p[k] * x * x;
    }
    m *= d.grid.dx;
    m2 *= d.grid.dx;
    return {m, std::max(0.0, m2 - m * m)};
}

void moments(const GridDistribution2D& d, double mean[2], Sym2& cov) {
    const std::size_t nx = d.grid.gx.n, ny = d.grid.gy.n;
    double mx = 0.0, my = 0.0, mxx = 0.0, myy = 0.0, mxy = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
        const double x = d.grid.gx.x(ix);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const double y = d.grid.gy.x(iy);
            const double w = d.p[ix * ny + iy];
            mx += w * x;
            my += w * y;
            mxx += w * x * x;
            myy += w * y * y;
            mxy += w * x * y;
        }
    }
    const double da = d.cell_area();
    mx *= da; my *= da; mxx *= da; myy *= da; mxy *= da;
    mean[0] = mx;
    mean[1] = my;
    cov = {mxx - mx * mx, mxy - mx * my, myy - my * my};
}

// ---- transforms ------------------------------------------------------------

GridState momentum_representation(const GridState& s) {
    auto amp = conjugate_transform(s.grid, s.amplitudes, s.hbar, -1);
    GridState out;
    out.grid = s.grid.conjugate(s.hbar);
    out.amplitudes = std::move(amp);
    out.hbar = s.hbar;
    return out;
}

GridState position_representation(const GridState& s_momentum, const Grid1D& target) {
    if (target.conjugate(s_momentum.hbar).n != s_momentum.grid.n)
        throw std::invalid_argument("position_representation: grid mismatch");
    // Undo the forward map: strip the p-side phases/scale, inverse DFT, untwist.
    const Grid1D& pg = s_momentum.grid;
    const std::size_t n = pg.n;
    const double dp = pg.dx;
    std::vector<cdouble> f(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double pj = pg.x(j);
        const double ang = pj * target.x0 / s_momentum.hbar;
        f[j] = s_momentum.amplitudes[j] * cdouble{std::cos(ang), std::sin(ang)};
    }
    cached_fft(n).inverse(f);
    const double scale = dp / std::sqrt(2.0 * std::numbers::pi * s_momentum.hbar);
    for (std::size_t k = 0; k < n; ++k) {
        f[k] *= scale;
        if (k & 1) f[k] = -f[k];
    }
    GridState out;
    out.grid = target;
    out.amplitudes = std::move(f);
    out.hbar = s_momentum.hbar;
    return out;
}

namespace {

/// In-place conjugate transform of a 2D array along one axis.
void transform_axis_2d(const Grid2D& g, std::vector<cdouble>& a, double hbar, int axis) {
    const std::size_t nx = g.gx.n, ny = g.gy.n;
    const Grid1D& ax = (axis == 0) ? g.gx : g.gy;
    if (axis == 1) {
        std::vector<cdouble> row(ny);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(ix * ny), ny, row.begin());
            auto t = conjugate_transform(ax, row, hbar, -1);
            std::copy_n(t.begin(), ny, a.begin() + static_cast<std::ptrdiff_t>(ix * ny));
        }
    } else {
        std::vector<cdouble> col(nx);
        for (std::size_t iy = 0; iy < ny; ++iy) {
            for (std::size_t ix = 0; ix < nx; ++ix) col[ix] = a[ix * ny + iy];
            auto t = conjugate_transform(ax, col, hbar, -1);
            for (std::size_t ix = 0; ix < nx; ++ix) a[ix * ny + iy] = t[ix];
        }
    }
}

}  // namespace

GridState2D momentum_representation(const GridState2D& s) {
    GridState2D out = s;
    transform_axis_2d(s.grid, out.amplitudes, s.hbar, 0);
    transform_axis_2d(s.grid, out.amplitudes, s.hbar, 1);
    out.grid = {s.grid.gx.conjugate(s.hbar), s.grid.gy.conjugate(s.hbar)};
    return out;
}

GridState2D partial_momentum_representation(const GridState2D& s, int axis) {
    if (axis != 0 && axis != 1)
        throw std::invalid_argument("partial_momentum_representation: axis must be 0 or 1");
    GridState2D out = s;
    transform_axis_2d(s.grid, out.amplitudes, s.hbar, axis);
    if (axis == 0)
        out.grid = {s.grid.gx.conjugate(s.hbar), s.grid.gy};
    else
        out.grid = {s.grid.gx, s.grid.gy.conjugate(s.hbar)};
    return out;
}

GridDistribution momentum_density(const GridState& s) {
    return position_density(momentum_representation(s));
}

GridDistribution2D momentum_density(const GridState2D& s) {
    return position_density(momentum_representation(s));
}

Moments spectral_momentum_moments(const GridState& s) {
    return moments(momentum_density(s));
}

void spectral_momentum_moments(const GridState2D& s, double mean[2], Sym2& cov) {
    moments(momentum_density(s), mean, cov);
}

double momentum_second_moment_fd(const GridState& s) {
    const std::size_t n = s.grid.n;
    const double dx2 = s.grid.dx * s.grid.dx;
    double acc = 0.0;
    // 5-point second derivative in the interior, 3-point next to the ends.
    for (std::size_t k = 0; k < n; ++k) {
        cdouble d2;
        const auto& a = s.amplitudes;
        if (k >= 2 && k + 2 < n) {
            d2 = (-a[k - 2] + 16.0 * a[k - 1] - 30.0 * a[k] + 16.0 * a[k + 1] - a[k + 2]) /
                 (12.0 * dx2);
        } else if (k >= 1 && k + 1 < n) {
            d2 = (a[k - 1] - 2.0 * a[k] + a[k + 1]) / dx2;
        } else {
            continue;  // boundary cells assumed negligible (states decay to zero)
        }
        acc += (std::conj(a[k]) * d2).real();
    }
    return -s.hbar * s.hbar * acc * s.grid.dx;
}

// ---- density operators -------------------------------------------------------

GridDensity density_from_pure(const GridState& s) {
    const std::size_t n = s.grid.n;
    std::vector<cdouble> rho(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rho[i * n + j] = s.amplitudes[i] * std::conj(s.amplitudes[j]);
    return GridDensity(s.grid, std::move(rho), s.hbar);
}

GridDensity density_from_mixture(const std::vector<double>& weights,
                                 const std::vector<GridState>& states) {
    if (weights.size() != states.size() || states.empty())
        throw std::invalid_argument("density_from_mixture: weight/state mismatch");
    const Grid1D g = states[0].grid;
    const double hb = states[0].hbar;
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("density_from_mixture: negative weight");
        wsum += w;
    }
    const std::size_t n = g.n;
    std::vector<cdouble> rho(n * n, cdouble{0.0, 0.0});
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s].grid.n != n || states[s].hbar != hb)
            throw std::invalid_argument("density_from_mixture: incompatible states");
        const double w = weights[s] / wsum;
        const auto& a = states[s].amplitudes;
        for (std::size_t i = 0; i < n; ++i) {
            const cdouble wi = w * a[i];
            for (std::size_t j = 0; j < n; ++j) rho[i * n + j] += wi * std::conj(a[j]);
        }
    }
    return GridDensity(g, std::move(rho), hb);
}

Moments density_momentum_moments(const GridDensity& r) {
    const std::size_t n = r.grid.n;
    std::vector<cdouble> m = r.rho;
    // rho~ = U rho U^dagger with U the discrete position->momentum map:
    // forward transform down each column, then the conjugated map along rows.
    std::vector<cdouble> buf(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) buf[i] = m[i * n + j];
        auto t = conjugate_transform(r.grid, buf, r.hbar, -1);
        for (std::size_t i = 0; i < n; ++i) m[i * n + j] = t[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) buf[j] = std::conj(m[i * n + j]);
        auto t = conjugate_transform(r.grid, buf, r.hbar, -1);
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = std::conj(t[j]);
    }
    const Grid1D pg = r.grid.conjugate(r.hbar);
    double mean = 0.0, second = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double pj = pg.x(j);
        const double w = std::max(0.0, m[j * n + j].real());
        mean += pj * w;
        second += pj * pj * w;
    }
    mean *= pg.dx;
    second *= pg.dx;
    return {mean, std::max(0.0, second - mean * mean)};
}

double density_momentum_second_moment(const GridDensity& r) {
    const Moments mo = density_momentum_moments(r);
    return mo.variance + mo.mean * mo.mean;
}

// ---- phase -------------------------------------------------------------------

GridDistribution phase_distribution(const NumberState& ns, std::size_t n_phi) {
    const std::size_t needed = 2 * static_cast<std::size_t>(ns.count() - 1) + 2;
    if (n_phi < needed)
        throw std::invalid_argument(
            "phase_distribution: n_phi too small for exact trigonometric quadrature");
    const double two_pi = 2.0 * std::numbers::pi;
    Grid1D g = Grid1D::over(0.0, two_pi, n_phi);
    std::vector<double> p(n_phi);
    for (std::size_t j = 0; j < n_phi; ++j) {
        const double phi = g.x(j);
        cdouble b{0.0, 0.0};
        for (int k = 0; k < ns.count(); ++k) {
            const double ang = -static_cast<double>(ns.n_min + k) * phi;
            b += ns.c[k] * cdouble{std::cos(ang), std::sin(ang)};
        }
        p[j] = std::norm(b) / two_pi;
    }
    return GridDistribution(g, std::move(p), /*periodic=*/true);
}

// ---- conditioning --------------------------------------------------------------

namespace {

/// Fix the measured particle's coordinate at sample `idx` and return the
/// renormalized state of the other particle.
GridState slice_2d(const GridState2D& s, int measured_particle, std::size_t idx) {
    const std::size_t nx = s.grid.gx.n, ny = s.grid.gy.n;
    std::vector<cdouble> out;
    Grid1D g;
    if (measured_particle == 2) {
        out.resize(nx);
        for (std::size_t ix = 0; ix < nx; ++ix) out[ix] = s.amplitudes[ix * ny + idx];
        g = s.grid.gx;
    } else {
        out.resize(ny);
        std::copy_n(s.amplitudes.begin() + static_cast<std::ptrdiff_t>(idx * ny), ny,
                    out.begin());
        g = s.grid.gy;
    }
    double slice_peak = 0.0;
    for (const auto& v : out) slice_peak = std::max(slice_peak, std::norm(v));
    double peak = 0.0;
    for (const auto& v : s.amplitudes) peak = std::max(peak, std::norm(v));
    if (slice_peak < 1e-12 * peak)
        throw std::domain_error("conditioning: zero-probability slice");
    return GridState(g, std::move(out), s.hbar);
}

}  // namespace

GridState condition_on_position(const GridState2D& s, int particle, double x_value) {
    if (particle != 1 && particle != 2)
        throw std::invalid_argument("condition_on_position: particle must be 1 or 2");
    const Grid1D& axis = (particle == 1) ? s.grid.gx : s.grid.gy;
    return slice_2d(s, particle, axis.index_of(x_value));
}

GridState condition_on_momentum(const GridState2D& s, int particle, double p_value) {
    if (particle != 1 && particle != 2)
        throw std::invalid_argument("condition_on_momentum: particle must be 1 or 2");
    const int axis = (particle == 1) ? 0 : 1;
    GridState2D mixed = partial_momentum_representation(s, axis);
    const Grid1D& paxis = (particle == 1) ? mixed.grid.gx : mixed.grid.gy;
    return slice_2d(mixed, particle, paxis.index_of(p_value));
}

}  // namespace eur
