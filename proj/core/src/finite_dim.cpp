#include "eur/finite_dim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eur {

namespace {

constexpr double kTiny = 1e-14;

bool is_prime(int d) {
    if (d < 2) return false;
    for (int k = 2; k * k <= d; ++k)
        if (d % k == 0) return false;
    return true;
}

void require_hermitian(const Eigen::MatrixXcd& m, const char* what) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": not square");
    const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument(std::string(what) + ": not Hermitian");
}

}  // namespace

FiniteState::FiniteState(Eigen::MatrixXcd m) : rho(std::move(m)) {
    require_hermitian(rho, "FiniteState");
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw std::invalid_argument("FiniteState: nonpositive trace");
    rho /= tr;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12)
        throw std::invalid_argument("FiniteState: negative eigenvalue");
}

FiniteState FiniteState::pure(const Eigen::VectorXcd& psi) {
    const double n2 = psi.squaredNorm();
    if (!(n2 > 0.0)) throw std::invalid_argument("FiniteState::pure: zero vector");
    return FiniteState(psi * psi.adjoint() / n2);
}

FiniteState FiniteState::maximally_mixed(int d) {
    return FiniteState(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

FiniteObservable::FiniteObservable(Eigen::MatrixXcd m) : matrix(std::move(m)) {
    require_hermitian(matrix, "FiniteObservable");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix);
    eigenvalues = es.eigenvalues();
    eigenvectors = es.eigenvectors();
}

double FiniteObservable::min_gap() const {
    double gap = std::numeric_limits<double>::infinity();
    for (int i = 1; i < eigenvalues.size(); ++i)
        gap = std::min(gap, eigenvalues[i] - eigenvalues[i - 1]);
    return gap;
}

double MubSet::max_overlap_deviation() const {
    const double target = 1.0 / dim;
    double dev = 0.0;
    for (std::size_t a = 0; a < bases.size(); ++a)
        for (std::size_t b = a + 1; b < bases.size(); ++b) {
            const Eigen::MatrixXcd g = bases[a].adjoint() * bases[b];
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    dev = std::max(dev, std::abs(std::norm(g(i, j)) - target));
        }
    return dev;
}

FiniteClassicalComponent classical_component(const FiniteObservable& a,
                                             const FiniteObservable& b, const FiniteState& rho,
                                             double support_floor) {
    const int d = a.dim();
    if (b.dim() != d || rho.dim() != d)
        throw std::invalid_argument("classical_component: dimension mismatch");
    const double scale = std::max(std::abs(a.eigenvalues[0]), std::abs(a.eigenvalues[d - 1]));
    if (a.min_gap() <= 1e-10 * std::max(1.0, scale))
        throw std::invalid_argument(
            "classical_component: degenerate reference spectrum unsupported");

    FiniteClassicalComponent out;
    out.values = Eigen::VectorXd::Zero(d);
    out.mask.assign(static_cast<std::size_t>(d), 0);
    out.op = Eigen::MatrixXcd::Zero(d, d);
    const Eigen::MatrixXcd brho = b.matrix * rho.rho;
    for (int i = 0; i < d; ++i) {
        const Eigen::VectorXcd ket = a.eigenvectors.col(i);
        const double pa = (ket.adjoint() * rho.rho * ket)(0).real();
        if (pa < support_floor) continue;  // zero-probability eigenkets excluded
        const double num = (ket.adjoint() * brho * ket)(0).real();
        out.values[i] = num / pa;
        out.mask[static_cast<std::size_t>(i)] = 1;
        out.op += out.values[i] * ket * ket.adjoint();
    }
    return out;
}

DecompStats finite_decomposition_stats(const FiniteObservable& a, const FiniteObservable& b,
                                       const FiniteState& rho, double support_floor) {
    const FiniteClassicalComponent cl = classical_component(a, b, rho, support_floor);
    const int d = a.dim();
    double mean_cl = 0.0, second_cl = 0.0;
    for (int i = 0; i < d; ++i) {
        if (!cl.mask[static_cast<std::size_t>(i)]) continue;
        const Eigen::VectorXcd ket = a.eigenvectors.col(i);
        const double pa = (ket.adjoint() * rho.rho * ket)(0).real();
        mean_cl += pa * cl.values[i];
        second_cl += pa * cl.values[i] * cl.values[i];
    }
    const double mean_b = (rho.rho * b.matrix).trace().real();
    const double second_b = (rho.rho * b.matrix * b.matrix).trace().real();

    DecompStats st;
    st.mean_obs = mean_b;
    st.mean_cl = mean_cl;
    st.var_obs = second_b - mean_b * mean_b;
    st.var_cl = second_cl - mean_cl * mean_cl;
    st.min_error = second_b - second_cl;
    const double gap = mean_b - mean_cl;
    st.var_nc = st.min_error - gap * gap;
    return st;
}

GeneralizedURResult generalized_ur(const FiniteObservable& a, const FiniteObservable& b,
                                   const FiniteState& rho, double hbar, double tol,
                                   double support_floor) {
    GeneralizedURResult out;
    out.stats = finite_decomposition_stats(a, b, rho, support_floor);

    const int d = a.dim();
    const Eigen::MatrixXcd comm = b.matrix * rho.rho - rho.rho * b.matrix;
    double inv_delta_sq = 0.0;
    for (int i = 0; i < d; ++i) {
        const Eigen::VectorXcd ket = a.eigenvectors.col(i);
        const double pa = (ket.adjoint() * rho.rho * ket)(0).real();
        if (pa < support_floor) continue;
        const double term = (cdouble{0.0, 1.0 / hbar} * (ket.adjoint() * comm * ket)(0)).real();
        inv_delta_sq += term * term / pa;
    }
    out.delta_ba = (inv_delta_sq > 0.0) ? 1.0 / std::sqrt(inv_delta_sq)
                                        : std::numeric_limits<double>::infinity();
    out.spread_nc = std::sqrt(std::max(0.0, out.stats.var_nc));

    const double half = 0.5 * hbar;
    const double lhs = out.delta_ba * out.spread_nc;
    const bool pure = rho.purity() > 1.0 - 1e-12;
    out.check = pure ? equality_check("delta_B A * Delta B^A_nc = hbar/2", "finite-exact",
                                      lhs, half, tol)
                     : inequality_check("delta_B A * Delta B^A_nc >= hbar/2", "finite-exact",
                                        lhs, half, tol * half);
    if (inv_delta_sq <= kTiny && out.stats.var_nc <= kTiny) {
        out.indeterminate = true;
        out.check.status = CheckStatus::indeterminate;
        out.check.ratio = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

MubSet mub_bases(int d) {
    if (!is_prime(d))
        throw std::invalid_argument("mub_bases: only prime dimensions are supported");
    MubSet out;
    out.dim = d;
    out.bases.push_back(Eigen::MatrixXcd::Identity(d, d));
    if (d == 2) {
        Eigen::MatrixXcd x(2, 2), y(2, 2);
        const double s = 1.0 / std::sqrt(2.0);
        x << s, s, s, -s;
        y << s, s, cdouble{0.0, s}, cdouble{0.0, -s};
        out.bases.push_back(x);
        out.bases.push_back(y);
        return out;
    }
    // Odd prime: columns v^{(b,m)}_k = omega^{b k^2 + m k} / sqrt(d); distinct
    // b give quadratic Gauss sums of modulus sqrt(d).
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int b = 0; b < d; ++b) {
        Eigen::MatrixXcd basis(d, d);
        for (int m = 0; m < d; ++m)
            for (int k = 0; k < d; ++k) {
                const int expo = (b * k * k + m * k) % d;
                const double ang = 2.0 * std::numbers::pi * expo / d;
                basis(k, m) = s * cdouble{std::cos(ang), std::sin(ang)};
            }
        out.bases.push_back(basis);
    }
    return out;
}

IvanovicResult ivanovic_check(const FiniteState& rho, const MubSet& m, double tol) {
    if (m.dim != rho.dim()) throw std::invalid_argument("ivanovic_check: dimension mismatch");
    IvanovicResult out;
    double sum = 0.0;
    for (const auto& basis : m.bases) {
        double s2 = 0.0;
        for (int i = 0; i < m.dim; ++i) {
            const Eigen::VectorXcd ket = basis.col(i);
            const double p = (ket.adjoint() * rho.rho * ket)(0).real();
            s2 += p * p;
        }
        out.collision_lengths.push_back(1.0 / s2);
        sum += s2;  // 1/L_i
    }
    out.equality = equality_check("sum_i 1/L_i = 1 + tr[rho^2]", "collision-length-sum", sum,
                                  1.0 + rho.purity(), tol);
    out.bound = inequality_check("sum_i 1/L_i <= 2", "collision-length-bound", 2.0, sum, tol);
    return out;
}

}  // namespace eur
