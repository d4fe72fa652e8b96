#pragma once

#include "eur/decomp.hpp"
#include "eur/grid_state.hpp"

namespace eur {

/// Wigner function W(x,p) on the state's x-grid and the conjugate grid of the
/// doubled correlation variable.
///
/// Construction: per x-row, the correlation A_k(j) = <x-xi/2|rho|x+xi/2> is
/// sampled at xi_j = 2*j*dx (so both arguments stay on the grid), zero-padded
/// to M = 2n points, and transformed with kernel e^{+i p xi / hbar}:
///   W(x_k, p_m) = dxi/(2 pi hbar) * sum_j A_k(j) (-1)^j e^{2 pi i m j / M},
/// with p_m = (m - M/2) * dp_w, dp_w = pi hbar / (n dx). The discrete x-marginal
/// then equals |psi|^2 identically, and the p-marginal matches the spectral
/// momentum density up to Nyquist aliasing of the position density.
struct WignerGrid {
    Grid1D xgrid;
    Grid1D pgrid;
    std::vector<double> w;  // row-major, w[k * pgrid.n + m]
    double hbar = 1.0;

    double at(std::size_t k, std::size_t m) const { return w[k * pgrid.n + m]; }
};

WignerGrid wigner_function(const GridState& s);
WignerGrid wigner_function(const GridDensity& r);

std::vector<double> wigner_marginal_x(const WignerGrid& w);
std::vector<double> wigner_marginal_p(const WignerGrid& w);

/// (2 pi hbar) * Int W^2 dx dp; equals tr[rho^2], and 1 for pure states.
double wigner_purity(const WignerGrid& w);

/// Quasiclassical momentum field, P_cl(x) = Int p W dp / Int W dp; equivalent
/// to the direct definition from the state, which the tests verify.
ClassicalField wigner_classical_momentum(const WignerGrid& w, double eps_rel = kSupportEps);

/// Exploratory phase-space analogue of the Fisher covariance,
///   [WCov^{-1}]_jk = Int W^{-1} (dW/dz_j)(dW/dz_k) d^2z
/// evaluated under an |W| > eps_w * max|W| mask. Diagnostics only: the report
/// carries an eps_w sweep and flags sign changes of W inside the support,
/// where the integrand is unbounded. No pass/fail claim is attached.
struct WignerCovarianceReport {
    Sym2 matrix;          // inverse of the masked integral matrix
    Sym2 information;     // the masked integral matrix itself
    double eps_used = 0.0;
    double sweep_drift = 0.0;   // max relative entry change over 4 halvings
    bool sign_change = false;   // W takes both signs above the mask level
};

WignerCovarianceReport wigner_covariance(const WignerGrid& w, double eps_w = 1e-6);

}  // namespace eur
