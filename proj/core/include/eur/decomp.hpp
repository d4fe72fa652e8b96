#pragma once

#include "eur/grid_state.hpp"

namespace eur {

/// Default relative support floor: cells with density below
/// eps * max(density) are masked out of fields and their quadratures.
constexpr double kSupportEps = 1e-12;

/// A real field defined on the support of a density (best classical
/// estimate of an observable as a function of the conjugate outcome).
/// Values off support are zero and flagged by mask = 0.
struct ClassicalField {
    Grid1D grid;
    std::vector<double> values;
    std::vector<char> mask;
    double floor = 0.0;

    double operator[](std::size_t k) const { return values[k]; }
};

/// Two-component classical momentum field of a 2D pure state, obtained as
/// the discrete gradient of one globally unwrapped phase (so the discrete
/// curl vanishes identically on uniformly stencilled cells).
struct VectorField2D {
    Grid2D grid;
    std::vector<double> v1, v2;
    std::vector<char> mask;
    double floor = 0.0;
};

/// First and second moments of an observable and of its classical component,
/// all taken in the same state.
///  - min_error: minimum mean-square error of any estimate compatible with a
///    conjugate measurement, <Obs^2> - <Obs_cl^2>.
///  - var_nc: variance of the nonclassical component,
///    min_error - (mean_obs - mean_cl)^2.
struct DecompStats {
    double mean_obs = 0.0;
    double mean_cl = 0.0;
    double var_obs = 0.0;
    double var_cl = 0.0;
    double var_nc = 0.0;
    double min_error = 0.0;
};

/// Complex field <x|P rho|x> together with the density diagonal; the common
/// ingredient of the mixed-state classical momentum, Fisher identity and
/// mixed uncertainty checks.
struct MomentumDensityField {
    Grid1D grid;
    std::vector<cdouble> p_rho;
    std::vector<double> density;
    std::vector<char> mask;
    double floor = 0.0;
};

// P_cl(x) = hbar * Im(psi'/psi) on the support of |psi|^2; identically zero
// for real amplitudes.
ClassicalField classical_momentum_field(const GridState& s, double eps_rel = kSupportEps);

// P_cl(x) = Re<x|P rho|x> / <x|rho|x>, with <x|P rho|x'> = -i hbar d/dx rho(x,x').
ClassicalField classical_momentum_field_mixed(const GridDensity& r,
                                              double eps_rel = kSupportEps);

MomentumDensityField momentum_density_field(const GridState& s, double eps_rel = kSupportEps);
MomentumDensityField momentum_density_field(const GridDensity& r, double eps_rel = kSupportEps);

// X_cl(p) = -hbar * d(arg psi~)/dp on the momentum grid.
ClassicalField classical_position_field(const GridState& s, double eps_rel = kSupportEps);

DecompStats momentum_decomposition_stats(const GridState& s, double eps_rel = kSupportEps);
DecompStats momentum_decomposition_stats(const GridDensity& r, double eps_rel = kSupportEps);
/// Variant reusing already-computed spectral momentum moments (the moments of
/// a large density matrix dominate the cost of the plain overload).
DecompStats momentum_decomposition_stats(const GridDensity& r, const Moments& spectral,
                                         double eps_rel = kSupportEps);

/// Mean-square error <(P - Ptilde)^2> of an arbitrary position-compatible
/// momentum estimate; minimized exactly by the classical momentum field.
double estimator_error(const GridState& s, const ClassicalField& estimate,
                       double eps_rel = kSupportEps);

/// Vector classical momentum of a 2D pure state, P_cl = hbar * grad(arg psi).
/// Cells where the phase cannot be consistently unwrapped (loop residues
/// around nodes) are masked out.
VectorField2D vector_classical_momentum(const GridState2D& s, double eps_rel = kSupportEps);

/// Mean vector and covariance matrix of the classical momentum components,
/// computed from the momentum-density numerators hbar * Im(psi* grad psi).
/// Unlike a quadrature over the unwrapped field, the integrand
/// (numerator_j * numerator_k / p) stays bounded through nodes of psi.
void classical_momentum_cov(const GridState2D& s, double mean[2], Sym2& cov,
                            double eps_rel = kSupportEps);

// N_cl(phi) for a pure number state on a cell-centered phase grid.
ClassicalField number_classical_field(const NumberState& ns, std::size_t n_phi,
                                      double eps_rel = kSupportEps);
/// Same for a mixture of number states (union coefficient range).
ClassicalField number_classical_field_mixed(const std::vector<double>& weights,
                                            const std::vector<NumberState>& states,
                                            std::size_t n_phi, double eps_rel = kSupportEps);

DecompStats number_decomposition_stats(const NumberState& ns, std::size_t n_phi,
                                       double eps_rel = kSupportEps);
DecompStats number_decomposition_stats(const std::vector<double>& weights,
                                       const std::vector<NumberState>& states,
                                       std::size_t n_phi, double eps_rel = kSupportEps);

}  // namespace eur
