#pragma once

#include "eur/grid_state.hpp"

namespace eur {

/// Gaussian wave packet centered at mu with position spread sigma
/// (Delta X = sigma), boost p0 and quadratic chirp alpha:
///   psi(x) = (2 pi sigma^2)^(-1/4)
///            * exp(-(x-mu)^2/(4 sigma^2))
///            * exp(i [p0 (x-mu) + alpha (x-mu)^2] / hbar).
/// Along the support, hbar * d(arg psi)/dx = p0 + 2 alpha (x - mu).
GridState make_gaussian(const Grid1D& grid, double mu, double sigma, double p0 = 0.0,
                        double chirp = 0.0, double hbar = 1.0);

/// n-th harmonic oscillator eigenstate for mass m and frequency omega
/// (real-valued Hermite function).
GridState make_harmonic_eigenstate(const Grid1D& grid, int n, double mass = 1.0,
                                   double omega = 1.0, double hbar = 1.0);

/// Uniform-amplitude box state on [a, b].
GridState make_box(const Grid1D& grid, double a, double b, double hbar = 1.0);

GridState make_from_samples(const Grid1D& grid, std::vector<cdouble> samples,
                            double hbar = 1.0);

/// Normalized superposition sum_i coeff_i * psi_i on a shared grid.
GridState superpose(const std::vector<cdouble>& coeffs, const std::vector<GridState>& states);

/// Two-particle state approximating a joint eigenstate of relative position
/// (value a, spread sigma) and total momentum (value p0, spread hbar/tau):
///   psi(x1,x2) = K exp(-(x1-x2-a)^2/(4 sigma^2)) exp(-(x1+x2)^2/(4 tau^2))
///                * exp(i p0 (x1+x2)/(2 hbar)).
GridState2D make_epr(const Grid2D& grid, double sigma, double tau, double a, double p0,
                     double hbar = 1.0);

/// Product state psi1(x1) psi2(x2).
GridState2D make_product(const GridState& s1, const GridState& s2);

/// Normalized superposition of 2D states on a shared grid.
GridState2D superpose2d(const std::vector<cdouble>& coeffs,
                        const std::vector<GridState2D>& states);

/// Single number state |n>.
NumberState make_fock(int n, double hbar = 1.0);

/// Normalized number-basis superposition with coefficients for n in
/// [n_min, n_min + coeffs.size() - 1].
NumberState make_number_superposition(int n_min, std::vector<cdouble> coeffs,
                                      double hbar = 1.0, bool photon_mode = true);

}  // namespace eur
