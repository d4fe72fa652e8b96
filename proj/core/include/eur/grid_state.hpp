#pragma once

#include <complex>
#include <vector>

#include "eur/grid.hpp"

namespace eur {

/// Pure state sampled on a uniform 1D grid. Amplitudes are kept normalized,
/// sum |psi|^2 dx = 1. hbar rides along so conjugate grids are well defined.
struct GridState {
    Grid1D grid;
    std::vector<cdouble> amplitudes;
    double hbar = 1.0;

    GridState() = default;
    GridState(Grid1D g, std::vector<cdouble> amp, double hb);

    double norm_squared() const;
    void normalize();
    bool is_real(double tol = 0.0) const;
};

/// Pure state on a 2D product grid, row-major (ix * ny + iy).
struct GridState2D {
    Grid2D grid;
    std::vector<cdouble> amplitudes;
    double hbar = 1.0;

    GridState2D() = default;
    GridState2D(Grid2D g, std::vector<cdouble> amp, double hb);

    double norm_squared() const;
    void normalize();
};

/// Probability distribution on a grid; periodic marks phase distributions
/// on [0, 2*pi) where index n-1 wraps to 0.
struct GridDistribution {
    Grid1D grid;
    std::vector<double> p;
    bool periodic = false;

    GridDistribution() = default;
    GridDistribution(Grid1D g, std::vector<double> values, bool per = false);

    double total() const;
    void normalize();
};

struct GridDistribution2D {
    Grid2D grid;
    std::vector<double> p;

    GridDistribution2D() = default;
    GridDistribution2D(Grid2D g, std::vector<double> values);

    double cell_area() const { return grid.gx.dx * grid.gy.dx; }
    void normalize();
};

/// Position-representation density operator: rho[i*n+j] = <x_i|rho|x_j>.
/// Hermiticity and unit trace are enforced at construction; the positive
/// semidefiniteness invariant is O(n^3) and checked by validate_psd().
struct GridDensity {
    Grid1D grid;
    std::vector<cdouble> rho;
    double hbar = 1.0;

    GridDensity() = default;
    GridDensity(Grid1D g, std::vector<cdouble> matrix, double hb);

    cdouble at(std::size_t i, std::size_t j) const { return rho[i * grid.n + j]; }
    double trace() const;
    double purity() const;  // tr[rho^2]
    GridDistribution diagonal() const;
    /// Smallest eigenvalue; invariant requires >= -1e-10. Expensive.
    double min_eigenvalue() const;
};

/// State over integer number indices n in [n_min, n_max].
/// Photon-number usage requires n_min >= 0; a planar rotor may not.
struct NumberState {
    int n_min = 0;
    int n_max = 0;
    std::vector<cdouble> c;  // c[k] multiplies |n_min + k>
    double hbar = 1.0;

    NumberState() = default;
    NumberState(int nmin, int nmax, std::vector<cdouble> coeffs, double hb = 1.0,
                bool photon_mode = true);

    int count() const { return n_max - n_min + 1; }
    double mean_n() const;
    double var_n() const;
};

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Symmetric 2x2 covariance-like matrix.
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;
};

// ---- densities and moments -------------------------------------------------

GridDistribution position_density(const GridState& s);
GridDistribution2D position_density(const GridState2D& s);

Moments moments(const GridDistribution& d);
/// Mean vector and covariance matrix of a 2D distribution.
void moments(const GridDistribution2D& d, double mean[2], Sym2& cov);

// ---- Fourier transforms ----------------------------------------------------

/// psi~(p) = (2*pi*hbar)^(-1/2) Int psi(x) e^{-ipx/hbar} dx on the conjugate
/// grid; Parseval holds identically (see eur/fft.hpp for the index mapping).
GridState momentum_representation(const GridState& s);
GridState position_representation(const GridState& s_momentum, const Grid1D& target);

GridState2D momentum_representation(const GridState2D& s);
/// Transform one axis only (axis = 0 or 1), yielding the mixed representation.
GridState2D partial_momentum_representation(const GridState2D& s, int axis);

GridDistribution momentum_density(const GridState& s);
GridDistribution2D momentum_density(const GridState2D& s);

/// <P>, <P^2> evaluated on the spectral (momentum) grid.
Moments spectral_momentum_moments(const GridState& s);
/// Mean momentum vector and full momentum covariance of a 2D pure state.
void spectral_momentum_moments(const GridState2D& s, double mean[2], Sym2& cov);

/// <psi| -hbar^2 d^2/dx^2 |psi> by 5-point differences; cross-check for the
/// spectral second moment on smooth states.
double momentum_second_moment_fd(const GridState& s);

// ---- density operators -----------------------------------------------------

GridDensity density_from_pure(const GridState& s);
GridDensity density_from_mixture(const std::vector<double>& weights,
                                 const std::vector<GridState>& states);
/// tr[rho P^2] on the spectral grid (two passes of row/column transforms).
double density_momentum_second_moment(const GridDensity& r);
Moments density_momentum_moments(const GridDensity& r);

// ---- number states and phase ----------------------------------------------

/// p(phi) = |sum_n c_n e^{-in phi}|^2 / (2*pi) sampled on a cell-centered
/// periodic grid of n_phi points. Requires n_phi >= 2*(n_max-n_min)+2 so all
/// quadratures of degree <= 2(n_max-n_min) trigonometric polynomials are exact.
GridDistribution phase_distribution(const NumberState& ns, std::size_t n_phi);

// ---- two-particle conditioning ----------------------------------------------

/// Collapse a 2D pure state by a sharp position measurement of one particle
/// (particle index 1 or 2); returns the renormalized 1D state of the other.
GridState condition_on_position(const GridState2D& s, int particle, double x_value);

/// Same for a sharp momentum measurement, done in the mixed representation
/// (only the measured particle's axis is transformed).
GridState condition_on_momentum(const GridState2D& s, int particle, double p_value);

}  // namespace eur
