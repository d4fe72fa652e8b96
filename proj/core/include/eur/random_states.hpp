#pragma once

#include <Eigen/Dense>
#include <random>

#include "eur/grid_state.hpp"

namespace eur {

/// All randomized inputs derive from this seeded engine so every scenario
/// and property suite is reproducible from its seed alone.
using Rng = std::mt19937_64;

/// Chirped boosted Gaussian: sigma in [0.5, 2], mu in [-2, 2], p0 in [-2, 2],
/// chirp in [-0.5, 0.5].
GridState random_chirped_gaussian(Rng& rng, const Grid1D& grid, double hbar = 1.0);

/// Strictly positive Gaussian mixture (no nodes) carrying one global random
/// boost + chirp phase; the workhorse for exact-equality suites, where
/// interference nodes would put sub-grid structure under the quadratures.
GridState random_smooth_mixture(Rng& rng, const Grid1D& grid, double hbar = 1.0);

/// Superposition with independent per-component phases and boosts; may have
/// deep interference dips. Used for inequality/property suites only.
GridState random_phase_mixture(Rng& rng, const Grid1D& grid, double hbar = 1.0);

/// Gentle single-Gaussian family for the Wigner equivalence scenario:
/// sigma in [1.2, 1.9], mu in [-1.5, 1.5], p0 in [-0.6, 0.6],
/// chirp in [-0.15, 0.15].
GridState random_equivalence_state(Rng& rng, const Grid1D& grid, double hbar = 1.0);

/// Entangled superposition of two Gaussian product states with a relative
/// phase; parameters kept gentle so stencil errors stay below matrix-relation
/// tolerances.
GridState2D random_entangled_2d(Rng& rng, const Grid2D& grid, double hbar = 1.0);

/// Haar-like random pure state vector (normalized complex normal entries).
Eigen::VectorXcd random_pure_vector(Rng& rng, int d);
Eigen::MatrixXcd random_hermitian(Rng& rng, int d);
/// Random full-rank mixed state (Dirichlet-ish weights over random kets).
Eigen::MatrixXcd random_density_matrix(Rng& rng, int d);

/// Random number-basis superposition over [0, n_max] with all coefficients
/// nonzero.
NumberState random_number_state(Rng& rng, int n_max, double hbar = 1.0);

}  // namespace eur
