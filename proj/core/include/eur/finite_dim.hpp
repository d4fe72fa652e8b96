#pragma once

#include <Eigen/Dense>
#include <vector>

#include "eur/decomp.hpp"
#include "eur/relations.hpp"

namespace eur {

/// d-dimensional density matrix; Hermitian, unit trace, PSD (validated).
struct FiniteState {
    Eigen::MatrixXcd rho;

    explicit FiniteState(Eigen::MatrixXcd m);
    static FiniteState pure(const Eigen::VectorXcd& psi);
    static FiniteState maximally_mixed(int d);

    int dim() const { return static_cast<int>(rho.rows()); }
    double purity() const { return (rho * rho).trace().real(); }
};

/// Hermitian observable with its eigendecomposition (ascending eigenvalues).
struct FiniteObservable {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;  // columns

    explicit FiniteObservable(Eigen::MatrixXcd m);

    int dim() const { return static_cast<int>(matrix.rows()); }
    /// Smallest eigenvalue spacing, used to reject degenerate spectra where
    /// the per-eigenket construction is ill-defined.
    double min_gap() const;
};

/// d+1 pairwise mutually unbiased orthonormal bases of C^d.
struct MubSet {
    int dim = 0;
    std::vector<Eigen::MatrixXcd> bases;  // each d x d, columns are the vectors

    /// Max deviation of |<e_i|f_j>|^2 from 1/d across distinct bases.
    double max_overlap_deviation() const;
};

/// Best estimate of B compatible with a measurement of A on rho:
/// values Re<a|B rho|a>/<a|rho|a> per eigenket, with eigenkets of
/// probability below the support floor excluded (mask = 0).
struct FiniteClassicalComponent {
    Eigen::VectorXd values;
    std::vector<char> mask;
    Eigen::MatrixXcd op;  // sum over support of value_a |a><a|
};

FiniteClassicalComponent classical_component(const FiniteObservable& a,
                                             const FiniteObservable& b, const FiniteState& rho,
                                             double support_floor = 1e-14);

/// Moments of B and of its A-classical component on rho.
DecompStats finite_decomposition_stats(const FiniteObservable& a, const FiniteObservable& b,
                                       const FiniteState& rho, double support_floor = 1e-14);

/// delta_B A * Delta B^A_nc >= hbar/2, equality for pure states. Real pure
/// states make both factors degenerate (0 * infinity): indeterminate.
struct GeneralizedURResult {
    RelationCheck check;
    double delta_ba = 0.0;
    double spread_nc = 0.0;
    bool indeterminate = false;
    DecompStats stats;
};

GeneralizedURResult generalized_ur(const FiniteObservable& a, const FiniteObservable& b,
                                   const FiniteState& rho, double hbar = 1.0,
                                   double tol = 1e-10, double support_floor = 1e-14);

/// Complete set of d+1 mutually unbiased bases for prime d
/// (d = 2: Pauli eigenbases; odd prime: quadratic Gauss-sum construction).
MubSet mub_bases(int d);

/// sum_i 1/L_i = 1 + tr[rho^2] <= 2 over the d+1 complementary observables.
struct IvanovicResult {
    std::vector<double> collision_lengths;
    RelationCheck equality;
    RelationCheck bound;  // sum <= 2
};

IvanovicResult ivanovic_check(const FiniteState& rho, const MubSet& m, double tol = 1e-12);

}  // namespace eur
