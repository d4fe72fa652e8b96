#pragma once

#include <utility>

#include "eur/decomp.hpp"
#include "eur/grid_state.hpp"

namespace eur {

/// Fisher length delta = F^{-1/2} of a distribution under translations,
/// F = Int p (d ln p / dx)^2 dx.
///
/// divergent is set when the value is not trustworthy on this grid:
/// either the quadrature drifts more than 10% as the support floor is
/// halved 4 times, or 2nd- and 4th-order derivative estimates of F disagree
/// by more than 10% (a sharp edge or unresolved structure), or F vanishes
/// (flat density, delta formally infinite).
struct FisherResult {
    double delta = 0.0;
    double fisher_info = 0.0;
    bool divergent = false;
    double epsilon_used = 0.0;
    double sweep_drift = 0.0;
    double order_mismatch = 0.0;
};

struct FisherCovariance {
    Sym2 matrix;                 // FCov(X) = (Fisher information matrix)^{-1}
    Sym2 information;            // the information matrix itself
    double inverse_conditioning = 0.0;  // cond(information)
};

struct CorrelationPair {
    double r_pearson = 0.0;
    double r_fisher = 0.0;
};

FisherResult fisher_length(const GridDistribution& d, double eps_rel = kSupportEps);

/// Mixed-state Fisher length from the density operator,
/// (deltaX)^{-2} = -hbar^{-2} Int <x|[P,rho]|x>^2 / <x|rho|x> dx.
FisherResult fisher_length_mixed(const GridDensity& r, double eps_rel = kSupportEps);

FisherCovariance fisher_covariance(const GridDistribution2D& d, double eps_rel = kSupportEps);

/// L = 1 / sum_j p_j^2 for a normalized finite outcome distribution.
double collision_length(const std::vector<double>& probs);

/// Differential entropy (nats) and ensemble length exp(S).
std::pair<double, double> entropy_and_ensemble_length(const GridDistribution& d);

CorrelationPair correlations(const GridDistribution2D& d, double eps_rel = kSupportEps);

/// Heat-flow check of the entropy production rate dS/dt = gamma / deltaX^2.
/// Explicit Euler stepping of dp/dt = gamma p'' + drift p'; checkpoints
/// record the measured rate (centered difference of S in time) against the
/// prediction from the instantaneous Fisher length.
struct DiffusionCheckpoint {
    double t = 0.0;
    double measured_rate = 0.0;
    double predicted_rate = 0.0;
    double rel_mismatch = 0.0;
    bool fisher_divergent = false;
};

struct DiffusionReport {
    std::vector<DiffusionCheckpoint> checkpoints;
    double max_rel_mismatch = 0.0;
};

struct DiffusionOptions {
    double drift = 0.0;
    bool periodic = false;
    std::size_t checkpoint_every = 50;
    double eps_rel = kSupportEps;
};

DiffusionReport diffusion_entropy_rate_check(const GridDistribution& d, double gamma,
                                             std::size_t steps, double dt,
                                             const DiffusionOptions& opt = {});

}  // namespace eur
