// Numerical verification that, at fixed mean photon number, a coherent
// point mass (Poisson statistics) maximizes the branch-current average over
// all nonnegative radial P densities: a moment-constrained LP solved exactly
// on a grid by two-point-support enumeration.

#pragma once

#include <utility>
#include <vector>

#include "photoel/pfunc_average.hpp"

namespace photoel {

struct BoundCertificate {
    double n_mean = 0.0;
    double r_sq = 0.0;
    double optimal_value = 0.0;                        // J/gamma
    std::vector<std::pair<double, double>> support;    // (x, weight), <= 2 points
    double gap_to_poisson = 0.0;                       // branch_current(n_mean) - optimal
};

/// True iff all second finite differences of branch_current on the grid are
/// <= 1e-12 (concavity).
bool concavity_certificate(double r_sq, const std::vector<double>& grid);

/// max sum w_i J(x_i) subject to sum w_i = 1, sum w_i x_i = n_mean, w >= 0,
/// over a uniform grid of grid_size nodes on [0, 4 n_mean].
BoundCertificate max_classical_current(double n_mean, double r_sq,
                                       std::size_t grid_size = 2001);

/// subpoisson_current(lambda_for_mean(n_mean)) - branch_current(n_mean).
double nonclassical_exceedance(double n_mean, double r_sq);

}  // namespace photoel
