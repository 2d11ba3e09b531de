// P-function branch averaging: Monte Carlo over sampled coherent branches
// and deterministic radial quadrature, plus a generic (possibly signed)
// branch-weight combinator.

#pragma once

#include <cstdint>
#include <span>

#include "photoel/currents.hpp"

namespace photoel {

/// Phase-averaged classical density over |alpha|^2: nonnegative weights
/// summing to 1 on nonnegative nodes.
struct RadialDensity {
    std::vector<double> nodes;    // |alpha|^2 values
    std::vector<double> weights;  // >= 0, sum 1

    void validate() const;
    double mean() const;
};

/// Mean branch current over N P-function samples; standard-error estimate in
/// est_error.  Reproducible for a fixed (seed, N, worker_count) triple.
CurrentResult mc_average_current(const PhotonStatistics& stat, double r_sq,
                                 std::size_t count, std::uint64_t seed,
                                 unsigned worker_count = 1);

/// Sum_i w_i J(x_i, r_sq) for a radial classical density.
CurrentResult radial_average_current(const RadialDensity& density, double r_sq);

/// Generic weighted branch combinator; weights may be signed but must sum
/// to 1 (quasi-probability averages).
double branch_average(std::span<const double> values, std::span<const double> weights);

/// Gauss-Laguerre discretization of the thermal radial density
/// e^{-x/nbar}/nbar on n nodes (Golub-Welsch).
RadialDensity thermal_radial_density(double nbar, int n_nodes);

}  // namespace photoel
