#include "photoel/classical_bound.hpp"

#include <cmath>
#include <stdexcept>

namespace photoel {

bool concavity_certificate(double r_sq, const std::vector<double>& grid)
{
    if (grid.size() < 100)
        throw std::invalid_argument("concavity_certificate: grid must have >= 100 points");
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        double h1 = grid[i] - grid[i - 1], h2 = grid[i + 1] - grid[i];
        if (!(h1 > 0.0) || !(h2 > 0.0))
            throw std::invalid_argument("concavity_certificate: grid must be strictly increasing");
        // divided second difference
        double d2 = (branch_current(grid[i + 1], r_sq) - branch_current(grid[i], r_sq)) / h2
                  - (branch_current(grid[i], r_sq) - branch_current(grid[i - 1], r_sq)) / h1;
        if (d2 > 1e-12) return false;
    }
    return true;
}

BoundCertificate max_classical_current(double n_mean, double r_sq,
                                       std::size_t grid_size)
{
    if (!(n_mean > 0.0))
        throw std::domain_error("max_classical_current: requires n_mean > 0");
    if (grid_size < 3)
        throw std::invalid_argument("max_classical_current: grid_size too small");

    const double x_max = 4.0 * n_mean;
    const double h = x_max / (double)(grid_size - 1);
    std::vector<double> x(grid_size), j(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        x[i] = (double)i * h;
        j[i] = branch_current(x[i], r_sq);
    }
    if (n_mean < x.front() || n_mean > x.back())
        throw std::domain_error("max_classical_current: n_mean outside the grid hull");

    // A basic optimal solution of the 2-constraint LP has support <= 2;
    // enumerate singletons and pairs straddling the mean constraint.
    BoundCertificate best;
    best.n_mean = n_mean;
    best.r_sq = r_sq;
    best.optimal_value = -1.0;
    auto consider = [&](double value, std::vector<std::pair<double, double>> support) {
        if (value > best.optimal_value + 1e-15) {
            best.optimal_value = value;
            best.support = std::move(support);
        }
    };
    for (std::size_t i = 0; i < grid_size; ++i)
        if (std::fabs(x[i] - n_mean) < 1e-12 * std::max(1.0, n_mean))
            consider(j[i], {{x[i], 1.0}});
    for (std::size_t i = 0; i < grid_size; ++i) {
        if (x[i] > n_mean) break;
        for (std::size_t k = grid_size; k-- > 0;) {
            if (x[k] < n_mean) break;
            if (k == i) continue;
            double w_i = (x[k] - n_mean) / (x[k] - x[i]);
            double value = w_i * j[i] + (1.0 - w_i) * j[k];
            consider(value, {{x[i], w_i}, {x[k], 1.0 - w_i}});
        }
    }
    best.gap_to_poisson = branch_current(n_mean, r_sq) - best.optimal_value;
    return best;
}

double nonclassical_exceedance(double n_mean, double r_sq)
{
    if (!(n_mean > 0.0))
        throw std::domain_error("nonclassical_exceedance: requires n_mean > 0");
    double lam = lambda_for_mean(n_mean);
    return subpoisson_current(lam, r_sq).value - branch_current(n_mean, r_sq);
}

}  // namespace photoel
