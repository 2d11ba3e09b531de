#include "photoel/pfunc_average.hpp"

#include <cmath>
#include <numeric>
#include <thread>

#include <Eigen/Eigenvalues>

namespace photoel {

void RadialDensity::validate() const
{
    if (nodes.size() != weights.size() || nodes.empty())
        throw std::invalid_argument("RadialDensity: nodes/weights size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(nodes[i] >= 0.0))
            throw std::invalid_argument("RadialDensity: nodes must be >= 0");
        if (!(weights[i] >= 0.0))
            throw std::invalid_argument("RadialDensity: weights must be >= 0");
        sum += weights[i];
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("RadialDensity: weights must sum to 1");
}

double RadialDensity::mean() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) m += nodes[i] * weights[i];
    return m;
}

namespace {

struct Kahan {
    double sum = 0.0, comp = 0.0;
    void add(double v)
    {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

struct WorkerAccum {
    Kahan sum_j, sum_j2;
    std::size_t count = 0;
};

}  // namespace

CurrentResult mc_average_current(const PhotonStatistics& stat, double r_sq,
                                 std::size_t count, std::uint64_t seed,
                                 unsigned worker_count)
{
    if (count < 1000)
        throw std::invalid_argument("mc_average_current: N must be >= 1e3");
    if (worker_count == 0) worker_count = 1;
    if (stat.kind() != StatKind::poisson && stat.kind() != StatKind::thermal)
        throw NonclassicalStateError(
            "mc_average_current: P function is not positive-definite for this state");

    // Fixed partition: worker w draws its own chunk from a derived seed, so
    // the result depends only on (seed, N, worker_count).
    std::vector<WorkerAccum> acc(worker_count);
    auto run_worker = [&](unsigned w) {
        std::size_t base = count / worker_count, rem = count % worker_count;
        std::size_t n_w = base + (w < rem ? 1 : 0);
        auto samples = sample_classical(stat, derive_seed(seed, w), n_w);
        for (const auto& s : samples) {
            double j = branch_current(s.magnitude_sq, r_sq);
            acc[w].sum_j.add(j);
            acc[w].sum_j2.add(j * j);
        }
        acc[w].count = n_w;
    };
    if (worker_count == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < worker_count; ++w) pool.emplace_back(run_worker, w);
        for (auto& t : pool) t.join();
    }

    // reduction in worker order, compensated
    Kahan total, total2;
    std::size_t n = 0;
    for (const auto& a : acc) {
        total.add(a.sum_j.sum);
        total2.add(a.sum_j2.sum);
        n += a.count;
    }
    double mean = total.sum / (double)n;
    double var = std::max(0.0, total2.sum / (double)n - mean * mean);
    double stderr_ = n > 1 ? std::sqrt(var / (double)(n - 1)) : 0.0;
    return {mean, CurrentMethod::monte_carlo, stderr_};
}

CurrentResult radial_average_current(const RadialDensity& density, double r_sq)
{
    density.validate();
    Kahan sum;
    for (std::size_t i = 0; i < density.nodes.size(); ++i)
        sum.add(density.weights[i] * branch_current(density.nodes[i], r_sq));
    return {sum.sum, CurrentMethod::quadrature, 0.0};
}

double branch_average(std::span<const double> values, std::span<const double> weights)
{
    if (values.size() != weights.size())
        throw std::invalid_argument("branch_average: length mismatch");
    Kahan sum, wsum;
    for (std::size_t i = 0; i < values.size(); ++i) {
        sum.add(values[i] * weights[i]);
        wsum.add(weights[i]);
    }
    if (std::fabs(wsum.sum - 1.0) > 1e-9)
        throw std::invalid_argument("branch_average: weights must sum to 1");
    return sum.sum;
}

RadialDensity thermal_radial_density(double nbar, int n_nodes)
{
    if (!(nbar > 0.0) || n_nodes < 1)
        throw std::invalid_argument("thermal_radial_density: requires nbar > 0, n_nodes >= 1");
    // Golub-Welsch on the Laguerre Jacobi matrix: diag 2k+1, offdiag k.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
    for (int k = 0; k < n_nodes; ++k) {
        jac(k, k) = 2.0 * k + 1.0;
        if (k + 1 < n_nodes) jac(k, k + 1) = jac(k + 1, k) = (double)(k + 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    RadialDensity d;
    d.nodes.resize(n_nodes);
    d.weights.resize(n_nodes);
    for (int k = 0; k < n_nodes; ++k) {
        d.nodes[k] = nbar * es.eigenvalues()[k];
        double v0 = es.eigenvectors()(0, k);
        d.weights[k] = v0 * v0;  // first-moment normalization mu_0 = 1
    }
    // renormalize away the eigenvector roundoff
    double s = std::accumulate(d.weights.begin(), d.weights.end(), 0.0);
    for (auto& w : d.weights) w /= s;
    return d;
}

}  // namespace photoel
