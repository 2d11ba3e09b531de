#include "photoel/photon_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "photoel/specfun.hpp"

namespace photoel {

PhotonStatistics PhotonStatistics::poisson(double nbar)
{
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw std::domain_error("PhotonStatistics::poisson: nbar must be >= 0");
    return PhotonStatistics(StatKind::poisson, nbar);
}

PhotonStatistics PhotonStatistics::thermal(double nbar)
{
    if (!(nbar >= 0.0) || !std::isfinite(nbar))
        throw std::domain_error("PhotonStatistics::thermal: nbar must be >= 0");
    return PhotonStatistics(StatKind::thermal, nbar);
}

PhotonStatistics PhotonStatistics::sub_poisson(double lambda)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::domain_error("PhotonStatistics::sub_poisson: lambda must be >= 0");
    return PhotonStatistics(StatKind::sub_poisson, lambda);
}

PhotonStatistics PhotonStatistics::custom(std::vector<double> probs)
{
    if (probs.empty())
        throw std::domain_error("PhotonStatistics::custom: empty distribution");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::domain_error("PhotonStatistics::custom: probabilities must be >= 0");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::domain_error("PhotonStatistics::custom: probabilities must sum to 1");
    PhotonStatistics s(StatKind::custom, 0.0);
    s.probs_ = std::move(probs);
    return s;
}

double PhotonStatistics::pmf(long n) const
{
    if (n < 0) throw std::domain_error("pmf: n must be >= 0");
    switch (kind_) {
    case StatKind::poisson:
        if (param_ == 0.0) return n == 0 ? 1.0 : 0.0;
        return std::exp(n * std::log(param_) - param_ - std::lgamma(n + 1.0));
    case StatKind::thermal:
        if (param_ == 0.0) return n == 0 ? 1.0 : 0.0;
        return std::exp(n * std::log(param_ / (param_ + 1.0)) - std::log(param_ + 1.0));
    case StatKind::sub_poisson:
        if (param_ == 0.0) return n == 0 ? 1.0 : 0.0;
        return std::exp(n * std::log(param_) - 2.0 * std::lgamma(n + 1.0)
                        - bessel_clifford_c0_log(param_));
    case StatKind::custom:
        return n < (long)probs_.size() ? probs_[n] : 0.0;
    }
    return 0.0;
}

Moments PhotonStatistics::moments() const
{
    Moments m;
    switch (kind_) {
    case StatKind::poisson:
        m.mean = param_;
        m.second_moment = param_ * param_ + param_;
        break;
    case StatKind::thermal:
        m.mean = param_;
        m.second_moment = 2.0 * param_ * param_ + param_;
        break;
    case StatKind::sub_poisson: {
        double z = 2.0 * std::sqrt(param_);
        m.mean = param_ == 0.0
                     ? 0.0
                     : std::sqrt(param_) * bessel_i1_scaled(z) / bessel_i0_scaled(z);
        m.second_moment = param_;
        break;
    }
    case StatKind::custom: {
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t n = 0; n < probs_.size(); ++n) {
            s1 += (double)n * probs_[n];
            s2 += (double)n * n * probs_[n];
        }
        m.mean = s1;
        m.second_moment = s2;
        break;
    }
    }
    // Q in closed form where one exists (variance cancellation is exact
    // analytically but not in floating point).
    switch (kind_) {
    case StatKind::poisson:
        m.mandel_q = 0.0;
        break;
    case StatKind::thermal:
        m.mandel_q = param_;
        break;
    default:
        m.mandel_q = m.mean > 0.0
                         ? (m.second_moment - m.mean * m.mean) / m.mean - 1.0
                         : 0.0;
    }
    return m;
}

double PhotonStatistics::mandel_q() const
{
    Moments m = moments();
    if (!(m.mean > 0.0))
        throw std::domain_error("mandel_q: undefined for zero mean");
    return m.mandel_q;
}

double PhotonStatistics::generating_fn(double x) const
{
    if (!std::isfinite(x))
        throw std::domain_error("generating_fn: non-finite x");
    switch (kind_) {
    case StatKind::poisson:
        return std::exp(param_ * (x - 1.0));
    case StatKind::thermal: {
        double den = 1.0 + param_ * (1.0 - x);
        if (den <= 0.0)
            throw std::domain_error("generating_fn: thermal pole at 1 + nbar(1-x) <= 0");
        return 1.0 / den;
    }
    case StatKind::sub_poisson: {
        if (param_ == 0.0) return 1.0;
        double logc0 = bessel_clifford_c0_log(param_);
        double arg = param_ * x;
        if (arg >= 0.0)
            return std::exp(bessel_clifford_c0_log(arg) - logc0);
        return bessel_clifford_c0(arg) * std::exp(-logc0);
    }
    case StatKind::custom: {
        double acc = 0.0;
        for (std::size_t i = probs_.size(); i-- > 0;) acc = acc * x + probs_[i];
        return acc;
    }
    }
    return 0.0;
}

long PhotonStatistics::truncation_index() const
{
    if (kind_ == StatKind::custom) return (long)probs_.size() - 1;
    // All three families are eventually log-concave: once past the mode, the
    // pmf decreases monotonically, so the first sub-threshold term bounds the tail.
    double peak = 0.0;
    double mode_guess = moments().mean;
    long n = 0;
    for (;; ++n) {
        double p = pmf(n);
        peak = std::max(peak, p);
        if ((double)n > mode_guess && p < 1e-16 * peak) break;
        if (n > 100000000L)
            throw std::runtime_error("truncation_index: no convergence");
    }
    return n;
}

double lambda_for_mean(double nbar)
{
    if (!(nbar > 0.0) || !std::isfinite(nbar))
        throw std::domain_error("lambda_for_mean: requires nbar > 0");
    auto mean_of = [](double lam) {
        if (lam == 0.0) return 0.0;
        double z = 2.0 * std::sqrt(lam);
        return std::sqrt(lam) * bessel_i1_scaled(z) / bessel_i0_scaled(z);
    };
    double lo = 0.0, hi = std::max(1.0, 4.0 * nbar * nbar);
    if (mean_of(hi) < nbar)
        throw std::runtime_error("lambda_for_mean: bracket failure");
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (mean_of(mid) < nbar ? lo : hi) = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t worker)
{
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (worker + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// xoshiro-free portable generator: splitmix64 stream.  Chosen over
// std::mt19937_64 + distributions so the sampled values are identical on
// every platform.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t s) : state(s) {}
    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }  // [0, 1)
};

double wrap_phase(double phi)
{
    const double two_pi = 2.0 * M_PI;
    phi = std::fmod(phi, two_pi);
    return phi < 0.0 ? phi + two_pi : phi;
}

}  // namespace

std::vector<BranchAmplitude> sample_classical(const PhotonStatistics& stat,
                                              std::uint64_t seed, std::size_t count)
{
    std::vector<BranchAmplitude> out;
    out.reserve(count);
    SplitMix rng(seed);
    const double two_pi = 2.0 * M_PI;
    switch (stat.kind()) {
    case StatKind::poisson: {
        double nbar = stat.param();
        for (std::size_t i = 0; i < count; ++i)
            out.push_back({nbar, two_pi * rng.uniform()});
        break;
    }
    case StatKind::thermal: {
        // P_th(alpha) = exp(-|alpha|^2/nbar)/(pi nbar): re/im iid normal
        // with variance nbar/2, drawn by Box-Muller.
        double sigma = std::sqrt(0.5 * stat.param());
        for (std::size_t i = 0; i < count; ++i) {
            double u1 = rng.uniform(), u2 = rng.uniform();
            double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 in [0,1) -> log(1-u1) finite
            double re = sigma * r * std::cos(two_pi * u2);
            double im = sigma * r * std::sin(two_pi * u2);
            out.push_back({re * re + im * im, wrap_phase(std::atan2(im, re))});
        }
        break;
    }
    default:
        throw NonclassicalStateError(
            "sample_classical: P function is not positive-definite for this state");
    }
    return out;
}

}  // namespace photoel
