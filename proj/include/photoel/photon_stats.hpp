// Fock-diagonal photon-number statistics: Poisson, thermal, sub-Poisson
// (P_n ~ lambda^n/(n!)^2) and finite custom distributions, with their
// moments, Mandel Q, generating functions and classical P-function sampling.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace photoel {

/// One coherent-state branch alpha = sqrt(magnitude_sq) e^{i phase}.
struct BranchAmplitude {
    double magnitude_sq = 0.0;
    double phase = 0.0;  // wrapped to [0, 2pi)
};

struct Moments {
    double mean = 0.0;
    double second_moment = 0.0;
    double mandel_q = 0.0;
};

enum class StatKind { poisson, thermal, sub_poisson, custom };

struct NonclassicalStateError : std::domain_error {
    using std::domain_error::domain_error;
};

class PhotonStatistics {
public:
    static PhotonStatistics poisson(double nbar);
    static PhotonStatistics thermal(double nbar);
    static PhotonStatistics sub_poisson(double lambda);
    static PhotonStatistics custom(std::vector<double> probs);

    StatKind kind() const { return kind_; }
    /// nbar for Poisson/thermal, lambda for sub-Poisson.
    double param() const { return param_; }
    const std::vector<double>& probs() const { return probs_; }

    double pmf(long n) const;
    Moments moments() const;
    double mandel_q() const;

    /// G(x) = sum_n P_n x^n (thermal uses the analytic continuation
    /// 1/(1 + nbar(1-x)), valid while that denominator is positive).
    double generating_fn(double x) const;

    /// Smallest N with the pmf tail negligible at ~1e-16 of the mode.
    long truncation_index() const;

private:
    PhotonStatistics(StatKind k, double p) : kind_(k), param_(p) {}
    StatKind kind_;
    double param_ = 0.0;
    std::vector<double> probs_;  // custom only
};

/// Inverts mean(lambda) = sqrt(lambda) I1(2 sqrt lambda)/I0(2 sqrt lambda).
double lambda_for_mean(double nbar);

/// Draws N coherent-state branches from the (nonnegative) P function of a
/// Poisson or thermal state.  Deterministic given (seed, N); throws
/// NonclassicalStateError for sub-Poisson/custom inputs.
std::vector<BranchAmplitude> sample_classical(const PhotonStatistics& stat,
                                              std::uint64_t seed, std::size_t count);

/// Deterministic per-worker seed derivation (splitmix64 of seed ^ index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t worker);

}  // namespace photoel
