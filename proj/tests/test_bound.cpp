#include <doctest.h>

#include <cmath>
#include <vector>

#include "photoel/classical_bound.hpp"

using namespace photoel;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * (double)i / (double)(n - 1);
    return v;
}

// portable splitmix64 stream for the rejection draws
struct Rng {
    std::uint64_t state;
    double uniform()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return ((z ^ (z >> 31)) >> 11) * 0x1.0p-53;
    }
};

}  // namespace

TEST_CASE("branch current is concave in the intensity")
{
    CHECK(concavity_certificate(1.5, linspace(0.0, 200.0, 400)));
    CHECK(concavity_certificate(5.0, linspace(0.0, 200.0, 400)));
    CHECK_THROWS_AS(concavity_certificate(1.5, linspace(0.0, 1.0, 10)),
                    std::invalid_argument);
    // midpoint above the chord
    double mid = branch_current(1.0, 1.5);
    double chord = 0.5 * (branch_current(0.0, 1.5) + branch_current(2.0, 1.5));
    CHECK(mid >= chord);
}

TEST_CASE("grid LP: point mass at the mean is optimal")
{
    auto cert = max_classical_current(1.0, 1.5);
    REQUIRE(cert.support.size() == 1);
    CHECK(cert.support[0].first == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cert.support[0].second == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cert.optimal_value == doctest::Approx(2.0 / 5.5).epsilon(1e-12));
    CHECK(std::fabs(cert.gap_to_poisson) < 1e-12);
}

TEST_CASE("grid LP: off-node mean brackets with two points")
{
    // grid_size 2000 on [0, 4]: x = 1 is not a node
    auto cert = max_classical_current(1.0, 1.5, 2000);
    REQUIRE(cert.support.size() == 2);
    CHECK(cert.support[0].first < 1.0);
    CHECK(cert.support[1].first > 1.0);
    double wsum = cert.support[0].second + cert.support[1].second;
    double xsum = cert.support[0].first * cert.support[0].second
                + cert.support[1].first * cert.support[1].second;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(xsum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cert.optimal_value <= branch_current(1.0, 1.5));
    double h = 4.0 / 1999.0;
    CHECK(branch_current(1.0, 1.5) - cert.optimal_value < h * h);
}

TEST_CASE("grid LP: infeasible mean")
{
    CHECK_THROWS_AS(max_classical_current(0.0, 1.5), std::domain_error);
}

TEST_CASE("random classical densities never beat the certificate")
{
    Rng rng{2024};
    for (double n_mean : {0.5, 5.0, 20.0}) {
        auto cert = max_classical_current(n_mean, 1.5);
        for (int trial = 0; trial < 1000; ++trial) {
            // a two-point density with the required mean
            double x1 = n_mean * rng.uniform();
            double x2 = n_mean + (4.0 * n_mean - n_mean) * rng.uniform();
            double w1 = (x2 - n_mean) / (x2 - x1);
            double value = w1 * branch_current(x1, 1.5)
                         + (1.0 - w1) * branch_current(x2, 1.5);
            CHECK(value <= cert.optimal_value + 1e-12);
        }
    }
}

TEST_CASE("sub-Poisson input beats every classical density of the same mean")
{
    double exc15 = nonclassical_exceedance(20.0, 1.5);
    double exc50 = nonclassical_exceedance(20.0, 5.0);
    CHECK(exc15 == doctest::Approx(2.1922694131071285e-4).epsilon(1e-5));
    CHECK(exc50 == doctest::Approx(6.459379808432808e-4).epsilon(1e-5));
    CHECK(exc15 > 0.0);
    CHECK(exc50 > 0.0);
    // The gap is not monotone in the rate ratio: at fixed mean it rises from
    // ~0 at small r_sq, peaks near r_sq ~ 2 n_mean, then decays.  It does
    // vanish in the weak-intensity limit.
    CHECK(nonclassical_exceedance(20.0, 40.0) > exc50);
    CHECK(nonclassical_exceedance(20.0, 2000.0) < nonclassical_exceedance(20.0, 40.0));
    CHECK(nonclassical_exceedance(0.01, 1.5) < 1e-3);
    CHECK(nonclassical_exceedance(0.01, 1.5) > 0.0);
}

TEST_CASE("exceedance stays positive across the parameter grid")
{
    for (double n_mean : {0.5, 1.0, 5.0, 20.0, 50.0})
        for (double r_sq : {1.0, 1.5, 2.0, 5.0, 10.0})
            CHECK(nonclassical_exceedance(n_mean, r_sq) > 0.0);
}
