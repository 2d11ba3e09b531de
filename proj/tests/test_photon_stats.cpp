#include <doctest.h>

#include <cmath>

#include "photoel/photon_stats.hpp"

using namespace photoel;

TEST_CASE("pmf closed forms")
{
    auto poisson = PhotonStatistics::poisson(1.0);
    CHECK(poisson.pmf(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(poisson.pmf(3) == doctest::Approx(std::exp(-1.0) / 6.0).epsilon(1e-13));

    auto thermal = PhotonStatistics::thermal(2.0);
    CHECK(thermal.pmf(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(thermal.pmf(2) == doctest::Approx(4.0 / 27.0).epsilon(1e-13));

    auto sub = PhotonStatistics::sub_poisson(1.0);
    CHECK(sub.pmf(0) == doctest::Approx(0.43867627983704877).epsilon(1e-13));
    CHECK(sub.pmf(2) == doctest::Approx(0.43867627983704877 / 4.0).epsilon(1e-12));

    auto custom = PhotonStatistics::custom({0.25, 0.5, 0.25});
    CHECK(custom.pmf(1) == 0.5);
    CHECK(custom.pmf(7) == 0.0);
    CHECK_THROWS_AS(custom.pmf(-1), std::domain_error);
}

TEST_CASE("pmf normalization")
{
    for (auto stat : {PhotonStatistics::poisson(4.0), PhotonStatistics::thermal(4.0),
                      PhotonStatistics::sub_poisson(30.0)}) {
        double sum = 0.0;
        for (long n = 0; n <= stat.truncation_index(); ++n) sum += stat.pmf(n);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("moments and Mandel Q")
{
    auto poisson = PhotonStatistics::poisson(0.3);
    CHECK(poisson.moments().mean == 0.3);
    CHECK(poisson.mandel_q() == 0.0);

    auto thermal = PhotonStatistics::thermal(0.3);
    CHECK(thermal.mandel_q() == 0.3);
    CHECK(PhotonStatistics::thermal(20.0).mandel_q() == 20.0);

    auto sub = PhotonStatistics::sub_poisson(410.1266033802162);
    CHECK(sub.moments().mean == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(sub.moments().second_moment == 410.1266033802162);
    CHECK(sub.mandel_q() == doctest::Approx(-0.4936698309891909).epsilon(1e-11));

    CHECK_THROWS_AS(PhotonStatistics::poisson(0.0).mandel_q(), std::domain_error);
}

TEST_CASE("sub-Poisson moments match direct pmf sums")
{
    auto sub = PhotonStatistics::sub_poisson(5.0);
    double s1 = 0.0, s2 = 0.0;
    for (long n = 0; n <= sub.truncation_index(); ++n) {
        s1 += (double)n * sub.pmf(n);
        s2 += (double)n * n * sub.pmf(n);
    }
    CHECK(sub.moments().mean == doctest::Approx(s1).epsilon(1e-12));
    CHECK(sub.moments().second_moment == doctest::Approx(s2).epsilon(1e-12));
}

TEST_CASE("generating functions")
{
    auto poisson = PhotonStatistics::poisson(2.0);
    CHECK(poisson.generating_fn(1.0) == 1.0);
    CHECK(poisson.generating_fn(0.0) == doctest::Approx(poisson.pmf(0)).epsilon(1e-14));
    CHECK(poisson.generating_fn(-1.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-13));

    auto thermal = PhotonStatistics::thermal(2.0);
    CHECK(thermal.generating_fn(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(thermal.generating_fn(2.0), std::domain_error);

    auto sub = PhotonStatistics::sub_poisson(3.0);
    // G(x) = C0(lambda x)/C0(lambda), cross-check by direct series
    for (double x : {0.7, -0.7, -3.0}) {
        double sum = 0.0;
        for (long n = 0; n < 60; ++n) sum += sub.pmf(n) * std::pow(x, (double)n);
        CHECK(sub.generating_fn(x) == doctest::Approx(sum).epsilon(1e-11));
    }

    auto custom = PhotonStatistics::custom({0.25, 0.5, 0.25});
    CHECK(custom.generating_fn(2.0) == doctest::Approx(0.25 + 1.0 + 1.0).epsilon(1e-14));
}

TEST_CASE("truncation index bounds the tail")
{
    for (auto stat : {PhotonStatistics::poisson(1.0), PhotonStatistics::thermal(0.2),
                      PhotonStatistics::sub_poisson(410.1266033802162)}) {
        long n_star = stat.truncation_index();
        CHECK(n_star >= 0);
        double peak = 0.0;
        for (long n = 0; n <= n_star; ++n) peak = std::max(peak, stat.pmf(n));
        CHECK(stat.pmf(n_star) <= 1e-16 * peak);
        CHECK(stat.pmf(n_star + 10) <= stat.pmf(n_star));
    }
    CHECK(PhotonStatistics::custom({0.5, 0.5}).truncation_index() == 1);
}

TEST_CASE("lambda_for_mean inverts the sub-Poisson mean")
{
    CHECK(lambda_for_mean(0.5) == doctest::Approx(0.64664071479452246).epsilon(1e-10));
    CHECK(lambda_for_mean(5.0) == doctest::Approx(27.632022298255929).epsilon(1e-10));
    CHECK(lambda_for_mean(20.0) == doctest::Approx(410.12660338021616).epsilon(1e-10));
    for (double nbar : {0.1, 1.0, 42.0}) {
        double lam = lambda_for_mean(nbar);
        CHECK(PhotonStatistics::sub_poisson(lam).moments().mean
              == doctest::Approx(nbar).epsilon(1e-11));
    }
    CHECK_THROWS_AS(lambda_for_mean(0.0), std::domain_error);
}

TEST_CASE("custom distribution validation")
{
    CHECK_THROWS_AS(PhotonStatistics::custom({}), std::domain_error);
    CHECK_THROWS_AS(PhotonStatistics::custom({0.5, 0.6}), std::domain_error);
    CHECK_THROWS_AS(PhotonStatistics::custom({1.5, -0.5}), std::domain_error);
}

TEST_CASE("classical P-function sampling")
{
    auto poisson = PhotonStatistics::poisson(5.0);
    auto s1 = sample_classical(poisson, 7, 1000);
    auto s2 = sample_classical(poisson, 7, 1000);
    REQUIRE(s1.size() == 1000);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].magnitude_sq == 5.0);  // coherent: a point mass in |alpha|^2
        CHECK(s1[i].phase == s2[i].phase);
        CHECK(s1[i].phase >= 0.0);
        CHECK(s1[i].phase < 2.0 * M_PI);
    }
    CHECK(sample_classical(poisson, 8, 10)[0].phase != s1[0].phase);

    auto thermal = PhotonStatistics::thermal(3.0);
    auto st = sample_classical(thermal, 11, 200000);
    double mean = 0.0;
    for (const auto& s : st) mean += s.magnitude_sq;
    mean /= (double)st.size();
    // exponential |alpha|^2: s.e. = nbar/sqrt(N)
    CHECK(mean == doctest::Approx(3.0).epsilon(4.0 * 1.0 / std::sqrt(200000.0)));

    CHECK_THROWS_AS(sample_classical(PhotonStatistics::sub_poisson(2.0), 1, 1000),
                    NonclassicalStateError);
    CHECK_THROWS_AS(sample_classical(PhotonStatistics::custom({1.0}), 1, 1000),
                    NonclassicalStateError);
}

TEST_CASE("derive_seed separates workers")
{
    CHECK(derive_seed(123, 0) == derive_seed(123, 0));
    CHECK(derive_seed(123, 0) != derive_seed(123, 1));
    CHECK(derive_seed(123, 0) != derive_seed(124, 0));
}
