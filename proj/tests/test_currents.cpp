#include <doctest.h>

#include <cmath>

#include "photoel/currents.hpp"
#include "photoel/quadrature.hpp"

using namespace photoel;

TEST_CASE("coherent branch current")
{
    CHECK(branch_current(0.0, 1.5) == 0.0);
    CHECK(branch_current(1.0, 1.5) == doctest::Approx(2.0 / 5.5).epsilon(1e-15));
    CHECK(branch_current(1e9, 1.5) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK_THROWS_AS(branch_current(-1.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(branch_current(1.0, 0.0), std::domain_error);
}

TEST_CASE("full current reduces to the branch current")
{
    ConverterParams p;  // simplified regime defaults
    CHECK(p.simplified_regime());
    for (double x : {0.0, 0.1, 3.0, 80.0})
        CHECK(full_branch_current(p, x, 1.0)
              == doctest::Approx(branch_current(x, p.r_sq)).epsilon(1e-14));
}

TEST_CASE("full current, general rates")
{
    ConverterParams p{0.8, 1.3, 0.05, 0.2, 0.9, 2.0};
    CHECK_FALSE(p.simplified_regime());
    CHECK(full_branch_current(p, 3.0, 1.0)
          == doctest::Approx(0.29017845516919019).epsilon(1e-13));

    // dark current at zero illumination
    ConverterParams dark{1.0, 1.0, 0.01, 0.3, 1.0, 1.5};
    CHECK(full_branch_current(dark, 0.0, 1.0)
          == doctest::Approx(-0.0029702970297029703).epsilon(1e-13));

    CHECK_THROWS_AS(full_branch_current(ConverterParams{1.0, 1.0, 0.0, 1.5, 1.0, 1.5}, 1.0, 1.0),
                    std::domain_error);
}

TEST_CASE("thermal current")
{
    CHECK(thermal_current(0.0, 1.5) == 0.0);
    CHECK(thermal_current(0.5, 1.5) == doctest::Approx(0.22981193502985808).epsilon(1e-12));
    CHECK(thermal_current(5.0, 5.0) == doctest::Approx(0.33238931939607583).epsilon(1e-12));
    CHECK(thermal_current(20.0, 1.5) == doctest::Approx(0.46734968199829794).epsilon(1e-12));
    // tiny nbar pushes z = c/4n far into the asymptotic regime
    CHECK(thermal_current(1e-8, 1.5) == doctest::Approx(2.0 * 1e-8 / 1.5).epsilon(1e-4));
    CHECK_THROWS_AS(thermal_current(-1.0, 1.5), std::domain_error);
}

TEST_CASE("thermal current equals its defining integral")
{
    for (double nbar : {0.3, 2.0, 20.0})
        for (double c : {1.5, 5.0}) {
            auto integral = integrate_adaptive(
                [nbar, c](double s) { return std::exp(-c * s) / (1.0 + 4.0 * nbar * s); },
                0.0, 50.0 / c, 1e-14, 1e-13, 40000);
            CHECK(thermal_current(nbar, c)
                  == doctest::Approx(0.5 * (1.0 - c * integral.value)).epsilon(1e-10));
        }
}

TEST_CASE("sub-Poisson current")
{
    CHECK(subpoisson_current(0.0, 1.5).value == 0.0);
    auto r = subpoisson_current(2.0, 1.5);
    CHECK(r.method == CurrentMethod::quadrature);
    CHECK(r.value == doctest::Approx(0.40783826686885448).epsilon(1e-11));
    CHECK(r.est_error < 1e-9);
    CHECK(subpoisson_current(10.0, 3.0).value
          == doctest::Approx(0.40846412446357090).epsilon(1e-11));
    CHECK(subpoisson_current(410.1266033802162, 1.5).value
          == doctest::Approx(0.49101677295358065).epsilon(1e-10));
    CHECK(subpoisson_current(410.1266033802162, 5.0).value
          == doctest::Approx(0.47123417327496091).epsilon(1e-10));
}

TEST_CASE("Fock-state current")
{
    // F_0 = 1/c
    CHECK(fock_current(0, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(fock_current(1, 2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fock_current(3, 1.5) == doctest::Approx(356.0 / 9.0).epsilon(1e-12));
    CHECK(fock_current(20, 1.5) == doctest::Approx(-2.7644506148243485e26).epsilon(1e-9));
    for (long n = 0; n <= 6; ++n) {
        double from_recursion = 0.5 * (1.0 - 1.5 * fock_integral_recursion(n, 1.5));
        CHECK(fock_current(n, 1.5) == doctest::Approx(from_recursion).epsilon(1e-10));
    }
    CHECK_THROWS_AS(fock_current(-1, 1.5), std::domain_error);
}

TEST_CASE("generic current matches the closed forms")
{
    for (double nbar : {0.2, 1.0, 5.0, 20.0})
        for (double c : {1.5, 5.0}) {
            CHECK(generic_current(PhotonStatistics::poisson(nbar), c).value
                  == doctest::Approx(branch_current(nbar, c)).epsilon(1e-10));
            CHECK(generic_current(PhotonStatistics::thermal(nbar), c).value
                  == doctest::Approx(thermal_current(nbar, c)).epsilon(1e-10));
        }
    double lam = lambda_for_mean(5.0);
    CHECK(generic_current(PhotonStatistics::sub_poisson(lam), 1.5).value
          == subpoisson_current(lam, 1.5).value);
}

TEST_CASE("generic current of a finite distribution is the Fock mixture")
{
    std::vector<double> probs{0.3, 0.5, 0.2};
    auto stat = PhotonStatistics::custom(probs);
    for (double c : {1.5, 2.5}) {
        double mixture = 0.0;
        for (std::size_t n = 0; n < probs.size(); ++n)
            mixture += probs[n] * fock_current((long)n, c);
        CHECK(generic_current(stat, c).value == doctest::Approx(mixture).epsilon(1e-9));
    }
    // a longer distribution exercises the extended integration window
    std::vector<double> wide(9, 0.0);
    wide[0] = 0.1; wide[3] = 0.2; wide[5] = 0.4; wide[8] = 0.3;
    double mixture = 0.0;
    for (std::size_t n = 0; n < wide.size(); ++n)
        mixture += wide[n] * fock_current((long)n, 3.0);
    CHECK(generic_current(PhotonStatistics::custom(wide), 3.0).value
          == doctest::Approx(mixture).epsilon(1e-8));
}

TEST_CASE("weak-intensity law")
{
    for (double c : {1.5, 5.0}) {
        double nbar = 1e-3 * c;
        double lam = lambda_for_mean(nbar);
        CHECK(branch_current(nbar, c)
              == doctest::Approx(2.0 * nbar / c).epsilon(0.01));
        CHECK(thermal_current(nbar, c)
              == doctest::Approx(2.0 * nbar / c).epsilon(0.01));
        CHECK(subpoisson_current(lam, c).value
              == doctest::Approx(2.0 * nbar / c).epsilon(0.01));
        CHECK(weak_intensity_current(PhotonStatistics::poisson(nbar), c)
              == doctest::Approx(2.0 * nbar / c).epsilon(1e-12));
    }
}

TEST_CASE("parameter validation")
{
    ConverterParams bad;
    bad.nbar_a = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = ConverterParams{};
    bad.r_sq = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    CHECK_THROWS_AS(subpoisson_current(-1.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(generic_current(PhotonStatistics::poisson(1.0), -1.0), std::domain_error);
}
