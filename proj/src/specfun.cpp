#include "photoel/specfun.hpp"

#include <cmath>
#include <limits>

namespace photoel {

namespace {

constexpr double kEulerGamma = 0.5772156649015328606;

// E1 by its alternating power series; accumulated in long double since the
// partial sums reach ~10 while E1(6) ~ 4e-4.
double e1_series(double x)
{
    long double sum = -kEulerGamma - std::log((long double)x);
    long double term = 1.0L;
    for (int k = 1; k < 80; ++k) {
        term *= -(long double)x / k;
        long double add = -term / k;
        sum += add;
        if (std::fabs((double)add) < 1e-18 * std::fabs((double)sum) + 1e-300)
            break;
    }
    return (double)sum;
}

// e^x E1(x) by the standard continued fraction 1/(x+1-1/(x+3-4/(x+5-...))),
// evaluated with modified Lentz.
double e1_contfrac_scaled(double x)
{
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 200; ++i) {
        double a = -(double)i * i;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h;
}

// I0/I1 ascending series, all terms positive; fine up to the crossover.
double i0_series(double x)
{
    double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / ((double)k * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double i1_series(double x)
{
    double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int k = 1; k < 200; ++k) {
        term *= q / ((double)k * (k + 1));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// e^{-x} I_nu(x) by the large-argument expansion, truncated at the smallest
// term.  At the crossover x = 18 the optimal truncation error is below 1e-15.
double i_asymptotic_scaled(int nu, double x)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 40; ++k) {
        double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= -num / (8.0 * x * k);
        if (std::fabs(term) >= prev) break;  // divergent tail reached
        sum += term;
        prev = std::fabs(term);
        if (prev < 1e-17 * std::fabs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

constexpr double kBesselCrossover = 18.0;

// J0(z) via the Hankel expansion
//   J0(z) = sqrt(2/(pi z)) [P(z) cos(z - pi/4) - Q(z) sin(z - pi/4)],
//   P = sum_k (-1)^k a_{2k} z^{-2k},  Q = sum_k (-1)^k a_{2k+1} z^{-(2k+1)},
//   a_m = a_{m-1} * (-(2m-1)^2) / (8m),  a_0 = 1,
// truncated at the smallest term; valid for z >= kBesselCrossover.
double j0_asymptotic(double z)
{
    double p = 1.0, q = 0.0;
    double t = 1.0;  // a_m / z^m, signed
    double prev = std::numeric_limits<double>::max();
    for (int m = 1; m < 40; ++m) {
        t *= -(2.0 * m - 1.0) * (2.0 * m - 1.0) / (8.0 * m * z);
        if (std::fabs(t) >= prev) break;
        prev = std::fabs(t);
        if (m % 2 == 1)
            q += (((m - 1) / 2) % 2 == 0 ? t : -t);
        else
            p += ((m / 2) % 2 == 0 ? t : -t);
        if (prev < 1e-18) break;
    }
    double chi = z - 0.25 * M_PI;
    return std::sqrt(2.0 / (M_PI * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

// C0 series with Kahan compensation in long double; usable while the largest
// term ~ e^{2 sqrt|x|} still leaves enough mantissa, i.e. |x| <= crossover^2/4.
double c0_series(double x)
{
    long double sum = 1.0L, comp = 0.0L, term = 1.0L;
    for (int n = 1; n < 400; ++n) {
        term *= (long double)x / ((long double)n * n);
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::fabs((double)term) < 1e-20 * (1.0 + std::fabs((double)sum)) && n > 4)
            break;
    }
    return (double)sum;
}

}  // namespace

double exp_integral_e1(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1: requires x > 0");
    return x < 6.0 ? e1_series(x) : std::exp(-x) * e1_contfrac_scaled(x);
}

double exp_integral_e1_scaled(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1_scaled: requires x > 0");
    if (x < 6.0) return std::exp(x) * e1_series(x);
    return e1_contfrac_scaled(x);
}

double exp_integral_ei(double x)
{
    if (!std::isfinite(x) || x >= 0.0)
        throw std::domain_error("exp_integral_ei: requires finite x < 0");
    return -exp_integral_e1(-x);
}

double bessel_i0_scaled(double x)
{
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_i0_scaled: requires finite x >= 0");
    if (x < kBesselCrossover) return std::exp(-x) * i0_series(x);
    return i_asymptotic_scaled(0, x);
}

double bessel_i1_scaled(double x)
{
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_i1_scaled: requires finite x >= 0");
    if (x < kBesselCrossover) return std::exp(-x) * i1_series(x);
    return i_asymptotic_scaled(1, x);
}

double bessel_i0(double x)
{
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_i0: requires finite x >= 0");
    if (x > 700.0)
        throw std::overflow_error("bessel_i0: e^x overflows; use bessel_i0_scaled");
    if (x < kBesselCrossover) return i0_series(x);
    return std::exp(x) * i_asymptotic_scaled(0, x);
}

double bessel_i1(double x)
{
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error("bessel_i1: requires finite x >= 0");
    if (x > 700.0)
        throw std::overflow_error("bessel_i1: e^x overflows; use bessel_i1_scaled");
    if (x < kBesselCrossover) return i1_series(x);
    return std::exp(x) * i_asymptotic_scaled(1, x);
}

ScaledBessel bessel_i(int order, double x)
{
    if (order != 0 && order != 1)
        throw std::domain_error("bessel_i: order must be 0 or 1");
    if (x > 700.0)
        return {order == 0 ? bessel_i0_scaled(x) : bessel_i1_scaled(x), true};
    return {order == 0 ? bessel_i0(x) : bessel_i1(x), false};
}

double bessel_clifford_c0_log(double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("bessel_clifford_c0_log: requires x >= 0");
    double z = 2.0 * std::sqrt(x);
    return z + std::log(bessel_i0_scaled(z));
}

double bessel_clifford_c0(double x)
{
    if (!std::isfinite(x))
        throw std::domain_error("bessel_clifford_c0: non-finite argument");
    if (std::fabs(x) > 1e6)
        throw std::domain_error("bessel_clifford_c0: |x| > 1e6 unsupported");
    if (x >= 0.0) {
        double z = 2.0 * std::sqrt(x);
        if (z > 700.0)
            throw std::overflow_error("bessel_clifford_c0: result overflows; use the log form");
        return bessel_i0(z);
    }
    double z = 2.0 * std::sqrt(-x);
    // The alternating series cancels down from ~e^z; past the crossover the
    // lost digits exceed long double headroom and the J0 expansion takes over.
    if (z < kBesselCrossover) return c0_series(x);
    return j0_asymptotic(z);
}

}  // namespace photoel
