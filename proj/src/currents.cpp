#include "photoel/currents.hpp"

#include <cmath>

#include "photoel/quadrature.hpp"
#include "photoel/specfun.hpp"

namespace photoel {

void ConverterParams::validate() const
{
    if (!(gamma_a >= 0.0) || !(gamma_b >= 0.0) || !(kappa >= 0.0))
        throw std::domain_error("ConverterParams: rates must be >= 0");
    if (!(nbar_a >= 0.0 && nbar_a <= 1.0) || !(nbar_b >= 0.0 && nbar_b <= 1.0))
        throw std::domain_error("ConverterParams: occupations must lie in [0,1]");
    if (!(r_sq > 0.0) || !std::isfinite(r_sq))
        throw std::domain_error("ConverterParams: r_sq must be positive and finite");
}

bool ConverterParams::simplified_regime() const
{
    return gamma_a == gamma_b && kappa == 0.0 && nbar_a == 0.0 && nbar_b == 1.0;
}

const char* to_string(CurrentMethod m)
{
    switch (m) {
    case CurrentMethod::closed_form: return "closed_form";
    case CurrentMethod::quadrature: return "quadrature";
    case CurrentMethod::monte_carlo: return "monte_carlo";
    case CurrentMethod::ode_oracle: return "ode_oracle";
    case CurrentMethod::fock_sum: return "fock_sum";
    }
    return "?";
}

double branch_current(double x, double r_sq)
{
    if (!(x >= 0.0))
        throw std::domain_error("branch_current: requires |alpha|^2 >= 0");
    if (!(r_sq > 0.0))
        throw std::domain_error("branch_current: requires r_sq > 0");
    return 2.0 * x / (4.0 * x + r_sq);
}

double full_branch_current(const ConverterParams& p, double x, double gamma_ref)
{
    p.validate();
    if (!(x >= 0.0))
        throw std::domain_error("full_branch_current: requires |alpha|^2 >= 0");
    if (!(gamma_ref > 0.0))
        throw std::domain_error("full_branch_current: requires gamma_ref > 0");
    const double xi0_sq = gamma_ref * gamma_ref / p.r_sq;
    const double gsum = p.gamma_a + p.gamma_b + p.kappa;
    const double num = 4.0 * x * xi0_sq * p.gamma_a * p.gamma_b * (p.nbar_b - p.nbar_a)
                     - p.kappa * p.gamma_a * p.gamma_b * gsum * p.nbar_a;
    const double den = 4.0 * x * xi0_sq * (p.gamma_a + p.gamma_b)
                     + p.gamma_b * (p.gamma_a + p.kappa) * gsum;
    if (den == 0.0)
        throw std::domain_error("full_branch_current: degenerate parameters (zero denominator)");
    return num / den / gamma_ref;
}

double thermal_current(double nbar, double r_sq)
{
    if (!(r_sq > 0.0))
        throw std::domain_error("thermal_current: requires r_sq > 0");
    if (!(nbar >= 0.0))
        throw std::domain_error("thermal_current: requires nbar >= 0");
    if (nbar == 0.0) return 0.0;  // continuous extension
    const double z = r_sq / (4.0 * nbar);
    // z e^z Ei(-z) = -z e^z E1(z); the scaled form avoids e^z overflow.
    return 0.5 * (1.0 - z * exp_integral_e1_scaled(z));
}

namespace {

// Truncation point of Int_0^inf e^{-cs} G(1-4s) ds with |G| <= 1: relative
// tail below ~1e-18.
double tail_cutoff(double c) { return 42.0 / c; }

CurrentResult widder_current(double r_sq, double s_max, double tail_bound,
                             const std::function<double(double)>& integrand)
{
    // Geometrically graded panels toward s = 0: the integrand can decay on a
    // scale much shorter than s_max (e.g. e^{-(4 nbar + c)s}), and a single
    // coarse panel would miss the spike without raising the error estimate.
    SpecfunResult integral{};
    bool converged = true;
    double lo = 0.0, hi = s_max * 0x1.0p-48;
    for (int k = 0; k <= 48; ++k) {
        try {
            auto r = integrate_adaptive(integrand, lo, hi, 2e-15, 1e-13, 4000);
            integral.value += r.value;
            integral.est_abs_error += r.est_abs_error;
        } catch (const QuadratureError& e) {
            integral.value += e.partial_value;
            integral.est_abs_error += e.partial_error;
            converged = false;
        }
        lo = hi;
        hi = (k == 47) ? s_max : 2.0 * hi;
    }
    CurrentResult out;
    out.value = 0.5 * (1.0 - r_sq * integral.value);
    out.method = CurrentMethod::quadrature;
    out.est_error = 0.5 * r_sq * (integral.est_abs_error + tail_bound);
    if (!converged)
        throw std::runtime_error("widder_current: quadrature refinement budget exceeded");
    return out;
}

}  // namespace

CurrentResult subpoisson_current(double lambda, double r_sq)
{
    if (!(lambda >= 0.0))
        throw std::domain_error("subpoisson_current: requires lambda >= 0");
    if (!(r_sq > 0.0))
        throw std::domain_error("subpoisson_current: requires r_sq > 0");
    if (lambda == 0.0) return {0.0, CurrentMethod::quadrature, 0.0};
    const double log_c0_lambda = bessel_clifford_c0_log(lambda);
    const double inv_c0 = std::exp(-log_c0_lambda);
    auto g = [&](double s) {
        double arg = lambda * (1.0 - 4.0 * s);
        if (arg >= 0.0)
            return std::exp(bessel_clifford_c0_log(arg) - log_c0_lambda - r_sq * s);
        return bessel_clifford_c0(arg) * inv_c0 * std::exp(-r_sq * s);
    };
    // keep the C0 argument inside its admissible range
    double s_max = tail_cutoff(r_sq);
    double s_cap = 0.25 * (1e6 / lambda + 1.0);
    double tail = 0.0;
    if (s_cap < s_max) {
        s_max = s_cap;
        tail = std::exp(-r_sq * s_max) / r_sq;
    }
    return widder_current(r_sq, s_max, tail, g);
}

CurrentResult generic_current(const PhotonStatistics& stat, double r_sq)
{
    if (!(r_sq > 0.0))
        throw std::domain_error("generic_current: requires r_sq > 0");
    if (stat.kind() == StatKind::sub_poisson)
        return subpoisson_current(stat.param(), r_sq);

    double s_max = tail_cutoff(r_sq);
    std::function<double(double)> g;
    switch (stat.kind()) {
    case StatKind::poisson: {
        double nbar = stat.param();
        g = [nbar, r_sq](double s) { return std::exp(-(4.0 * nbar + r_sq) * s); };
        break;
    }
    case StatKind::thermal: {
        double nbar = stat.param();
        g = [nbar, r_sq](double s) {
            return std::exp(-r_sq * s) / (1.0 + 4.0 * nbar * s);
        };
        break;
    }
    case StatKind::custom: {
        const auto& p = stat.probs();
        g = [&p, r_sq](double s) {
            double t = 1.0 - 4.0 * s, acc = 0.0;
            for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + p[i];
            return acc * std::exp(-r_sq * s);
        };
        // |G| can grow like |4s|^N for a degree-N distribution: push the
        // cutoff past the integrand's peak at s = N/c until the tail is
        // down by e^{-42} relative to it.
        double deg = (double)p.size() - 1.0;
        if (deg > 0.0) {
            double s = (deg + 42.0) / r_sq;
            for (int it = 0; it < 64; ++it)
                s = (deg - deg * std::log(4.0 * deg / r_sq) + 42.0
                     + deg * std::log(4.0 * s)) / r_sq;
            s_max = std::max(s_max, s);
        }
        break;
    }
    default:
        throw std::logic_error("generic_current: unreachable");
    }
    return widder_current(r_sq, s_max, 0.0, g);
}

double fock_current(long n, double r_sq)
{
    if (n < 0) throw std::domain_error("fock_current: requires n >= 0");
    if (!(r_sq > 0.0)) throw std::domain_error("fock_current: requires r_sq > 0");
    const long double c = r_sq;
    const long double a = c / 4.0L;
    // F_n(c) = (1/4) e^{-c/4} [ (-1)^n n! (4/c)^{n+1} + sum_k a^k/(k!(n+k+1)) ]
    long double neg_mag = std::exp((long double)std::lgamma((double)n + 1.0)
                                   + (n + 1.0L) * std::log(4.0L / c));
    long double neg = (n % 2 == 0 ? neg_mag : -neg_mag);
    long double sum = 0.0L, term = 1.0L;
    for (long k = 0; k < 100000; ++k) {
        long double add = term / (long double)(n + k + 1);
        sum += add;
        if (add < 1e-25L * (std::fabs((double)sum) + 1.0L) && k > 4) break;
        term *= a / (long double)(k + 1);
    }
    long double f = 0.25L * std::exp(-(double)a) * (neg + sum);
    return 0.5 * (1.0 - (double)(c * f));
}

double fock_integral_recursion(long n, double r_sq)
{
    if (n < 0) throw std::domain_error("fock_integral_recursion: requires n >= 0");
    double f = 1.0 / r_sq;
    for (long k = 1; k <= n; ++k) f = (1.0 - 4.0 * k * f) / r_sq;
    return f;
}

double weak_intensity_current(const PhotonStatistics& stat, double r_sq)
{
    if (!(r_sq > 0.0))
        throw std::domain_error("weak_intensity_current: requires r_sq > 0");
    return 2.0 * stat.moments().mean / r_sq;
}

}  // namespace photoel
