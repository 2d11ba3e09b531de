// Self-contained special functions: exponential integral Ei for negative
// arguments, modified Bessel functions I0/I1, and the Bessel-Clifford
// entire function C0(x) = sum_n x^n/(n!)^2 including its oscillatory
// continuation to negative arguments.

#pragma once

#include <stdexcept>

namespace photoel {

struct SpecfunResult {
    double value = 0.0;
    double est_abs_error = 0.0;
};

/// Ei(x) for x < 0, relative accuracy ~1e-13.
double exp_integral_ei(double x);

/// E1(x) = -Ei(-x) for x > 0.
double exp_integral_e1(double x);

/// e^x E1(x) for x > 0; finite for arbitrarily large x.
double exp_integral_e1_scaled(double x);

/// I0(x), I1(x) for x >= 0. Throws std::overflow_error once e^x is not
/// representable; use the scaled variants there.
double bessel_i0(double x);
double bessel_i1(double x);

/// e^{-x} I0(x), e^{-x} I1(x); finite for all x >= 0.
double bessel_i0_scaled(double x);
double bessel_i1_scaled(double x);

struct ScaledBessel {
    double value;   // I_n(x), or e^{-x} I_n(x) when scaled
    bool scaled;    // true iff e^x would overflow
};

/// I_order(x) with automatic overflow fallback to the scaled value.
ScaledBessel bessel_i(int order, double x);

/// C0(x) = sum_{n>=0} x^n/(n!)^2.  Equals I0(2 sqrt x) for x >= 0 and
/// J0(2 sqrt|x|) for x < 0.  Admissible range |x| <= 1e6.
double bessel_clifford_c0(double x);

/// ln C0(x) for x >= 0; never overflows within the admissible range.
double bessel_clifford_c0_log(double x);

}  // namespace photoel
