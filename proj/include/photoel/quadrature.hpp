// Adaptive Gauss-Kronrod (7-15) quadrature on a finite interval.

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "photoel/specfun.hpp"

namespace photoel {

namespace detail {

// QUADPACK qk15 abscissae/weights on [-1, 1].
inline constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
SpecfunResult gk15(const F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double kron = kKronrodW[7] * fc;
    double gauss = kGaussW[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double fa = f(c - h * kKronrodX[j]);
        double fb = f(c + h * kKronrodX[j]);
        kron += kKronrodW[j] * (fa + fb);
        if (j % 2 == 1) gauss += kGaussW[j / 2] * (fa + fb);
    }
    double err = std::fabs(h) * std::fabs(kron - gauss);
    return {h * kron, err};
}

}  // namespace detail

struct QuadratureError : std::runtime_error {
    double partial_value;
    double partial_error;
    QuadratureError(double v, double e)
        : std::runtime_error("adaptive quadrature did not converge"),
          partial_value(v), partial_error(e) {}
};

/// Adaptive bisection with GK15 panels; absolute/relative target tolerances.
/// Throws QuadratureError (carrying the partial result) when the interval
/// budget is exhausted before the tolerance is met.
template <class F>
SpecfunResult integrate_adaptive(const F& f, double a, double b,
                                 double abs_tol = 1e-12, double rel_tol = 1e-11,
                                 std::size_t max_intervals = 20000)
{
    struct Panel { double a, b, value, error; };
    std::vector<Panel> panels;
    auto push = [&](double lo, double hi) {
        auto r = detail::gk15(f, lo, hi);
        panels.push_back({lo, hi, r.value, r.est_abs_error});
    };
    push(a, b);
    while (panels.size() < max_intervals) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (err <= abs_tol + rel_tol * std::fabs(total))
            return {total, err};
        Panel w = panels[worst];
        double mid = 0.5 * (w.a + w.b);
        if (mid <= w.a || mid >= w.b) break;  // interval at roundoff limit
        panels[worst] = panels.back();
        panels.pop_back();
        push(w.a, mid);
        push(mid, w.b);
    }
    double total = 0.0, err = 0.0;
    for (const auto& p : panels) { total += p.value; err += p.error; }
    if (err <= abs_tol + rel_tol * std::fabs(total)) return {total, err};
    throw QuadratureError(total, err);
}

}  // namespace photoel
