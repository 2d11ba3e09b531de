// Steady-state photoelectric currents of the two-level converter, in units
// of the tunneling rate: the per-branch coherent-state current, its full
// finite-kappa/lead-occupation generalization, and the closed-form or
// quadrature currents for Poisson, thermal, sub-Poisson and custom photon
// statistics.

#pragma once

#include "photoel/photon_stats.hpp"

namespace photoel {

/// Dimensionless converter rates.  r_sq is the square of the ratio
/// gamma/|xi0| (tunneling rate over single-photon coupling strength).
struct ConverterParams {
    double gamma_a = 1.0;
    double gamma_b = 1.0;
    double kappa = 0.0;
    double nbar_a = 0.0;
    double nbar_b = 1.0;
    double r_sq = 1.5;

    void validate() const;
    /// gamma_a == gamma_b, kappa == 0, nbar_a == 0, nbar_b == 1.
    bool simplified_regime() const;
};

enum class CurrentMethod { closed_form, quadrature, monte_carlo, ode_oracle, fock_sum };

struct CurrentResult {
    double value = 0.0;  // J / gamma
    CurrentMethod method = CurrentMethod::closed_form;
    double est_error = 0.0;
};

const char* to_string(CurrentMethod m);

/// Coherent-branch current J(|alpha|^2)/gamma = 2x/(4x + r_sq).
double branch_current(double x, double r_sq);

/// Full steady current J_R/gamma_ref including kappa and lead occupations;
/// reduces exactly to branch_current in the simplified regime.
double full_branch_current(const ConverterParams& p, double x, double gamma_ref);

/// Thermal-input current (1/2)[1 + (c/4n) e^{c/4n} Ei(-c/4n)], c = r_sq.
double thermal_current(double nbar, double r_sq);

/// Sub-Poisson-input current by the semi-infinite Widder-transform integral.
CurrentResult subpoisson_current(double lambda, double r_sq);

/// Generic Fock-diagonal current (1/2)[1 - c Int_0^inf e^{-cs} G(1-4s) ds].
CurrentResult generic_current(const PhotonStatistics& stat, double r_sq);

/// Pure Fock-state current j_n = (1/2)[1 - c F_n(c)] via the stable
/// incomplete-gamma split of F_n(c) = Int_0^inf e^{-cs}(1-4s)^n ds.
double fock_current(long n, double r_sq);

/// F_n by forward recursion F_n = (1 - 4 n F_{n-1})/c; unstable for
/// 4n > r_sq, kept only as a small-n cross-check oracle.
double fock_integral_recursion(long n, double r_sq);

/// Statistics-independent weak-intensity law (2/r_sq) nbar.
double weak_intensity_current(const PhotonStatistics& stat, double r_sq);

}  // namespace photoel
