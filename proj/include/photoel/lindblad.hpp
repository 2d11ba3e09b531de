// Independent dynamical oracles for the converter: the closed observable
// equations of motion (adaptive Runge-Kutta to steady state, plus their
// printed closed-form fixed point) and the full vectorized-Liouvillian
// density-matrix steady state for small Hilbert spaces.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "photoel/currents.hpp"

namespace photoel {

using Complex = std::complex<double>;

/// The closed observable set (<N_a>, <N_b>, <tau+>, <tau->).
struct ObservableState {
    double n_a = 0.0;
    double n_b = 0.0;
    Complex tau_plus{0.0, 0.0};
    Complex tau_minus{0.0, 0.0};
};

/// Time derivative of the observable set under the converter master
/// equation, resonant driving; detuning adds +/- i*delta on tau+/-.
ObservableState eom_rhs(const ObservableState& state, const ConverterParams& params,
                        const BranchAmplitude& alpha, double gamma_ref,
                        double detuning = 0.0);

/// Adaptive RK45 integration until ||d/dt state|| < tol * max(||state||, 1).
ObservableState integrate_to_steady(const ConverterParams& params,
                                    const BranchAmplitude& alpha, double gamma_ref,
                                    double tol = 1e-10);

/// The closed-form steady state of the observable equations of motion.
ObservableState analytic_steady(const ConverterParams& params,
                                const BranchAmplitude& alpha, double gamma_ref);

/// J_R/gamma_ref evaluated from a steady observable state.
double current_from_steady(const ObservableState& s, const ConverterParams& params,
                           double gamma_ref);

/// Hamiltonian + jump operators defining one Lindblad generator.
struct LindbladSpec {
    Eigen::MatrixXcd hamiltonian;
    std::vector<Eigen::MatrixXcd> jumps;
};

/// Steady density matrix via the null space of the vectorized Liouvillian;
/// throws if the null space is degenerate.  tol bounds the acceptable
/// second-smallest singular value relative to the spectrum.
Eigen::MatrixXcd lindblad_steady(const LindbladSpec& spec, double tol = 1e-8);

/// Resonantly driven-damped two-level engine: H = (rabi/2)(s+ + s-),
/// jump sqrt(kappa) s-.
LindbladSpec driven_tls_spec(double rabi, double kappa);

/// The 4-dimensional converter Liouvillian in the occupation basis
/// {|00>, |01>, |10>, |11>} (|n_a n_b>), Jordan-Wigner string on mode b.
LindbladSpec converter_spec(const ConverterParams& params, const BranchAmplitude& alpha,
                            double gamma_ref);

/// Occupation / coherence operators matching converter_spec's basis.
Eigen::MatrixXcd converter_number_a();
Eigen::MatrixXcd converter_number_b();
Eigen::MatrixXcd converter_tau_plus();

/// Observable set extracted from a 4-dim converter density matrix.
ObservableState observables_from_density(const Eigen::MatrixXcd& rho);

}  // namespace photoel
