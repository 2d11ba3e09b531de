#include "photoel/lindblad.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace photoel {

namespace {

double xi0_of(const ConverterParams& p, double gamma_ref)
{
    return gamma_ref / std::sqrt(p.r_sq);
}

Complex alpha_of(const BranchAmplitude& a)
{
    return std::polar(std::sqrt(a.magnitude_sq), a.phase);
}

}  // namespace

ObservableState eom_rhs(const ObservableState& s, const ConverterParams& p,
                        const BranchAmplitude& alpha, double gamma_ref, double detuning)
{
    const double xi0 = xi0_of(p, gamma_ref);
    const Complex xa = xi0 * alpha_of(alpha);
    const double half_width = 0.5 * (p.gamma_a + p.gamma_b + p.kappa);
    const Complex drive = xa * s.tau_plus + std::conj(xa) * s.tau_minus;

    ObservableState d;
    d.n_a = drive.real()
          - p.gamma_a * ((1.0 - p.nbar_a) * s.n_a - p.nbar_a * (1.0 - s.n_a))
          - p.kappa * s.n_a;
    d.n_b = -drive.real()
          - p.gamma_b * ((1.0 - p.nbar_b) * s.n_b - p.nbar_b * (1.0 - s.n_b))
          + p.kappa * s.n_a;
    d.tau_plus = -std::conj(xa) * (s.n_a - s.n_b)
               + (Complex(0.0, detuning) - half_width) * s.tau_plus;
    d.tau_minus = -xa * (s.n_a - s.n_b)
                + (Complex(0.0, -detuning) - half_width) * s.tau_minus;
    return d;
}

namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;

Vec6 pack(const ObservableState& s)
{
    Vec6 v;
    v << s.n_a, s.n_b, s.tau_plus.real(), s.tau_plus.imag(),
         s.tau_minus.real(), s.tau_minus.imag();
    return v;
}

ObservableState unpack(const Vec6& v)
{
    return {v[0], v[1], Complex(v[2], v[3]), Complex(v[4], v[5])};
}

}  // namespace

ObservableState integrate_to_steady(const ConverterParams& p,
                                    const BranchAmplitude& alpha, double gamma_ref,
                                    double tol)
{
    p.validate();
    if (!(tol > 0.0)) throw std::domain_error("integrate_to_steady: tol must be > 0");
    if (p.gamma_a + p.gamma_b + p.kappa <= 0.0)
        throw std::runtime_error("integrate_to_steady: non-dissipative parameters, no steady state");

    auto rhs = [&](const Vec6& v) {
        return pack(eom_rhs(unpack(v), p, alpha, gamma_ref));
    };

    // Dormand-Prince 5(4) embedded pair.
    static const double A[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double B5[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double B4[7] = {5179.0 / 57600, 0.0, 7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    const double rate_scale = std::max({p.gamma_a, p.gamma_b, p.kappa,
                                        xi0_of(p, gamma_ref) * std::sqrt(alpha.magnitude_sq)});
    double h = 0.01 / rate_scale;
    Vec6 y = Vec6::Zero();
    y[0] = p.nbar_a;
    y[1] = p.nbar_b;

    // numeric fixed point sits O(step_rtol) from the true one: keep the step
    // control two orders below the detection threshold
    const double step_rtol = std::min(1e-10, 0.01 * tol);
    const double step_atol = 0.01 * step_rtol;
    Vec6 k[7];
    k[0] = rhs(y);
    for (long step = 0; step < 5000000L; ++step) {
        // steady-state detection on the RHS norm, not the state difference
        double rhs_norm = k[0].lpNorm<Eigen::Infinity>();
        double state_norm = y.lpNorm<Eigen::Infinity>();
        if (rhs_norm < tol * rate_scale * std::max(state_norm, 1.0))
            return unpack(y);

        for (int i = 1; i < 7; ++i) {
            Vec6 yi = y;
            for (int j = 0; j < i; ++j) yi += h * A[i][j] * k[j];
            k[i] = rhs(yi);
        }
        Vec6 y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            y5 += h * B5[i] * k[i];
            y4 += h * B4[i] * k[i];
        }
        double err = 0.0;
        for (int i = 0; i < 6; ++i) {
            double sc = step_atol + step_rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            err = std::max(err, std::fabs(y5[i] - y4[i]) / sc);
        }
        if (err <= 1.0) {
            y = y5;
            k[0] = k[6];  // FSAL
        } else {
            k[0] = rhs(y);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::min(5.0, std::max(0.2, fac));
    }
    throw std::runtime_error("integrate_to_steady: step budget exceeded");
}

ObservableState analytic_steady(const ConverterParams& p,
                                const BranchAmplitude& alpha, double gamma_ref)
{
    p.validate();
    const double xi0 = xi0_of(p, gamma_ref);
    const double x = alpha.magnitude_sq;
    const double xs = x * xi0 * xi0;
    const double gsum = p.gamma_a + p.gamma_b + p.kappa;
    const double den = 4.0 * xs * (p.gamma_a + p.gamma_b)
                     + p.gamma_b * (p.gamma_a + p.kappa) * gsum;
    if (!(den > 0.0))
        throw std::domain_error("analytic_steady: degenerate denominator");

    ObservableState s;
    s.n_a = (4.0 * xs * (p.gamma_a * p.nbar_a + p.gamma_b * p.nbar_b)
             + p.gamma_a * p.gamma_b * gsum * p.nbar_a) / den;
    s.n_b = (4.0 * xs * (p.gamma_a * p.nbar_a + p.gamma_b * p.nbar_b)
             + gsum * (p.kappa * p.gamma_a * p.nbar_a
                       + (p.kappa + p.gamma_a) * p.gamma_b * p.nbar_b)) / den;
    const Complex xa_conj = std::conj(xi0 * alpha_of(alpha));
    s.tau_plus = 2.0 * xa_conj
               * (p.gamma_a * p.gamma_b * (p.nbar_b - p.nbar_a)
                  + p.kappa * (p.gamma_a * p.nbar_a + p.gamma_b * p.nbar_b)) / den;
    s.tau_minus = std::conj(s.tau_plus);
    return s;
}

double current_from_steady(const ObservableState& s, const ConverterParams& p,
                           double gamma_ref)
{
    return p.gamma_a * ((1.0 - p.nbar_a) * s.n_a - p.nbar_a * (1.0 - s.n_a)) / gamma_ref;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

Eigen::MatrixXcd lindblad_steady(const LindbladSpec& spec, double tol)
{
    const Eigen::Index n = spec.hamiltonian.rows();
    if (n != spec.hamiltonian.cols() || n < 2)
        throw std::domain_error("lindblad_steady: malformed Hamiltonian");
    for (const auto& j : spec.jumps)
        if (j.rows() != n || j.cols() != n)
            throw std::domain_error("lindblad_steady: jump operator dimension mismatch");

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const Complex im(0.0, 1.0);
    // column-stacking vec: vec(A rho B) = (B^T (x) A) vec(rho)
    Eigen::MatrixXcd liou = -im * (kron(id, spec.hamiltonian)
                                   - kron(spec.hamiltonian.transpose(), id));
    for (const auto& jop : spec.jumps) {
        Eigen::MatrixXcd jj = jop.adjoint() * jop;
        liou += kron(jop.conjugate(), jop)
              - 0.5 * kron(id, jj) - 0.5 * kron(jj.transpose(), id);
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(liou, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    if (last >= 1 && sv[last - 1] < tol * std::max(sv[0], 1.0))
        throw std::runtime_error("lindblad_steady: degenerate null space (non-unique steady state)");

    Eigen::VectorXcd v = svd.matrixV().col(last);
    Eigen::MatrixXcd rho(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            rho(i, j) = v(j * n + i);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    Complex tr = rho.trace();
    if (std::abs(tr) < 1e-14)
        throw std::runtime_error("lindblad_steady: traceless null vector");
    return rho / tr;
}

LindbladSpec driven_tls_spec(double rabi, double kappa)
{
    // basis {|g>, |e>}
    Eigen::MatrixXcd sm = Eigen::MatrixXcd::Zero(2, 2);
    sm(0, 1) = 1.0;
    LindbladSpec spec;
    spec.hamiltonian = 0.5 * rabi * (sm + sm.adjoint());
    spec.jumps.push_back(std::sqrt(kappa) * sm);
    return spec;
}

Eigen::MatrixXcd converter_number_a()
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(2, 2) = m(3, 3) = 1.0;
    return m;
}

Eigen::MatrixXcd converter_number_b()
{
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(1, 1) = m(3, 3) = 1.0;
    return m;
}

Eigen::MatrixXcd converter_tau_plus()
{
    // tau+ = a^dag b = |10><01| in the {|00>,|01>,|10>,|11>} basis
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(2, 1) = 1.0;
    return m;
}

LindbladSpec converter_spec(const ConverterParams& p, const BranchAmplitude& alpha,
                            double gamma_ref)
{
    p.validate();
    // mode a: no string (first in the ordering); mode b carries (-1)^{n_a}
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4, 4);
    a(0, 2) = a(1, 3) = 1.0;
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(4, 4);
    b(0, 1) = 1.0;
    b(2, 3) = -1.0;

    const Complex xa = xi0_of(p, gamma_ref) * alpha_of(alpha);
    const Complex im(0.0, 1.0);
    Eigen::MatrixXcd tp = converter_tau_plus();

    LindbladSpec spec;
    spec.hamiltonian = im * xa * tp - im * std::conj(xa) * tp.adjoint();
    spec.jumps.push_back(std::sqrt(p.kappa) * tp.adjoint());
    spec.jumps.push_back(std::sqrt(p.gamma_a * p.nbar_a) * a.adjoint());
    spec.jumps.push_back(std::sqrt(p.gamma_a * (1.0 - p.nbar_a)) * a);
    spec.jumps.push_back(std::sqrt(p.gamma_b * p.nbar_b) * b.adjoint());
    spec.jumps.push_back(std::sqrt(p.gamma_b * (1.0 - p.nbar_b)) * b);
    return spec;
}

ObservableState observables_from_density(const Eigen::MatrixXcd& rho)
{
    ObservableState s;
    s.n_a = (rho * converter_number_a()).trace().real();
    s.n_b = (rho * converter_number_b()).trace().real();
    s.tau_plus = (rho * converter_tau_plus()).trace();
    s.tau_minus = std::conj(s.tau_plus);
    return s;
}

}  // namespace photoel
