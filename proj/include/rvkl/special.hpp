#pragma once
// Real special functions for the closed-form basis pieces: J-Bessel at small
// integer order, J_{1/2}, the incomplete gamma value Gamma(-1/2, x), and the
// removable-singularity sinc factors.  Plus a small tanh-sinh quadrature used
// by the contour-integral identity checks.
//
// Binary64 interfaces; J_n uses a double-double power series below the
// Hankel switch point so the overlap region keeps ~1e-13 relative accuracy.

#include <complex>
#include <functional>
#include <stdexcept>

namespace rvkl {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// J_nu(x) for integer nu in [0, 8], x >= 0.
double bessel_j(int nu, double x);
inline double bessel_j1(double x) { return bessel_j(1, x); }

// J_{1/2}(x) = sqrt(2/(pi x)) sin x, continuous at 0.
double bessel_j_half(double x);

// Gamma(-1/2, x) = 2(e^{-x} x^{-1/2} - sqrt(pi) erfc(sqrt(x))), x > 0.
double gamma_upper_mhalf(double x);

// sin(pi t)/(pi t) with the t = 0 limit.
double sinc_pi(double t);

// sin(pi rsq)/(r sinh(pi r)) with the r -> 0 limit 1; callers pass rsq = r^2.
double sin_over_r_sinh(double rsq, double r);

struct SincFactors {
    double dim4;  // sin(pi rsq)/(pi rsq)
    double dim3;  // sin(pi rsq)/(r sinh(pi r))
};
SincFactors sinc_factors(double rsq, double r);

// tanh-sinh quadrature of f over the finite interval [a, b]; handles
// integrable endpoint singularities.  abs_tol is a stopping target for the
// level-to-level difference, not a rigorous bound.
std::complex<double> integrate_tanh_sinh(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol = 1e-12, int max_level = 12);

}  // namespace rvkl
