#pragma once
// Truncated q-series and pointwise evaluation of the classical forms used by
// the interpolation basis: Theta, theta, Theta^3, E_2 and its 2-periodic
// combination, Zagier's weight-3/2 form H and the anti-invariant H*, plus the
// two-contour integral identity behind the theta transformation.
//
// Series in e^{pi i n tau} (period 2) are the canonical representation;
// period-1 expansions carry the flag and embed by index doubling.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "rvkl/arith.hpp"

namespace rvkl {

using Complex = std::complex<double>;

struct NotUpperHalfPlane : std::domain_error {
    using std::domain_error::domain_error;
};

struct QSeries {
    bool halfperiod = true;  // expansion variable e^{pi i tau}; false: e^{2 pi i tau}
    int64_t n_min = 0;
    int64_t order = 0;  // coefficients kept exactly for n in [n_min, order]
    std::vector<Complex> coef;

    Complex coeff(int64_t n) const {
        if (n < n_min || n > order) return 0.0;
        return coef[(size_t)(n - n_min)];
    }
    void set(int64_t n, Complex v) { coef[(size_t)(n - n_min)] = v; }

    static QSeries zero(bool halfperiod, int64_t n_min, int64_t order);
    QSeries operator+(const QSeries& o) const;
    QSeries operator*(const QSeries& o) const;
    QSeries scaled(Complex s) const;

    // holomorphic evaluation sum_n a_n e^{pi i n tau / period-scale}
    Complex eval(Complex tau) const;
};

struct PointEval {
    Complex value;
    double tail_bound = 0.0;
};

// Theta(tau) = sum e^{pi i n^2 tau}
PointEval theta_cap(Complex tau, int64_t order = 0);
QSeries theta_cap_series(int64_t order);

// theta(tau) = Theta(2 tau)
PointEval theta_jacobi(Complex tau, int64_t order = 0);

// integer coefficient stream of Theta (1, 2 at squares) up to order
std::vector<int64_t> theta_coeffs_int(int64_t order);

// E_2(tau) = 1 - 24 sum sigma_1(n) q^n,   q = e^{2 pi i tau}
PointEval eisenstein_e2(Complex tau, int64_t order = 0);
QSeries eisenstein_e2_series(int64_t order);

// script E_2(tau) = -3/(pi y) + E_2((tau+1)/2) - E_2(tau)
//                 = -3/(pi y) + 24 sum A_4(n) e^{pi i n tau}
PointEval script_e2(Complex tau, int64_t order = 0);

// A_4(n) for n = 1..N
std::vector<int64_t> a4_coefficients(int64_t N);

// Zagier's H(tau): holomorphic part sum H(n) q^n - 1/12 plus the
// non-holomorphic completion 1/(8 pi sqrt y) + mock tail.
PointEval zagier_H(Complex tau, int64_t order = 0);

// H*(tau) = H(tau/2) + Theta(tau)^3 / 48
PointEval h_star(Complex tau, int64_t order = 0);

// residual of H(tau) + (2 tau / i)^{-3/2} H(-1/(4 tau)) + Theta(2 tau)^3/24
double zagier_theta_identity_residual(Complex tau);

// residual of H*(tau) + (-i tau)^{-3/2} H*(-1/tau)
double h_star_antiinvariance_residual(Complex tau);

// |LHS - RHS| of the two-contour identity
//   (1+i)/(16 pi) Int_0^{i inf} theta(u) (tau+u)^{-3/2} du
//     = sqrt(tau/(8i)) Int_R e(xi^2 tau) (1+e(2 xi tau))/(1-e(2 xi tau)) xi dxi
struct QuadratureNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
double lemma_two_integrals_residual(Complex tau);

// E_2(tau) - tau^{-2} E_2(-1/tau) + 12/(2 pi i tau), which should vanish
double e2_transform_residual(Complex tau);

// script E_2(tau) + (tau/i)^{-2} script E_2(-1/tau)
double script_e2_antiinvariance_residual(Complex tau);

// line-oriented coefficient export: "n re im" per line
std::string qseries_export(const QSeries& s);

}  // namespace rvkl
