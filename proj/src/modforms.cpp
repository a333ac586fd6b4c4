#include "rvkl/modforms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "rvkl/modgroup.hpp"
#include "rvkl/special.hpp"

namespace rvkl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const Complex kI{0.0, 1.0};

double im_or_throw(Complex tau, const char* who) {
    double y = tau.imag();
    if (!(y > 0.0)) throw NotUpperHalfPlane(std::string(who) + ": Im tau must be positive");
    return y;
}

}  // namespace

QSeries QSeries::zero(bool halfperiod, int64_t n_min, int64_t order) {
    QSeries s;
    s.halfperiod = halfperiod;
    s.n_min = n_min;
    s.order = order;
    s.coef.assign((size_t)(order - n_min + 1), Complex{0.0, 0.0});
    return s;
}

QSeries QSeries::operator+(const QSeries& o) const {
    if (halfperiod != o.halfperiod)
        throw std::invalid_argument("QSeries: mixed expansion variables");
    QSeries s = zero(halfperiod, std::min(n_min, o.n_min), std::min(order, o.order));
    for (int64_t n = s.n_min; n <= s.order; ++n) s.set(n, coeff(n) + o.coeff(n));
    return s;
}

QSeries QSeries::operator*(const QSeries& o) const {
    if (halfperiod != o.halfperiod)
        throw std::invalid_argument("QSeries: mixed expansion variables");
    QSeries s = zero(halfperiod, n_min + o.n_min, std::min(order, o.order));
    for (int64_t i = n_min; i <= order; ++i) {
        if (coeff(i) == 0.0) continue;
        for (int64_t j = o.n_min; j <= o.order; ++j) {
            int64_t n = i + j;
            if (n < s.n_min || n > s.order) continue;
            s.set(n, s.coeff(n) + coeff(i) * o.coeff(j));
        }
    }
    return s;
}

QSeries QSeries::scaled(Complex v) const {
    QSeries s = *this;
    for (auto& c : s.coef) c *= v;
    return s;
}

Complex QSeries::eval(Complex tau) const {
    im_or_throw(tau, "QSeries::eval");
    Complex sum{0.0, 0.0};
    double scale = halfperiod ? 1.0 : 2.0;
    for (int64_t n = order; n >= n_min; --n)  // small terms first
        sum += coeff(n) * std::exp(kI * (kPi * scale * (double)n) * tau);
    return sum;
}

namespace {

// smallest N with e^{-pi y N} below eps
int64_t order_for_tail(double y, double eps) {
    return (int64_t)std::ceil(-std::log(eps) / (kPi * y)) + 2;
}

}  // namespace

PointEval theta_cap(Complex tau, int64_t order) {
    double y = im_or_throw(tau, "theta_cap");
    if (order <= 0) order = order_for_tail(y, 1e-18);
    int64_t N = (int64_t)std::ceil(std::sqrt((double)order));
    Complex q1 = std::exp(kI * kPi * tau);
    Complex sum{1.0, 0.0};
    for (int64_t n = N; n >= 1; --n) sum += 2.0 * std::pow(q1, (double)(n * n));
    double t = std::exp(-kPi * y * (double)((N + 1) * (N + 1)));
    double tail = 2.0 * t / (1.0 - std::exp(-kPi * y * (double)(2 * N + 3)));
    return {sum, tail};
}

PointEval theta_jacobi(Complex tau, int64_t order) { return theta_cap(2.0 * tau, order); }

QSeries theta_cap_series(int64_t order) {
    QSeries s = QSeries::zero(true, 0, order);
    for (int64_t n = 0; n * n <= order; ++n) s.set(n * n, n == 0 ? 1.0 : 2.0);
    return s;
}

std::vector<int64_t> theta_coeffs_int(int64_t order) {
    std::vector<int64_t> c((size_t)order + 1, 0);
    for (int64_t n = 0; n * n <= order; ++n) c[(size_t)(n * n)] = n == 0 ? 1 : 2;
    return c;
}

PointEval eisenstein_e2(Complex tau, int64_t order) {
    double y = im_or_throw(tau, "eisenstein_e2");
    if (order <= 0) order = order_for_tail(2.0 * y, 1e-18) + 8;
    Complex q = std::exp(2.0 * kI * kPi * tau);
    Complex qn{1.0, 0.0};
    Complex sum{0.0, 0.0};
    for (int64_t n = 1; n <= order; ++n) {
        qn *= q;
        sum += (double)divisor_sum(n, 1) * qn;
    }
    double aq = std::abs(q);
    double t = std::pow(aq, (double)(order + 1));
    double tail = 24.0 * 2.0 * (double)(order + 1) * (double)(order + 1) * t / (1.0 - aq);
    return {1.0 - 24.0 * sum, tail};
}

QSeries eisenstein_e2_series(int64_t order) {
    QSeries s = QSeries::zero(false, 0, order);
    s.set(0, 1.0);
    for (int64_t n = 1; n <= order; ++n) s.set(n, -24.0 * (double)divisor_sum(n, 1));
    return s;
}

std::vector<int64_t> a4_coefficients(int64_t N) {
    std::vector<int64_t> a((size_t)N + 1, 0);
    for (int64_t n = 1; n <= N; ++n) a[(size_t)n] = a4_coefficient(n);
    return a;
}

PointEval script_e2(Complex tau, int64_t order) {
    double y = im_or_throw(tau, "script_e2");
    if (order <= 0) order = order_for_tail(y, 1e-18) + 8;
    Complex q1 = std::exp(kI * kPi * tau);
    Complex qn{1.0, 0.0};
    Complex sum{0.0, 0.0};
    for (int64_t n = 1; n <= order; ++n) {
        qn *= q1;
        sum += (double)a4_coefficient(n) * qn;
    }
    double aq = std::abs(q1);
    double t = std::pow(aq, (double)(order + 1));
    double tail = 24.0 * 4.0 * (double)(order + 1) * (double)(order + 1) * t / (1.0 - aq);
    return {-3.0 / (kPi * y) + 24.0 * sum, tail};
}

PointEval zagier_H(Complex tau, int64_t order) {
    double y = im_or_throw(tau, "zagier_H");
    if (order <= 0) order = order_for_tail(2.0 * y, 1e-19) + 8;
    Complex q = std::exp(2.0 * kI * kPi * tau);
    Complex qn{1.0, 0.0};
    Complex sum{-1.0 / 12.0, 0.0};
    for (int64_t n = 1; n <= order; ++n) {
        qn *= q;
        int64_t h12 = hurwitz12(n);
        if (h12) sum += ((double)h12 / 12.0) * qn;
    }
    // completion: 1/(8 pi sqrt y) + (1/(4 sqrt pi)) sum m Gamma(-1/2, 4 pi m^2 y) q^{-m^2}
    sum += 1.0 / (8.0 * kPi * std::sqrt(y));
    double mock_tail = 0.0;
    for (int64_t m = 1;; ++m) {
        double g = gamma_upper_mhalf(4.0 * kPi * (double)(m * m) * y);
        double mag = (double)m * g * std::exp(2.0 * kPi * (double)(m * m) * y);
        if (mag < 1e-19 || g == 0.0) {
            mock_tail = mag / (4.0 * std::sqrt(kPi));
            break;
        }
        sum += (1.0 / (4.0 * std::sqrt(kPi))) * (double)m * g * std::pow(q, -(double)(m * m));
    }
    double aq = std::abs(q);
    double hol_tail = (double)(order + 1) * std::pow(aq, (double)(order + 1)) / (1.0 - aq);
    return {sum, hol_tail + mock_tail};
}

PointEval h_star(Complex tau, int64_t order) {
    im_or_throw(tau, "h_star");
    PointEval h = zagier_H(0.5 * tau, order);
    PointEval th = theta_cap(tau, order);
    Complex t3 = th.value * th.value * th.value;
    double t3_tail = 3.0 * th.tail_bound * std::norm(th.value);
    return {h.value + t3 / 48.0, h.tail_bound + t3_tail / 48.0};
}

double zagier_theta_identity_residual(Complex tau) {
    im_or_throw(tau, "zagier_theta_identity_residual");
    Complex lhs = zagier_H(tau).value;
    Complex tau2 = -1.0 / (4.0 * tau);
    Complex rhs = half_power(-2.0 * kI * tau, -3) * zagier_H(tau2).value;
    Complex th = theta_cap(2.0 * tau).value;
    return std::abs(lhs + rhs + th * th * th / 24.0);
}

double h_star_antiinvariance_residual(Complex tau) {
    Complex a = h_star(tau).value;
    Complex b = half_power(-kI * tau, -3) * h_star(-1.0 / tau).value;
    return std::abs(a + b);
}

double e2_transform_residual(Complex tau) {
    Complex a = eisenstein_e2(tau).value;
    Complex b = eisenstein_e2(-1.0 / tau).value;
    return std::abs(a - b / (tau * tau) + 12.0 / (2.0 * kPi * kI * tau));
}

double script_e2_antiinvariance_residual(Complex tau) {
    Complex a = script_e2(tau).value;
    Complex z = -kI * tau;
    Complex b = script_e2(-1.0 / tau).value / (z * z);
    return std::abs(a + b);
}

namespace {

// theta(it) for t > 0, using the modular flip below t = 1/2
double theta_it(double t) {
    if (t < 0.5) return theta_it(1.0 / (4.0 * t)) / std::sqrt(2.0 * t);
    double sum = 1.0;
    for (int64_t n = 1;; ++n) {
        double term = 2.0 * std::exp(-2.0 * kPi * (double)(n * n) * t);
        if (term < 1e-19) break;
        sum += term;
    }
    return sum;
}

}  // namespace

double lemma_two_integrals_residual(Complex tau) {
    double y = im_or_throw(tau, "lemma_two_integrals_residual");

    const double T = 6.5;
    Complex body = integrate_tanh_sinh(
        [&](double t) { return theta_it(t) * half_power(tau + kI * t, -3); }, 0.0, T,
        1e-11);
    Complex lhs_int = kI * body + 2.0 * half_power(tau + kI * T, -1);
    Complex lhs = (Complex{1.0, 1.0} / (16.0 * kPi)) * lhs_int;

    double X = 6.0 / std::sqrt(y) + 2.0;
    Complex rhs_int = integrate_tanh_sinh(
        [&](double xi) {
            Complex e2 = std::exp(2.0 * kI * kPi * (2.0 * xi) * tau);
            Complex ratio = (1.0 + e2) / (1.0 - e2);
            return std::exp(2.0 * kI * kPi * (xi * xi) * tau) * ratio * xi;
        },
        0.0, X, 1e-11);
    Complex rhs = half_power(-kI * tau / 8.0, 1) * 2.0 * rhs_int;

    double res = std::abs(lhs - rhs);
    if (!(res < 1e50) || std::isnan(res))
        throw QuadratureNonConvergence("lemma_two_integrals_residual: quadrature failed");
    return res;
}

std::string qseries_export(const QSeries& s) {
    std::string out;
    char buf[96];
    for (int64_t n = s.n_min; n <= s.order; ++n) {
        Complex c = s.coeff(n);
        std::snprintf(buf, sizeof buf, "%lld %.17g %.17g\n", (long long)n, c.real(),
                      c.imag());
        out += buf;
    }
    return out;
}

}  // namespace rvkl
