#include "rvkl/special.hpp"

#include <cmath>
#include <vector>

namespace rvkl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// minimal double-double arithmetic (fma-based products)
struct DD {
    double hi = 0.0, lo = 0.0;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    DD t = two_sum(s.hi, s.lo);
    return t;
}

DD dd_mul(DD a, DD b) {
    double p = a.hi * b.hi;
    double e = std::fma(a.hi, b.hi, -p);
    e += a.hi * b.lo + a.lo * b.hi;
    DD t = two_sum(p, e);
    return t;
}

DD dd_div_d(DD a, double b) {
    double q1 = a.hi / b;
    double r = std::fma(-q1, b, a.hi) + a.lo;
    double q2 = r / b;
    return two_sum(q1, q2);
}

// power series sum_{j>=0} (-1)^j (x/2)^{2j+nu} / (j! (j+nu)!) in double-double
double j_series(int nu, double x) {
    DD x2 = {x * 0.5, 0.0};
    DD q = dd_mul(x2, x2);  // (x/2)^2
    DD term = {1.0, 0.0};
    for (int j = 1; j <= nu; ++j) term = dd_div_d(term, (double)j);
    for (int j = 0; j < nu; ++j) term = dd_mul(term, x2);  // (x/2)^nu / nu!
    DD sum = term;
    for (int j = 1; j < 400; ++j) {
        term = dd_mul(term, q);
        term = dd_div_d(term, -(double)j * (double)(j + nu));
        sum = dd_add(sum, term);
        if (std::abs(term.hi) < 1e-20 * std::abs(sum.hi) + 1e-300) break;
    }
    return sum.hi + sum.lo;
}

// Hankel asymptotic expansion, adequate for x >= 16
double j_hankel(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double x8 = 8.0 * x;
    for (int k = 1; k < 40; ++k) {
        double factor = (mu - (double)(2 * k - 1) * (2 * k - 1)) / ((double)k * x8);
        double next = term * factor;
        if (std::abs(next) >= std::abs(term)) break;  // divergent tail reached
        term = next;
        if (k % 2 == 1)
            q += (k % 4 == 1) ? term : -term;
        else
            p += (k % 4 == 2) ? -term : term;
        if (std::abs(term) < 1e-18) break;
    }
    double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(int nu, double x) {
    if (nu < 0 || nu > 8) throw DomainError("bessel_j: order out of range");
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    return x < 16.0 ? j_series(nu, x) : j_hankel(nu, x);
}

double bessel_j_half(double x) {
    if (x < 0.0) throw DomainError("bessel_j_half: negative argument");
    if (x == 0.0) return 0.0;
    return std::sqrt(2.0 / (kPi * x)) * std::sin(x);
}

double gamma_upper_mhalf(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_upper_mhalf: requires x > 0");
    if (x > 700.0) return 0.0;  // below 1e-300 either way
    double rx = std::sqrt(x);
    return 2.0 * (std::exp(-x) / rx - std::sqrt(kPi) * std::erfc(rx));
}

double sinc_pi(double t) {
    if (t == 0.0) return 1.0;
    double a = kPi * t;
    return std::sin(a) / a;
}

double sin_over_r_sinh(double rsq, double r) {
    if (r == 0.0) return 1.0;
    if (r < 1e-4) {
        // sin(pi r^2) / (r sinh(pi r)) = (1 - (pi rsq)^2/6 + ...) * pi rsq
        //                              / (pi r^2 (1 + (pi r)^2/6 + ...))
        double a = kPi * rsq, b = kPi * r;
        return (rsq / (r * r)) * (1.0 - a * a / 6.0) / (1.0 + b * b / 6.0);
    }
    return std::sin(kPi * rsq) / (r * std::sinh(kPi * r));
}

SincFactors sinc_factors(double rsq, double r) {
    return {sinc_pi(rsq), sin_over_r_sinh(rsq, r)};
}

std::complex<double> integrate_tanh_sinh(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, int max_level) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double pi2 = 0.5 * kPi;

    auto node = [&](double t, double& x, double& w) {
        double sh = std::sinh(t);
        double u = std::tanh(pi2 * sh);
        x = mid + half * u;
        double ch = std::cosh(pi2 * sh);
        w = half * pi2 * std::cosh(t) / (ch * ch);
    };

    const double tmax = 4.0;
    double h = 1.0;
    double x, w;
    node(0.0, x, w);
    std::complex<double> sum = f(x) * w;
    for (double t = h; t <= tmax; t += h) {
        node(t, x, w);
        if (w > 0.0 && x > a && x < b) sum += f(x) * w;
        node(-t, x, w);
        if (w > 0.0 && x > a && x < b) sum += f(x) * w;
    }
    std::complex<double> prev = sum * h;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        std::complex<double> add{0.0, 0.0};
        for (double t = h; t <= tmax; t += 2.0 * h) {
            node(t, x, w);
            if (w > 0.0 && x > a && x < b) add += f(x) * w;
            node(-t, x, w);
            if (w > 0.0 && x > a && x < b) add += f(x) * w;
        }
        std::complex<double> cur = prev * 0.5 + add * h;
        if (level >= 3 && std::abs(cur - prev) < abs_tol) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace rvkl
