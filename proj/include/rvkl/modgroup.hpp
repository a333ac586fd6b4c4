#pragma once
// SL2(Z) matrices, congruence subgroup membership, the theta multiplier
// nu_Theta on Gamma_Theta (exact mu_8 values), the weight-k cocycle, and
// enumeration of the Stoller coset sets B and B~ inside Gamma(2)/{±1}.

#include <complex>
#include <cstdint>
#include <vector>

#include "rvkl/arith.hpp"

namespace rvkl {

struct Mat2Z {
    int64_t a = 1, b = 0, c = 0, d = 1;

    int64_t det() const { return a * d - b * c; }
    friend Mat2Z operator*(const Mat2Z& x, const Mat2Z& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    Mat2Z inverse() const { return {d, -b, -c, a}; }  // valid for det = 1
    Mat2Z neg() const { return {-a, -b, -c, -d}; }
    friend bool operator==(const Mat2Z& x, const Mat2Z& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    std::complex<double> act(std::complex<double> tau) const {
        return (double(a) * tau + double(b)) / (double(c) * tau + double(d));
    }
};

inline constexpr Mat2Z kIdentity{1, 0, 0, 1};
inline constexpr Mat2Z kT{1, 1, 0, 1};
inline constexpr Mat2Z kS{0, -1, 1, 0};

enum class Group { SL2Z, GammaTheta, Gamma2, Gamma0_4, Gamma0_N };

struct NotInGroup : std::domain_error {
    using std::domain_error::domain_error;
};

bool membership(const Mat2Z& g, Group group, int64_t level = 0);

// nu_Theta(gamma) for gamma in Gamma_Theta, as an exact eighth root.
// c > 0 uses the two-case closed form; c = 0 is ±(translation); c < 0 goes
// through nu(-gamma) = i nu(gamma).
EighthRoot nu_theta_cap(const Mat2Z& g);

// Same value from the alternative closed form (i^{(d-1)/2}(c/|d|) for even c,
// e(-c/8)(d/c) for odd c); kept as an independent route for tests.
EighthRoot nu_theta_cap_alt(const Mat2Z& g);

// j(gamma, tau) = c tau + d.
std::complex<double> aut_factor(const Mat2Z& g, std::complex<double> tau);

// tau^k with arg in (-pi, pi]; k = k2/2 where k2 = 2k is an integer.
std::complex<double> half_power(std::complex<double> z, int k2);

// w_k(g1, g2) evaluated at a sample point tau in H (value is tau-independent).
std::complex<double> cocycle_w(int k2, const Mat2Z& g1, const Mat2Z& g2,
                               std::complex<double> tau);

// A word B^{f1} A^{e1} ... B^{fm} A^{em} in A = [T^2], B = [S T^2 S],
// all exponents nonzero except possibly the last A one.
struct CosetWord {
    std::vector<std::pair<int, int>> powers;  // (f_i, e_i) pairs, e_m may be 0
    Mat2Z matrix;                             // representative with c > 0
};

// All elements of the coset set B with |c| <= max_c and |d| <= max_d,
// one representative per class mod ±1, normalized to c > 0.
std::vector<CosetWord> enumerate_coset_B(int64_t max_c, int64_t max_d);

// B~ = B·[S] ∪ {[S]} restricted the same way (bounds apply to the result's
// bottom row).
std::vector<Mat2Z> enumerate_coset_B_tilde(int64_t max_c, int64_t max_d);

}  // namespace rvkl
