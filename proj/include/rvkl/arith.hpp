#pragma once
// Exact integer / rational number theory used by every other module:
// Kronecker symbols, epsilon_d, divisor sums, r_3(n), Hurwitz class numbers,
// and the usual multiplicative toolbox (mu, phi, valuations, CRT).
//
// Everything here is pure and thread-safe.  The memo tables behind r3() and
// hurwitz12() take a lock only while growing; lookups after warm-up are
// plain reads of an immutable prefix.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rvkl {

using std::int64_t;

// ---------------------------------------------------------------------------
// mu_8: exact eighth roots of unity, stored as the exponent t of e(t/8).
// Products never leave the group, so multiplier bookkeeping stays exact;
// conversion to complex happens once, at a summation boundary.
// ---------------------------------------------------------------------------
struct EighthRoot {
    int exponent = 0;  // value is e(exponent/8), exponent taken mod 8

    constexpr EighthRoot() = default;
    constexpr explicit EighthRoot(int e) : exponent(((e % 8) + 8) % 8) {}

    friend constexpr EighthRoot operator*(EighthRoot a, EighthRoot b) {
        return EighthRoot(a.exponent + b.exponent);
    }
    constexpr EighthRoot inverse() const { return EighthRoot(-exponent); }
    constexpr EighthRoot pow(int k) const { return EighthRoot(exponent * k); }
    friend constexpr bool operator==(EighthRoot a, EighthRoot b) {
        return a.exponent == b.exponent;
    }
    std::complex<double> value() const;
};

// e(t/8) for integer t (any sign).
std::complex<double> cis8(int t);

struct NotCoprime : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotPrime : std::domain_error {
    using std::domain_error::domain_error;
};
struct EvenArgument : std::domain_error {
    using std::domain_error::domain_error;
};

// Kronecker symbol (m/n), totally defined: (m/0) = [|m|=1], (m/-1) = sgn-like
// convention 1 for m >= 0 and -1 for m < 0.
int kronecker(int64_t m, int64_t n);

// epsilon_d = 1 for d = 1 (mod 4), i for d = 3 (mod 4); rejects even d.
EighthRoot epsilon(int64_t d);

// gcd with gcd(0,0) = 0; always nonnegative.
int64_t gcd(int64_t a, int64_t b);

// Extended gcd solve: returns x with a*x = 1 (mod m); throws NotCoprime.
int64_t inv_mod(int64_t a, int64_t m);

// CRT: combine x = r1 (mod m1), x = r2 (mod m2) into (r, m1*m2).
// Moduli must be coprime.
struct CrtResult {
    int64_t r;
    int64_t m;
};
CrtResult crt_combine(int64_t r1, int64_t m1, int64_t r2, int64_t m2);

struct Valuation {
    int64_t p;
    int nu;
};

// nu_p(n) for prime p, n != 0.
int valuation(int64_t n, int64_t p);

struct PrimePower {
    int64_t p;
    int e;
};

// Trial-division factorization, adequate for |n| <= 1e9 (the library's range).
std::vector<PrimePower> factor(int64_t n);

int moebius(int64_t n);
int64_t euler_phi(int64_t n);
std::vector<int64_t> divisors(int64_t n);

// sigma_s(n) = sum_{d|n} d^s for n >= 1.
int64_t divisor_sum(int64_t n, int s);

// sigma_s extended by sigma_s(x) = 0 for x not an integer: argument is the
// rational num/den.
int64_t divisor_sum_rational(int64_t num, int64_t den, int s);

// A_4(n) = sigma_1(n/2) - (-1)^n sigma_1(n).
int64_t a4_coefficient(int64_t n);

// Number of ways to write n >= 0 as an ordered sum of three squares.
int64_t r3(int64_t n);

// Hurwitz class number, exact: returns 12*H(n) as an integer.
// H(0) = -1/12, H(n) = 0 for n = 1,2 (mod 4), reduced-form enumeration else.
int64_t hurwitz12(int64_t n);

struct HurwitzNumber {
    int64_t num;  // value = num / 12
    double value() const { return static_cast<double>(num) / 12.0; }
};
inline HurwitzNumber hurwitz(int64_t n) { return HurwitzNumber{hurwitz12(n)}; }

// The weight-3/2 coefficient combination 8H(n) + r3(n)/6, an integer.
int64_t a3_coefficient(int64_t n);

}  // namespace rvkl
