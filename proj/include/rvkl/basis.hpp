#pragma once
// Radial Fourier interpolation basis functions in dimensions 3 and 4:
// the Kloosterman series B_{d,n}, B~_{d,n}, the assembled b_{d,n}, b~_{d,n},
// the one-dimensional odd functions d_n^±, and the closed forms at r = 0.
//
// The modulus series converge conditionally; they are summed in strictly
// increasing modulus order and finished with Cesaro averaging over the last
// `blocks` blocks of length cutoff/16.  The block-to-block oscillation of
// those partial sums is reported as the convergence diagnostic.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rvkl/kloosterman.hpp"

namespace rvkl {

struct TruncationPolicy {
    int64_t cutoff = 20000;
    int blocks = 8;
    double tol = 5e-3;
};

enum class BasisVariant { Plain, Tilde };

struct BasisRequest {
    int dimension = 4;  // 3 or 4
    int64_t n = 1;
    double r = 1.0;
    BasisVariant variant = BasisVariant::Plain;
    TruncationPolicy policy;
};

struct BasisValue {
    double value = 0.0;
    double kl_part = 0.0;          // B_{d,n}(r) (phase removed, real part)
    double correction_part = 0.0;  // signed sinc/class-number term
    double oscillation = 0.0;      // Cesaro diagnostic + imaginary residue
    bool converged = true;
};

struct BigBQuery {
    int64_t n;
    double r;
    // the series are evaluated at r^2; callers that know r^2 exactly (r = sqrt m)
    // may pin it here to keep the integer specialization exact
    double rsq_override = -1.0;
};

// Raw Cesaro value of one Kloosterman basis series (no prefactor applied).
struct SeriesEval {
    std::complex<double> cesaro;
    double oscillation;
};

// sum over moduli of K(r^2,n,c,nu^{2k}) * weight(c) for the dim-d series
// (weight J_1(2 pi r sqrt n / c)/c for d = 4, sin(2 pi r sqrt n / c)/sqrt c
// for d = 3), shared sweep over all queries.
std::vector<SeriesEval> big_B_series(int dimension, BasisVariant variant,
                                     std::span<const BigBQuery> queries,
                                     const TruncationPolicy& policy);

std::vector<BasisValue> big_B_batch(int dimension, BasisVariant variant,
                                    std::span<const BigBQuery> queries,
                                    const TruncationPolicy& policy);
BasisValue big_B(const BasisRequest& req);

// Exact closed forms for B_{d,n}(0); value = num/den.
struct ExactRational {
    int64_t num;
    int64_t den;
    double value() const { return (double)num / (double)den; }
};
ExactRational big_B_at_zero(int dimension, int64_t n, BasisVariant variant);
ExactRational basis_b_at_zero(int dimension, int64_t n, BasisVariant variant);

// Series route to B_{d,n}(0) through S(0,n,c) sums, for cross-checking the
// closed forms at finite cutoff.
std::vector<double> big_B_at_zero_series(int dimension, BasisVariant variant,
                                         std::span<const int64_t> ns, int64_t cutoff);

std::vector<BasisValue> basis_b_batch(int dimension, BasisVariant variant,
                                      std::span<const BigBQuery> queries,
                                      const TruncationPolicy& policy);
BasisValue basis_b(const BasisRequest& req);

// d_n^+ / d_n^- (sign = +1 / -1); odd in x by construction.
double d_n_pm(int64_t n, double x, int sign, const TruncationPolicy& policy,
              double* oscillation = nullptr);

// Cesaro value of
//   2 pi e(-1/8) (n/m)^{1/4} sum_{4|c} S(-m,-n,c,nu_theta) J_{1/2}(4 pi sqrt(mn)/c)/c,
// which should equal delta_{m,n}.
std::complex<double> half_integral_delta(int64_t m, int64_t n,
                                         const TruncationPolicy& policy,
                                         double* oscillation = nullptr);

}  // namespace rvkl
