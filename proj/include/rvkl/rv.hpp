#pragma once
// Real-variable Kloosterman sums K(rsq,n,c,nu^{2k}) (even modulus) and
// K~(rsq,n,c,nu^{2k}) (odd modulus), the DFT reconstruction identity that
// interpolates them through the integer sums, and Cesaro-averaged partial
// sums over increasing modulus.

#include <complex>
#include <cstdint>

#include "rvkl/kloosterman.hpp"

namespace rvkl {

struct RvQuery {
    double rsq = 0.0;  // the paper's r^2, supplied directly
    int64_t n = 0;
    int64_t modulus = 2;
    int weight2k = 4;  // 3 or 4
    Variant variant = Variant::ThetaEven;  // ThetaEven or ThetaOdd
};

// Always evaluates through the real-variable window path, even for integer
// rsq; the specialization K(m,...) = S(m,...) is a theorem we test, not a
// dispatch shortcut.
std::complex<double> rv_kloosterman(const RvQuery& q);

// max |K(rsq,n,c,.) - (1/2c) sum_k x_c(k) S(k,n,c,.)| over the reconstruction
// with k running over the residue window |rsq - k| < c.
double dft_identity_check(double rsq, int64_t n, int64_t c, int weight2k,
                          Variant variant = Variant::ThetaEven);

struct RvPartialResult {
    std::complex<double> value;  // Cesaro average over the trailing blocks
    double oscillation;          // max block-to-block movement
};

// sum over moduli <= cutoff of K(rsq,n,c,nu^{2k}) / c^e with e per Divisor;
// absolute=true sums |K|/c^e instead (growth diagnostics).
RvPartialResult rv_partial_sum(const RvQuery& q, Divisor divisor, int64_t cutoff,
                               int blocks = 8, double s = 0.75, bool absolute = false);

}  // namespace rvkl
