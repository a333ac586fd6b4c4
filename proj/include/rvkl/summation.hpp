#pragma once
// Compensated accumulators and the deterministic parallel sweep used by every
// modulus series in the library.
//
// Reduction contract: per-modulus values are computed independently (one
// modulus never spans threads below the block-split threshold), buffered, and
// folded sequentially in increasing-modulus order with Neumaier compensation.
// The result is bit-identical for any worker count.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace rvkl {

using std::int64_t;

// Worker budget shared by all parallel kernels.  0 = use all hardware threads.
void set_workers(int n);
int workers();

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double result() const { return sum + comp; }
};

struct NeumaierC {
    Neumaier re, im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> result() const { return {re.result(), im.result()}; }
    double residual() const { return std::abs(std::complex<double>(re.comp, im.comp)); }
};

// Deterministic sweep over moduli c = first, first+stride, ..., <= cutoff.
//
// eval(c, out) fills nq complex values for modulus c and may run on any
// thread; fold(c, vals) is called exactly once per modulus, in increasing c
// order, on the calling thread.  Moduli are processed in fixed-size batches
// so memory stays bounded on long sweeps.
void sweep_moduli(int64_t first, int64_t stride, int64_t cutoff, int nq,
                  const std::function<void(int64_t, std::complex<double>*)>& eval,
                  const std::function<void(int64_t, const std::complex<double>*)>& fold);

// Terminal Cesaro averaging for conditionally convergent modulus series:
// partial sums are snapshotted at the ends of the trailing `blocks` blocks of
// length cutoff/16, the reported value is their average, and the diagnostic
// is the largest block-to-block movement.
class CesaroAccumulator {
  public:
    CesaroAccumulator(int nq, int64_t cutoff, int blocks);

    // call before folding modulus c, then add terms into slot(k)
    void before_modulus(int64_t c);
    NeumaierC& slot(int k) { return acc_[(size_t)k]; }
    void finish();

    std::complex<double> cesaro(int k) const;
    double oscillation(int k) const;

  private:
    void snapshot();
    std::vector<NeumaierC> acc_;
    std::vector<std::vector<std::complex<double>>> ring_;
    std::vector<int64_t> block_ends_;
    size_t next_ = 0;
};

}  // namespace rvkl
