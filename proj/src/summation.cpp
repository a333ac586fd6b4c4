#include "rvkl/summation.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>

namespace rvkl {

namespace {
std::atomic<int> g_workers{0};
}

void set_workers(int n) { g_workers.store(n < 0 ? 0 : n); }

int workers() {
    int n = g_workers.load();
    return n > 0 ? n : omp_get_max_threads();
}

CesaroAccumulator::CesaroAccumulator(int nq, int64_t cutoff, int blocks)
    : acc_((size_t)nq) {
    int64_t L = std::max<int64_t>(cutoff / 16, 1);
    for (int j = blocks - 1; j >= 0; --j) {
        int64_t e = cutoff - (int64_t)j * L;
        if (e >= 1 && (block_ends_.empty() || block_ends_.back() < e))
            block_ends_.push_back(e);
    }
    ring_.assign(block_ends_.size(), std::vector<std::complex<double>>((size_t)nq));
}

void CesaroAccumulator::before_modulus(int64_t c) {
    while (next_ < block_ends_.size() && block_ends_[next_] < c) snapshot();
}

void CesaroAccumulator::snapshot() {
    for (size_t k = 0; k < acc_.size(); ++k) ring_[next_][k] = acc_[k].result();
    ++next_;
}

void CesaroAccumulator::finish() {
    while (next_ < block_ends_.size()) snapshot();
}

std::complex<double> CesaroAccumulator::cesaro(int k) const {
    std::complex<double> s{0.0, 0.0};
    for (const auto& r : ring_) s += r[(size_t)k];
    return s / (double)ring_.size();
}

double CesaroAccumulator::oscillation(int k) const {
    double m = 0.0;
    for (size_t j = 1; j < ring_.size(); ++j)
        m = std::max(m, std::abs(ring_[j][(size_t)k] - ring_[j - 1][(size_t)k]));
    return m;
}

void sweep_moduli(int64_t first, int64_t stride, int64_t cutoff, int nq,
                  const std::function<void(int64_t, std::complex<double>*)>& eval,
                  const std::function<void(int64_t, const std::complex<double>*)>& fold) {
    if (cutoff < first) return;
    const int64_t count = (cutoff - first) / stride + 1;
    const int64_t batch = 4096;
    std::vector<std::complex<double>> buf;
    const int nthreads = workers();
    for (int64_t base = 0; base < count; base += batch) {
        const int64_t len = std::min(batch, count - base);
        buf.assign((size_t)(len * nq), {0.0, 0.0});
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
        for (int64_t i = 0; i < len; ++i) {
            int64_t c = first + (base + i) * stride;
            eval(c, buf.data() + (size_t)(i * nq));
        }
        for (int64_t i = 0; i < len; ++i) {
            int64_t c = first + (base + i) * stride;
            fold(c, buf.data() + (size_t)(i * nq));
        }
    }
}

}  // namespace rvkl
