#include "rvkl/rv.hpp"

#include <cmath>
#include <vector>

namespace rvkl {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

void check_rv(const RvQuery& q) {
    if (q.variant != Variant::ThetaEven && q.variant != Variant::ThetaOdd)
        throw VariantParityMismatch("rv: even/odd theta variants only");
    if (q.weight2k != 3 && q.weight2k != 4)
        throw VariantParityMismatch("rv: weight2k must be 3 or 4");
}
}  // namespace

std::complex<double> rv_kloosterman(const RvQuery& q) {
    check_rv(q);
    PhaseQuery pq = PhaseQuery::of_real(q.rsq, q.n);
    std::complex<double> out;
    kloosterman_batch(q.variant, q.weight2k, q.modulus, std::span(&pq, 1), &out);
    return out;
}

double dft_identity_check(double rsq, int64_t n, int64_t c, int weight2k,
                          Variant variant) {
    RvQuery q{rsq, n, c, weight2k, variant};
    check_rv(q);
    std::complex<double> direct = rv_kloosterman(q);

    // S(k,n,c,.) for one window of representatives k mod 2c with |rsq-k| < c
    const int64_t M = 2 * c;
    int64_t k0 = (int64_t)std::ceil(rsq - (double)c);
    std::vector<PhaseQuery> pq;
    pq.reserve((size_t)M);
    for (int64_t k = k0; k < k0 + M; ++k) pq.push_back(PhaseQuery::of_int(k, n));
    std::vector<std::complex<double>> svals((size_t)M);
    kloosterman_batch(variant, weight2k, c, pq, svals.data());

    const std::complex<double> I{0.0, 1.0};
    std::complex<double> rebuilt{0.0, 0.0};
    for (int64_t j = 0; j < M; ++j) {
        int64_t k = k0 + j;
        double d = rsq - (double)k;
        std::complex<double> kernel =
            2.0 * I * std::sin(kPi * d) /
            (std::exp(2.0 * kPi * I * (d / (double)M)) - 1.0);
        rebuilt += kernel * svals[(size_t)j];
    }
    rebuilt /= (double)M;
    return std::abs(direct - rebuilt);
}

RvPartialResult rv_partial_sum(const RvQuery& q, Divisor divisor, int64_t cutoff,
                               int blocks, double s, bool absolute) {
    check_rv(q);
    PhaseQuery pq = PhaseQuery::of_real(q.rsq, q.n);
    CesaroAccumulator ces(1, cutoff, blocks);
    sweep_moduli(
        q.variant == Variant::ThetaEven ? 2 : 1, 2, cutoff, 1,
        [&](int64_t c, std::complex<double>* out) {
            kloosterman_batch(q.variant, q.weight2k, c, std::span(&pq, 1), out);
        },
        [&](int64_t c, const std::complex<double>* vals) {
            ces.before_modulus(c);
            double div;
            switch (divisor) {
                case Divisor::C: div = (double)c; break;
                case Divisor::C32: div = std::pow((double)c, 1.5); break;
                default: div = std::pow((double)c, 2.0 * s); break;
            }
            std::complex<double> term = vals[0] / div;
            ces.slot(0).add(absolute ? std::abs(term) : term);
        });
    ces.finish();
    return {ces.cesaro(0), ces.oscillation(0)};
}

}  // namespace rvkl
