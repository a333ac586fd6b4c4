#include "rvkl/basis.hpp"

#include <cmath>

#include "rvkl/special.hpp"

namespace rvkl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

bool is_integral(double x) { return x == std::floor(x) && std::abs(x) < 9e15; }

PhaseQuery to_phase_query(const BigBQuery& q) {
    double rsq = q.rsq_override >= 0.0 ? q.rsq_override : q.r * q.r;
    if (is_integral(rsq)) return PhaseQuery::of_int((int64_t)rsq, q.n);
    return PhaseQuery::of_real(rsq, q.n);
}

}  // namespace

std::vector<SeriesEval> big_B_series(int dimension, BasisVariant variant,
                                     std::span<const BigBQuery> queries,
                                     const TruncationPolicy& policy) {
    if (dimension != 3 && dimension != 4)
        throw std::invalid_argument("big_B_series: dimension must be 3 or 4");
    const int nq = (int)queries.size();
    const int weight2k = dimension == 4 ? 4 : 3;
    const Variant kv = variant == BasisVariant::Plain ? Variant::ThetaEven : Variant::ThetaOdd;
    const int64_t first = variant == BasisVariant::Plain ? 2 : 1;

    std::vector<PhaseQuery> pq;
    pq.reserve((size_t)nq);
    for (const auto& q : queries) pq.push_back(to_phase_query(q));

    CesaroAccumulator ces(nq, policy.cutoff, policy.blocks);
    sweep_moduli(
        first, 2, policy.cutoff, nq,
        [&](int64_t c, std::complex<double>* out) {
            kloosterman_batch(kv, weight2k, c, pq, out);
        },
        [&](int64_t c, const std::complex<double>* vals) {
            ces.before_modulus(c);
            for (int k = 0; k < nq; ++k) {
                double arg = 2.0 * kPi * std::abs(queries[k].r) *
                             std::sqrt((double)queries[k].n) / (double)c;
                double w = dimension == 4 ? bessel_j1(arg) / (double)c
                                          : std::sin(arg) / std::sqrt((double)c);
                ces.slot(k).add(vals[k] * w);
            }
        });
    ces.finish();

    std::vector<SeriesEval> out((size_t)nq);
    for (int k = 0; k < nq; ++k)
        out[(size_t)k] = {ces.cesaro(k), ces.oscillation(k)};
    return out;
}

std::vector<BasisValue> big_B_batch(int dimension, BasisVariant variant,
                                    std::span<const BigBQuery> queries,
                                    const TruncationPolicy& policy) {
    std::vector<BasisValue> out(queries.size());
    std::vector<BigBQuery> live;
    std::vector<size_t> idx;
    for (size_t k = 0; k < queries.size(); ++k) {
        const auto& q = queries[k];
        if (q.n == 0 || q.r == 0.0) {
            // sin/J1 weights vanish at n = 0; r = 0 belongs to the closed forms
            if (q.r == 0.0 && q.n > 0) {
                out[k].kl_part = big_B_at_zero(dimension, q.n, variant).value();
                out[k].value = out[k].kl_part;
            }
            continue;
        }
        live.push_back(q);
        idx.push_back(k);
    }
    auto evals = big_B_series(dimension, variant, live, policy);
    for (size_t j = 0; j < live.size(); ++j) {
        const auto& q = live[j];
        std::complex<double> pref;
        if (dimension == 4)
            pref = (variant == BasisVariant::Plain ? 1.0 : -1.0) * kPi *
                   std::sqrt((double)q.n) / std::abs(q.r);
        else
            pref = cis8(variant == BasisVariant::Plain ? 1 : -3) / std::abs(q.r);
        std::complex<double> v = pref * evals[j].cesaro;
        BasisValue& b = out[idx[j]];
        b.kl_part = v.real();
        b.value = b.kl_part;
        b.oscillation = std::abs(pref) * evals[j].oscillation + std::abs(v.imag());
        b.converged = b.oscillation <= policy.tol;
    }
    return out;
}

BasisValue big_B(const BasisRequest& req) {
    BigBQuery q{req.n, req.r};
    return big_B_batch(req.dimension, req.variant, std::span(&q, 1), req.policy)[0];
}

ExactRational big_B_at_zero(int dimension, int64_t n, BasisVariant variant) {
    if (n < 1) throw std::invalid_argument("big_B_at_zero: n >= 1");
    if (dimension == 4) {
        int h = valuation(n, 2);
        int64_t pow2 = (int64_t)1 << h;
        int64_t s1 = divisor_sum(n, 1);
        if (variant == BasisVariant::Plain) {
            if (n % 2) return {0, 1};
            return {8 * s1 * (pow2 - 3), 2 * pow2 - 1};
        }
        return {8 * s1 * pow2, 2 * pow2 - 1};
    }
    if (dimension == 3) {
        // 8H(n) ∓ r3(n)/3 with common denominator 3 (8H = 2*hurwitz12/3)
        int64_t h12 = hurwitz12(n);
        if (variant == BasisVariant::Plain) return {2 * h12 - r3(n), 3};
        return {2 * h12 + 2 * r3(n), 3};
    }
    throw std::invalid_argument("big_B_at_zero: dimension must be 3 or 4");
}

ExactRational basis_b_at_zero(int dimension, int64_t n, BasisVariant variant) {
    if (dimension == 4) {
        if (n == 0) return {0, 1};
        // b = B + 8 A_4(n) at r = 0 (the sinc factor tends to 1)
        ExactRational B = big_B_at_zero(4, n, variant);
        return {B.num + 8 * a4_coefficient(n) * B.den, B.den};
    }
    if (dimension == 3) {
        if (n == 0) return {1, 2};
        return variant == BasisVariant::Plain ? ExactRational{-r3(n), 2}
                                              : ExactRational{r3(n), 2};
    }
    throw std::invalid_argument("basis_b_at_zero: dimension must be 3 or 4");
}

std::vector<double> big_B_at_zero_series(int dimension, BasisVariant variant,
                                         std::span<const int64_t> ns, int64_t cutoff) {
    const int nq = (int)ns.size();
    const int weight2k = dimension == 4 ? 4 : 3;
    const Variant kv = variant == BasisVariant::Plain ? Variant::ThetaEven : Variant::ThetaOdd;
    std::vector<PhaseQuery> pq;
    for (int64_t n : ns) pq.push_back(PhaseQuery::of_int(0, n));

    // Plain compensated summation: the trailing-window average helps the
    // oscillatory r > 0 series but degrades this one, whose error changes
    // sign on a scale comparable to the window.
    std::vector<NeumaierC> acc((size_t)nq);
    sweep_moduli(
        variant == BasisVariant::Plain ? 2 : 1, 2, cutoff, nq,
        [&](int64_t c, std::complex<double>* out) {
            kloosterman_batch(kv, weight2k, c, pq, out);
        },
        [&](int64_t c, const std::complex<double>* vals) {
            double dc = (double)c;
            double w = dimension == 4 ? 1.0 / (dc * dc) : 1.0 / (dc * std::sqrt(dc));
            for (int k = 0; k < nq; ++k) acc[(size_t)k].add(vals[k] * w);
        });

    std::vector<double> out((size_t)nq);
    for (int k = 0; k < nq; ++k) {
        std::complex<double> pref;
        if (dimension == 4)
            // the tilde series carries the -pi prefactor of B~_{4,n}
            pref = (variant == BasisVariant::Plain ? 1.0 : -1.0) * kPi * kPi *
                   (double)ns[(size_t)k];
        else
            pref = 2.0 * kPi * cis8(variant == BasisVariant::Plain ? 1 : -3) *
                   std::sqrt((double)ns[(size_t)k]);
        out[(size_t)k] = (pref * acc[(size_t)k].result()).real();
    }
    return out;
}

std::vector<BasisValue> basis_b_batch(int dimension, BasisVariant variant,
                                      std::span<const BigBQuery> queries,
                                      const TruncationPolicy& policy) {
    std::vector<BasisValue> out = big_B_batch(dimension, variant, queries, policy);
    for (size_t k = 0; k < queries.size(); ++k) {
        const auto& q = queries[k];
        BasisValue& b = out[k];
        double rsq = q.r * q.r;
        if (dimension == 4) {
            if (q.n == 0) continue;  // b_{4,0} = 0 by convention
            double f = (q.r != 0.0 && is_integral(rsq)) ? 0.0 : 8.0 * sinc_pi(rsq);
            b.correction_part = f * (double)a4_coefficient(q.n);
            b.value = b.kl_part + b.correction_part;
        } else {
            if (q.n == 0) {
                // b_{3,0}(r) = sin(pi r^2) / (2 r sinh(pi r)); no series part
                b.value = 0.5 * sin_over_r_sinh(rsq, std::abs(q.r));
                b.correction_part = -b.value;
                continue;
            }
            double f = (q.r != 0.0 && is_integral(rsq))
                           ? 0.0
                           : sin_over_r_sinh(rsq, std::abs(q.r));
            double a3 = (4.0 * (double)hurwitz12(q.n) + (double)r3(q.n)) / 6.0;
            b.correction_part = -f * a3;
            b.value = b.kl_part + b.correction_part;
        }
    }
    return out;
}

BasisValue basis_b(const BasisRequest& req) {
    BigBQuery q{req.n, req.r};
    return basis_b_batch(req.dimension, req.variant, std::span(&q, 1), req.policy)[0];
}

double d_n_pm(int64_t n, double x, int sign, const TruncationPolicy& policy,
              double* oscillation) {
    if (x == 0.0) {
        if (oscillation) *oscillation = 0.0;
        return 0.0;
    }
    double ax = std::abs(x);
    BigBQuery q{n, ax};
    auto plain = big_B_batch(3, BasisVariant::Plain, std::span(&q, 1), policy)[0];
    auto tilde = big_B_batch(3, BasisVariant::Tilde, std::span(&q, 1), policy)[0];
    double v;
    if (sign >= 0) {
        double rsq = ax * ax;
        double corr = is_integral(rsq) ? 0.0 : 2.0 * ax * sin_over_r_sinh(rsq, ax);
        double a3 = (4.0 * (double)hurwitz12(n) + (double)r3(n)) / 6.0;
        v = ax * (plain.kl_part + tilde.kl_part) - corr * a3;
    } else {
        v = ax * (plain.kl_part - tilde.kl_part);
    }
    if (oscillation) *oscillation = ax * (plain.oscillation + tilde.oscillation);
    return x < 0.0 ? -v : v;
}

std::complex<double> half_integral_delta(int64_t m, int64_t n,
                                         const TruncationPolicy& policy,
                                         double* oscillation) {
    if (m < 1 || n < 1) throw std::invalid_argument("half_integral_delta: m, n >= 1");
    PhaseQuery pq = PhaseQuery::of_int(-m, -n);
    CesaroAccumulator ces(1, policy.cutoff, policy.blocks);
    const double alpha = 4.0 * kPi * std::sqrt((double)(m * n));
    sweep_moduli(
        4, 4, policy.cutoff, 1,
        [&](int64_t c, std::complex<double>* out) {
            kloosterman_batch(Variant::ThetaLevel4, 1, c, std::span(&pq, 1), out);
        },
        [&](int64_t c, const std::complex<double>* vals) {
            ces.before_modulus(c);
            ces.slot(0).add(vals[0] * bessel_j_half(alpha / (double)c) / (double)c);
        });
    ces.finish();
    std::complex<double> pref =
        2.0 * kPi * cis8(-1) * std::pow((double)n / (double)m, 0.25);
    if (oscillation) *oscillation = std::abs(pref) * ces.oscillation(0);
    return pref * ces.cesaro(0);
}

}  // namespace rvkl
