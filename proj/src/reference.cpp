#include "rvkl/reference.hpp"

#include <cmath>

namespace rvkl::ref {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

std::complex<long double> cis8l(int t) {
    t = ((t % 8) + 8) % 8;
    constexpr long double h = 0.70710678118654752440084436210484903928L;
    switch (t) {
        case 0: return {1.0L, 0.0L};
        case 1: return {h, h};
        case 2: return {0.0L, 1.0L};
        case 3: return {-h, h};
        case 4: return {-1.0L, 0.0L};
        case 5: return {-h, -h};
        case 6: return {0.0L, -1.0L};
        default: return {h, -h};
    }
}

std::complex<long double> cisl(long double frac) {
    long double a = kTwoPiL * frac;
    return {cosl(a), sinl(a)};
}

int64_t gcd_(int64_t a, int64_t b) { return rvkl::gcd(a, b); }

// multiplier exponent of one even-variant / level-4 term:
// eps_d^{2k} (top/d)^{2k} as the mu8 exponent
int weight_exp(int weight2k, int64_t top, int64_t d) {
    int e = epsilon(d).exponent;
    int sym = kronecker(top, d);
    int sadd = (sym < 0 && (weight2k & 1)) ? 4 : 0;
    return (weight2k * e + sadd) & 7;
}

}  // namespace

std::complex<double> kloosterman(Variant v, int weight2k, int64_t m, int64_t n, int64_t c) {
    std::complex<long double> acc{0.0L, 0.0L};
    switch (v) {
        case Variant::ThetaEven: {
            const int64_t M = 2 * c;
            for (int64_t d = 1; d < M; d += 2) {
                if (gcd_(d, M) != 1) continue;
                int64_t a = inv_mod(d, M);
                int64_t ph = (((m % M) * a + (n % M) * d) % M + M) % M;
                acc += cis8l(weight_exp(weight2k, M, d)) * cisl((long double)ph / M);
            }
            break;
        }
        case Variant::ThetaOdd: {
            if (c == 1) return std::complex<double>(cis8(weight2k));
            const int64_t M = 2 * c;
            for (int64_t d = 2; d < M; d += 2) {
                if (gcd_(d, c) != 1) continue;
                int64_t a = inv_mod(((d % c) + c) % c, c);
                if (a % 2) a += c;  // lift to the even inverse mod 2c
                int sym = kronecker(2 * d, c);
                int t = (weight2k - weight2k * epsilon(c).exponent +
                         ((sym < 0 && (weight2k & 1)) ? 4 : 0));
                int64_t ph = (((m % M) * a + (n % M) * d) % M + M) % M;
                acc += cis8l(t) * cisl((long double)ph / M);
            }
            break;
        }
        case Variant::ThetaLevel4: {
            for (int64_t d = 1; d < c; d += 2) {
                if (gcd_(d, c) != 1) continue;
                int64_t a = inv_mod(d, c);
                int64_t ph = (((m % c) * a + (n % c) * d) % c + c) % c;
                acc += cis8l(weight_exp(weight2k, c, d)) * cisl((long double)ph / c);
            }
            break;
        }
        case Variant::Classical: {
            if (c == 1) return 1.0;
            for (int64_t d = 1; d < c; ++d) {
                if (gcd_(d, c) != 1) continue;
                int64_t a = inv_mod(d, c);
                int64_t ph = (((m % c) * a + (n % c) * d) % c + c) % c;
                acc += cisl((long double)ph / c);
            }
            break;
        }
    }
    return {(double)acc.real(), (double)acc.imag()};
}

std::complex<double> rv_kloosterman(Variant v, int weight2k, double rsq, int64_t n,
                                    int64_t c) {
    std::complex<long double> acc{0.0L, 0.0L};
    if (v == Variant::ThetaEven) {
        const int64_t M = 2 * c;
        for (int64_t a = -c + 1; a < c; ++a) {
            if (gcd_(a < 0 ? -a : a, M) != 1) continue;
            int64_t d = inv_mod(((a % M) + M) % M, M);
            int64_t nph = (((n % M) * d) % M + M) % M;
            long double frac = (long double)rsq * a / M + (long double)nph / M;
            acc += cis8l(weight_exp(weight2k, M, d)) * cisl(frac);
        }
        return {(double)acc.real(), (double)acc.imag()};
    }
    if (v == Variant::ThetaOdd) {
        if (c == 1) return std::complex<double>(cis8(weight2k));
        const int64_t M = 2 * c;
        for (int64_t b = -c + 1; b < c; ++b) {
            if (b % 2) continue;
            if (gcd_(b < 0 ? -b : b, c) != 1) continue;
            // bottom row (c, -cc) with b*cc = -1 (mod c), cc even
            int64_t cc = (c - inv_mod(((b % c) + c) % c, c)) % c;
            if (cc % 2) cc += c;
            int sym = kronecker(-2 * cc, c);
            int t = (weight2k - weight2k * epsilon(c).exponent +
                     ((sym < 0 && (weight2k & 1)) ? 4 : 0));
            int64_t nph = ((-(n % M) * cc) % M + M) % M;
            long double frac = (long double)rsq * b / M + (long double)nph / M;
            acc += cis8l(t) * cisl(frac);
        }
        return {(double)acc.real(), (double)acc.imag()};
    }
    throw VariantParityMismatch("ref::rv_kloosterman: even/odd variants only");
}

}  // namespace rvkl::ref
