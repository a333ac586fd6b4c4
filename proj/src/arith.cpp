#include "rvkl/arith.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>

namespace rvkl {

namespace {
constexpr double kSqrtHalf = 0.70710678118654752440084436210484903928;
}

std::complex<double> cis8(int t) {
    t = ((t % 8) + 8) % 8;
    switch (t) {
        case 0: return {1.0, 0.0};
        case 1: return {kSqrtHalf, kSqrtHalf};
        case 2: return {0.0, 1.0};
        case 3: return {-kSqrtHalf, kSqrtHalf};
        case 4: return {-1.0, 0.0};
        case 5: return {-kSqrtHalf, -kSqrtHalf};
        case 6: return {0.0, -1.0};
        default: return {kSqrtHalf, -kSqrtHalf};
    }
}

std::complex<double> EighthRoot::value() const { return cis8(exponent); }

int64_t gcd(int64_t a, int64_t b) {
    return std::gcd(a, b);
}

// (m/n) for all integer pairs.  Bottom 2 is handled by m mod 8, negative
// bottom by the (m/-1) convention that matches sgn(m).
int kronecker(int64_t m, int64_t n) {
    if (n == 0) return (m == 1 || m == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (m < 0) sign = -sign;  // (m/-1) = -1 for m < 0
    }
    // strip factors of 2 from the bottom
    if ((m & 1) == 0 && (n & 1) == 0) return 0;
    static constexpr int two_sym[8] = {0, 1, 0, -1, 0, -1, 0, 1};  // (2/m) by m mod 8
    while ((n & 1) == 0) {
        n >>= 1;
        sign *= two_sym[((m % 8) + 8) % 8];
    }
    // now n odd positive; (./n) is periodic mod n, so reduce the top plainly
    m %= n;
    if (m < 0) m += n;
    while (m != 0) {
        while ((m & 1) == 0) {
            m >>= 1;
            int r = n & 7;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(m, n);
        if ((m & 3) == 3 && (n & 3) == 3) sign = -sign;
        m %= n;
    }
    return n == 1 ? sign : 0;
}

EighthRoot epsilon(int64_t d) {
    if ((d & 1) == 0) throw EvenArgument("epsilon: even argument");
    int64_t r = ((d % 4) + 4) % 4;
    return r == 1 ? EighthRoot(0) : EighthRoot(2);
}

int64_t inv_mod(int64_t a, int64_t m) {
    if (m <= 0) throw NotCoprime("inv_mod: modulus must be positive");
    int64_t r0 = m, r1 = ((a % m) + m) % m;
    int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1) throw NotCoprime("inv_mod: arguments not coprime");
    return ((t0 % m) + m) % m;
}

CrtResult crt_combine(int64_t r1, int64_t m1, int64_t r2, int64_t m2) {
    if (m1 <= 0 || m2 <= 0) throw NotCoprime("crt_combine: bad moduli");
    int64_t inv = inv_mod(m1 % m2, m2);  // throws if not coprime
    int64_t m = m1 * m2;
    __int128 t = (__int128)(((r2 - r1) % m2 + m2) % m2) * inv % m2;
    int64_t r = (int64_t)(((__int128)r1 + (__int128)m1 * t) % m);
    if (r < 0) r += m;
    return {r, m};
}

int valuation(int64_t n, int64_t p) {
    if (p < 2) throw NotPrime("valuation: p < 2");
    for (int64_t q = 2; q * q <= p; ++q)
        if (p % q == 0) throw NotPrime("valuation: composite p");
    if (n == 0) throw std::domain_error("valuation: n = 0");
    if (n < 0) n = -n;
    int nu = 0;
    while (n % p == 0) {
        n /= p;
        ++nu;
    }
    return nu;
}

std::vector<PrimePower> factor(int64_t n) {
    if (n < 0) n = -n;
    std::vector<PrimePower> out;
    if (n <= 1) return out;
    for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

int moebius(int64_t n) {
    if (n < 1) throw std::domain_error("moebius: n < 1");
    int m = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

int64_t euler_phi(int64_t n) {
    if (n < 1) throw std::domain_error("euler_phi: n < 1");
    int64_t phi = n;
    for (auto [p, e] : factor(n)) phi -= phi / p;
    return phi;
}

std::vector<int64_t> divisors(int64_t n) {
    if (n < 0) n = -n;
    std::vector<int64_t> ds{1};
    for (auto [p, e] : factor(n)) {
        size_t base = ds.size();
        int64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int64_t divisor_sum(int64_t n, int s) {
    if (n < 1) throw std::domain_error("divisor_sum: n < 1");
    int64_t total = 0;
    for (int64_t d : divisors(n)) {
        int64_t t = 1;
        for (int i = 0; i < s; ++i) t *= d;
        total += t;
    }
    return total;
}

int64_t divisor_sum_rational(int64_t num, int64_t den, int s) {
    if (den == 0) throw std::domain_error("divisor_sum_rational: zero denominator");
    if (num % den != 0) return 0;
    return divisor_sum(num / den, s);
}

int64_t a4_coefficient(int64_t n) {
    int64_t even_part = (n % 2 == 0) ? divisor_sum(n / 2, 1) : 0;
    int64_t sign = (n % 2 == 0) ? -1 : 1;  // -(-1)^n
    return even_part + sign * divisor_sum(n, 1);
}

// --- memo tables ------------------------------------------------------------
// Growth publishes a fresh immutable snapshot; readers take an acquire load
// and never touch the mutex after warm-up.  Retired snapshots are kept until
// exit (growth is geometric, so the retired total is bounded by the live size).
namespace {

struct MemoTable {
    std::mutex grow_mutex;
    std::atomic<const std::vector<int64_t>*> snap{nullptr};
    std::vector<std::unique_ptr<const std::vector<int64_t>>> retired;

    template <class Builder>
    int64_t get(int64_t n, Builder build) {
        const auto* t = snap.load(std::memory_order_acquire);
        if (t && (int64_t)t->size() > n) return (*t)[n];
        std::lock_guard<std::mutex> lk(grow_mutex);
        t = snap.load(std::memory_order_acquire);
        if (!t || (int64_t)t->size() <= n) {
            int64_t have = t ? (int64_t)t->size() : 0;
            int64_t n_max = std::max<int64_t>(n, 2 * have + 64);
            auto fresh = std::make_unique<const std::vector<int64_t>>(build(n_max));
            const auto* raw = fresh.get();
            retired.push_back(std::move(fresh));
            snap.store(raw, std::memory_order_release);
            t = raw;
        }
        return (*t)[n];
    }
};

std::vector<int64_t> build_r3(int64_t n_max) {
    std::vector<int64_t> t(n_max + 1, 0);
    int64_t lim = (int64_t)std::sqrt((double)n_max) + 2;
    for (int64_t x = -lim; x <= lim; ++x) {
        int64_t xx = x * x;
        if (xx > n_max) continue;
        for (int64_t y = -lim; y <= lim; ++y) {
            int64_t s = xx + y * y;
            if (s > n_max) continue;
            for (int64_t z = 0; s + z * z <= n_max; ++z) t[s + z * z] += (z == 0) ? 1 : 2;
        }
    }
    return t;
}

MemoTable r3_memo;

}  // namespace

int64_t r3(int64_t n) {
    if (n < 0) throw std::domain_error("r3: n < 0");
    return r3_memo.get(n, build_r3);
}

// --- Hurwitz class numbers --------------------------------------------------
namespace {

// 12*H(n) by enumeration of reduced forms (a,b,c), b^2 - 4ac = -n,
// |b| <= a <= c, b >= 0 when |b| = a or a = c.  Forms (t,0,t) count 1/2,
// (t,t,t) count 1/3.
int64_t hurwitz12_direct(int64_t n) {
    if (n == 0) return -1;
    int64_t r = n % 4;
    if (r == 1 || r == 2) return 0;
    int64_t total = 0;  // 12 * H
    for (int64_t b = n & 1; 3 * b * b <= n; b += 2) {
        int64_t m4 = n + b * b;
        int64_t m = m4 / 4;  // = a*c
        for (int64_t a = std::max<int64_t>(b, 1); a * a <= m; ++a) {
            if (m % a) continue;
            int64_t c = m / a;
            int64_t w;
            if (a == b && b == c)
                w = 4;  // x^2+xy+y^2 class
            else if (a == c && b == 0)
                w = 6;  // x^2+y^2 class
            else
                w = 12;
            if (b > 0 && b != a && a != c) w *= 2;  // (a,-b,c) also reduced
            total += w;
        }
    }
    return total;
}

std::vector<int64_t> build_h(int64_t n_max) {
    std::vector<int64_t> t(n_max + 1);
    for (int64_t n = 0; n <= n_max; ++n) t[n] = hurwitz12_direct(n);
    return t;
}

MemoTable h_memo;

}  // namespace

int64_t hurwitz12(int64_t n) {
    if (n < 0) throw std::domain_error("hurwitz12: n < 0");
    if (n >= 16384) return hurwitz12_direct(n);  // skip the memo for one-off large n
    return h_memo.get(n, build_h);
}

int64_t a3_coefficient(int64_t n) {
    // 8H(n) + r3(n)/6 = (4*hurwitz12(n) + r3(n)) / 6
    int64_t t = 4 * hurwitz12(n) + r3(n);
    if (t % 6 != 0) throw std::logic_error("a3_coefficient: not an integer");
    return t / 6;
}

}  // namespace rvkl
