#include "rvkl/kloosterman.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace rvkl {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::complex<double> cis2pi(double frac) {
    double a = kTwoPi * frac;
    return {std::cos(a), std::sin(a)};
}

// Barrett reduction for products below M^2 (M < 2^31 here).
struct Barrett {
    uint64_t M = 1;
    uint64_t magic = ~0ull;
    void init(uint64_t m) {
        M = m;
        magic = m > 1 ? (uint64_t)(((unsigned __int128)1 << 64) / m) : ~0ull;
    }
    uint64_t reduce(uint64_t r) const {
        if (M == 1) return 0;
        uint64_t q = (uint64_t)(((unsigned __int128)r * magic) >> 64);
        uint64_t t = r - q * M;
        while (t >= M) t -= M;
        return t;
    }
    uint64_t mulmod(uint64_t a, uint64_t b) const { return reduce(a * b); }
};

// (2/x) by x mod 8
constexpr int kTwoSym[8] = {0, 1, 0, -1, 0, -1, 0, 1};

// chi[x] = Jacobi (x/q) for x in [0, q); built from one Legendre table per
// prime with counter passes, no divisions in the hot loops.
void build_chi(int64_t q, std::vector<int8_t>& chi, std::vector<int8_t>& leg) {
    chi.assign((size_t)q, 1);
    if (q == 1) return;  // (x/1) = 1, including x = 0
    chi[0] = 0;
    for (auto [p, e] : factor(q)) {
        leg.assign((size_t)p, -1);
        leg[0] = 0;
        int64_t s = 0;
        for (int64_t t = 1; t < p; ++t) {
            s += 2 * t - 1;  // s = t^2 mod p, incrementally
            while (s >= p) s -= p;
            leg[(size_t)s] = 1;
        }
        int64_t cnt = 0;
        if (e & 1) {
            for (int64_t x = 0; x < q; ++x) {
                chi[(size_t)x] = (int8_t)(chi[(size_t)x] * leg[(size_t)cnt]);
                if (++cnt == p) cnt = 0;
            }
        } else {
            for (int64_t x = 0; x < q; ++x) {
                if (cnt == 0) chi[(size_t)x] = 0;
                if (++cnt == p) cnt = 0;
            }
        }
    }
}

// inverses of a block of units: two multiplications per element plus a single
// extended gcd for the block product
void batch_invert(const Barrett& bm, const uint64_t* xs, uint64_t* ys, int n) {
    uint64_t acc = 1;
    for (int i = 0; i < n; ++i) {
        ys[i] = acc;  // prefix product x_0..x_{i-1}
        acc = bm.mulmod(acc, xs[i]);
    }
    uint64_t t = (uint64_t)inv_mod((int64_t)acc, (int64_t)bm.M);
    for (int i = n - 1; i >= 0; --i) {
        ys[i] = bm.mulmod(t, ys[i]);
        t = bm.mulmod(t, xs[i]);
    }
}

enum class QMode { IntPow, IntIdx, RealPow, RealIdx };

struct PreppedQuery {
    QMode mode;
    int mpow = 0;    // |m| for the power path
    bool mconj = false;
    int npow = 0;    // |n|
    bool nconj = false;
    int ridx = 0;    // index into the distinct-rsq list
    uint64_t mred = 0;  // m mod M for the index path
    uint64_t nred = 0;
};

struct VariantSetup {
    int64_t M;        // enumeration modulus
    int64_t x0;       // first candidate x
    int64_t xstep;
    int64_t q;        // odd part of M (ThetaOdd: q = c)
    int twoexp;
    bool invert_mod_q;  // ThetaOdd inverts mod q and lifts even
    int p0;             // constant mu8 prefix exponent folded per unit
    int eps_q;          // epsilon exponent of c (ThetaOdd)
    int two_over_q;     // (2/q) (ThetaOdd)
    bool q_is_3mod4;
    bool weight_trivial;  // Classical
};

void check_parity(Variant v, int weight2k, int64_t c) {
    bool ok = c >= 1;
    switch (v) {
        case Variant::ThetaEven: ok = ok && c % 2 == 0; break;
        case Variant::ThetaOdd: ok = ok && c % 2 == 1; break;
        case Variant::ThetaLevel4: ok = ok && c % 4 == 0; break;
        case Variant::Classical: break;
    }
    if (v != Variant::Classical && (weight2k < 1 || weight2k > 4))
        ok = false;
    if (!ok) throw VariantParityMismatch("kloosterman: modulus/weight incompatible with variant");
}

constexpr int kMaxPowM = 64;
constexpr int kMaxPowN = 512;
constexpr int64_t kSegment = 1 << 21;  // candidates per parallel block of one sum
constexpr int kChunk = 512;            // units per batched inversion
constexpr int64_t kTableMin = 4096;    // small moduli take the direct sincos path

std::atomic<int64_t> g_table_cap{int64_t(256) << 20};

// e(j/M) for j in [0, M), built incrementally with a sincos rebase every 256
// entries; entry error stays below ~1e-13, used only at sweep-scale moduli.
void build_roots(int64_t M, std::vector<std::complex<double>>& roots) {
    roots.resize((size_t)M);
    const double step = kTwoPi / (double)M;
    const std::complex<double> w{std::cos(step), std::sin(step)};
    for (int64_t j0 = 0; j0 < M; j0 += 256) {
        std::complex<double> z{std::cos(step * (double)j0), std::sin(step * (double)j0)};
        int64_t hi = std::min(M, j0 + 256);
        for (int64_t j = j0; j < hi; ++j) {
            roots[(size_t)j] = z;
            z *= w;
        }
    }
}

struct RootCache {
    int64_t modulus = 0;
    std::vector<std::complex<double>> roots;
};

}  // namespace

void set_root_table_cap(int64_t bytes) { g_table_cap.store(bytes); }

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::ThetaEven: return "even";
        case Variant::ThetaOdd: return "odd";
        case Variant::ThetaLevel4: return "level4";
        case Variant::Classical: return "classical";
    }
    return "?";
}

void kloosterman_batch(Variant v, int weight2k, int64_t c,
                       std::span<const PhaseQuery> q, std::complex<double>* out,
                       double* comp, int64_t* terms) {
    check_parity(v, weight2k, c);
    const int nq = (int)q.size();
    auto fill = [&](std::complex<double> z, int64_t t) {
        for (int k = 0; k < nq; ++k) out[k] = z;
        if (comp) std::fill(comp, comp + nq, 0.0);
        if (terms) std::fill(terms, terms + nq, t);
    };

    // degenerate moduli with no pair-enumerable units
    if (v == Variant::ThetaOdd && c == 1) {
        // single class; phase vanishes, value is e(k/4) for any frequency
        fill(cis8(weight2k), 1);
        return;
    }
    if (v == Variant::Classical && c == 1) {
        fill({1.0, 0.0}, 1);
        return;
    }
    if (v == Variant::Classical && c == 2) {
        for (int k = 0; k < nq; ++k) {
            if (q[k].integer)
                out[k] = ((q[k].m + q[k].n) % 2 == 0) ? 1.0 : -1.0;
            else
                out[k] = cis2pi((q[k].rsq + (double)(((q[k].n % 2) + 2) % 2)) * 0.5);
        }
        if (comp) std::fill(comp, comp + nq, 0.0);
        if (terms) std::fill(terms, terms + nq, 1);
        return;
    }

    VariantSetup st{};
    st.M = (v == Variant::ThetaEven || v == Variant::ThetaOdd) ? 2 * c : c;
    st.q = st.M;
    st.twoexp = 0;
    while (st.q % 2 == 0) {
        st.q /= 2;
        ++st.twoexp;
    }
    st.invert_mod_q = (v == Variant::ThetaOdd);
    st.weight_trivial = (v == Variant::Classical);
    st.xstep = (v == Variant::Classical && st.M % 2 == 1) ? 1 : 2;
    st.x0 = (v == Variant::ThetaOdd) ? 2 : 1;
    st.p0 = 0;
    st.eps_q = 0;
    st.two_over_q = 1;
    if (v == Variant::ThetaOdd) {
        st.eps_q = epsilon(c).exponent;
        st.two_over_q = kronecker(2, c);
        st.p0 = ((weight2k - weight2k * st.eps_q) % 8 + 8) % 8;  // e(k/4) eps_c^{-2k}
    }
    st.q_is_3mod4 = (st.q % 4 == 3);

    const int64_t M = st.M;
    const Barrett bM = [&] { Barrett b; b.init((uint64_t)M); return b; }();
    const Barrett bq = [&] { Barrett b; b.init((uint64_t)st.q); return b; }();
    const Barrett binv = st.invert_mod_q ? bq : bM;

    thread_local std::vector<int8_t> tl_chi, tl_leg;
    build_chi(st.q, tl_chi, tl_leg);
    const int8_t* chi = tl_chi.data();

    thread_local RootCache tl_roots;
    const std::complex<double>* roots = nullptr;
    if (M > kTableMin && M * (int64_t)sizeof(std::complex<double>) <= g_table_cap.load()) {
        if (tl_roots.modulus != M) {
            build_roots(M, tl_roots.roots);
            tl_roots.modulus = M;
        }
        roots = tl_roots.roots.data();
    }

    // distinct real frequencies
    std::vector<double> rsqs;
    std::vector<PreppedQuery> pq(nq);
    for (int k = 0; k < nq; ++k) {
        const PhaseQuery& Q = q[k];
        PreppedQuery& P = pq[k];
        int64_t am = Q.integer ? std::llabs(Q.m) : 0;
        int64_t an = std::llabs(Q.n);
        if (Q.integer) {
            P.mode = (am <= kMaxPowM && an <= kMaxPowN) ? QMode::IntPow : QMode::IntIdx;
        } else {
            P.mode = (an <= kMaxPowN) ? QMode::RealPow : QMode::RealIdx;
            auto it = std::find(rsqs.begin(), rsqs.end(), Q.rsq);
            P.ridx = (int)(it - rsqs.begin());
            if (it == rsqs.end()) rsqs.push_back(Q.rsq);
        }
        P.mpow = (int)std::min<int64_t>(am, kMaxPowM);
        P.mconj = Q.m < 0;
        P.npow = (int)std::min<int64_t>(an, kMaxPowN);
        P.nconj = Q.n < 0;
        P.mred = (uint64_t)(((Q.m % M) + M) % M);
        P.nred = (uint64_t)(((Q.n % M) + M) % M);
    }
    int mmax = 0, nmax = 0;
    bool any_idx = false;
    for (const auto& P : pq) {
        if (P.mode == QMode::IntPow) mmax = std::max(mmax, P.mpow);
        if (P.mode == QMode::IntPow || P.mode == QMode::RealPow) nmax = std::max(nmax, P.npow);
        if (P.mode == QMode::IntIdx || P.mode == QMode::RealIdx) any_idx = true;
    }
    const int nr = (int)rsqs.size();

    const int64_t xmax = (M - 1) / 2;
    const int64_t ncand = xmax >= st.x0 ? (xmax - st.x0) / st.xstep + 1 : 0;
    const int64_t nseg = (ncand + kSegment - 1) / kSegment;
    const double invM = 1.0 / (double)M;

    // per-segment mu8 bins: [seg][2][8][nq], direct and to-conjugate halves
    const size_t binsz = (size_t)16 * nq;
    std::vector<NeumaierC> segbins((size_t)std::max<int64_t>(nseg, 1) * binsz);
    std::vector<int64_t> segterms((size_t)std::max<int64_t>(nseg, 1), 0);

    const int wodd = weight2k & 1;
    const int nthreads = workers();

#pragma omp parallel for schedule(dynamic) num_threads(nthreads) if (nseg > 1)
    for (int64_t seg = 0; seg < nseg; ++seg) {
        NeumaierC* bins = segbins.data() + (size_t)seg * binsz;
        std::vector<std::complex<double>> chunkbins(binsz, {0.0, 0.0});
        uint64_t xs[kChunk], ys[kChunk];
        int nfill = 0;
        int64_t nunits = 0;
        std::vector<std::complex<double>> powx((size_t)mmax + 1), powy((size_t)nmax + 1),
            zr((size_t)std::max(nr, 1));

        auto flush = [&]() {
            if (nfill == 0) return;
            batch_invert(binv, xs, ys, nfill);
            for (int i = 0; i < nfill; ++i) {
                const uint64_t x = xs[i];
                uint64_t y = ys[i];
                int sym, eps2 = 0, eps2m = 0;
                if (st.invert_mod_q) {
                    // y currently lives mod q; lift to the even residue mod 2q
                    uint64_t y0 = y;
                    y = (y0 & 1) ? y0 + (uint64_t)st.q : y0;
                    sym = st.two_over_q * chi[y0];
                } else {
                    uint64_t ymq = bq.reduce(y);
                    sym = chi[ymq];
                    if (st.q_is_3mod4 && (y & 3) == 3) sym = -sym;  // flip (q/y) -> (y/q)
                    if (st.twoexp & 1) sym *= kTwoSym[y & 7];
                    eps2 = ((y & 3) == 1) ? 0 : 2;
                    eps2m = 2 - eps2;
                }
                int t, tm;
                if (st.weight_trivial) {
                    t = tm = 0;
                } else if (st.invert_mod_q) {
                    t = (st.p0 + ((wodd && sym < 0) ? 4 : 0)) & 7;
                    int symm = st.q_is_3mod4 ? -sym : sym;
                    tm = (st.p0 + ((wodd && symm < 0) ? 4 : 0)) & 7;
                } else {
                    int sadd = (wodd && sym < 0) ? 4 : 0;
                    t = (weight2k * eps2 + sadd) & 7;
                    tm = (weight2k * eps2m + sadd) & 7;
                }

                const std::complex<double> zx = roots ? roots[x] : cis2pi((double)x * invM);
                const std::complex<double> zy = roots ? roots[y] : cis2pi((double)y * invM);
                powx[0] = {1.0, 0.0};
                for (int j = 1; j <= mmax; ++j) powx[j] = powx[j - 1] * zx;
                powy[0] = {1.0, 0.0};
                for (int j = 1; j <= nmax; ++j) powy[j] = powy[j - 1] * zy;
                for (int j = 0; j < nr; ++j) zr[j] = cis2pi(rsqs[(size_t)j] * (double)x * invM);

                std::complex<double>* binD = chunkbins.data() + (size_t)t * nq;
                std::complex<double>* binC = chunkbins.data() + (size_t)(8 + tm) * nq;
                for (int k = 0; k < nq; ++k) {
                    const PreppedQuery& P = pq[k];
                    std::complex<double> ph;
                    switch (P.mode) {
                        case QMode::IntPow: {
                            std::complex<double> zm = P.mconj ? std::conj(powx[P.mpow]) : powx[P.mpow];
                            std::complex<double> zn = P.nconj ? std::conj(powy[P.npow]) : powy[P.npow];
                            ph = zm * zn;
                            break;
                        }
                        case QMode::RealPow: {
                            std::complex<double> zn = P.nconj ? std::conj(powy[P.npow]) : powy[P.npow];
                            ph = zr[P.ridx] * zn;
                            break;
                        }
                        case QMode::IntIdx: {
                            uint64_t idx = bM.reduce(bM.mulmod(P.mred, x) + bM.mulmod(P.nred, y));
                            ph = roots ? roots[idx] : cis2pi((double)idx * invM);
                            break;
                        }
                        case QMode::RealIdx: {
                            uint64_t idx = bM.mulmod(P.nred, y);
                            ph = cis2pi(q[k].rsq * (double)x * invM + (double)idx * invM);
                            break;
                        }
                    }
                    binD[k] += ph;
                    binC[k] += ph;
                }
            }
            for (size_t j = 0; j < binsz; ++j) {
                bins[j].add(chunkbins[j]);
                chunkbins[j] = {0.0, 0.0};
            }
            nunits += nfill;
            nfill = 0;
        };

        const int64_t jlo = seg * kSegment;
        const int64_t jhi = std::min(ncand, jlo + kSegment);
        for (int64_t j = jlo; j < jhi; ++j) {
            uint64_t x = (uint64_t)(st.x0 + j * st.xstep);
            uint64_t xmq = bq.reduce(x);
            if (chi[xmq] == 0) continue;
            xs[nfill++] = x;
            if (nfill == kChunk) flush();
        }
        flush();
        segterms[(size_t)seg] = 2 * nunits;
    }

    // ordered reduction across segments, then the single mu8 -> complex step
    std::vector<NeumaierC> total(binsz);
    int64_t tcount = 0;
    for (int64_t seg = 0; seg < nseg; ++seg) {
        const NeumaierC* bins = segbins.data() + (size_t)seg * binsz;
        for (size_t j = 0; j < binsz; ++j) total[j].add(bins[j].result());
        tcount += segterms[(size_t)seg];
    }
    for (int k = 0; k < nq; ++k) {
        NeumaierC acc;
        for (int t = 0; t < 8; ++t) {
            acc.add(cis8(t) * total[(size_t)t * nq + k].result());
            acc.add(cis8(t) * std::conj(total[(size_t)(8 + t) * nq + k].result()));
        }
        out[k] = acc.result();
        if (comp) comp[k] = acc.residual();
        if (terms) terms[k] = tcount;
    }
    (void)any_idx;
}

KloostermanValue kloosterman(const KloostermanQuery& q) {
    PhaseQuery pq = PhaseQuery::of_int(q.m, q.n);
    KloostermanValue v;
    kloosterman_batch(q.variant, q.weight2k, q.c, std::span(&pq, 1), &v.value, &v.comp,
                      &v.terms);
    return v;
}

// ---------------------------------------------------------------------------

Prop21Result relation_check(int64_t m, int64_t n, int64_t c_tilde, double tol) {
    if (c_tilde < 1 || c_tilde % 2 == 0)
        throw VariantParityMismatch("relation_check: c_tilde must be odd positive");
    const int64_t c = 2 * c_tilde;
    const double sqrt2 = std::sqrt(2.0);
    Prop21Result r;

    auto S = [&](int64_t mm, int64_t nn, int64_t cc, int w2k, Variant v) {
        return kloosterman({mm, nn, cc, w2k, v}).value;
    };

    int64_t mres = ((m % 4) + 4) % 4;
    {
        double sign = (mres == 0 || mres == 1) ? 1.0 : -1.0;
        r.err_half = std::abs(S(m, 4 * n, c, 1, Variant::ThetaEven) -
                              sign * sqrt2 * S(m, n, c_tilde, 1, Variant::ThetaOdd));
    }
    {
        double sign = (mres == 0 || mres == 3) ? -1.0 : 1.0;
        r.err_three_half = std::abs(S(m, 4 * n, c, 3, Variant::ThetaEven) -
                                    sign * sqrt2 * S(m, n, c_tilde, 3, Variant::ThetaOdd));
    }
    {
        double sign = ((m + n) % 2 == 0) ? -2.0 : 2.0;  // 2(-1)^{m+n+1}
        r.err_two = std::abs(S(2 * m, 2 * n, c, 4, Variant::ThetaEven) -
                             sign * S(m, n, c_tilde, 4, Variant::ThetaOdd));
    }
    r.ok_half = r.err_half <= tol;
    r.ok_three_half = r.err_three_half <= tol;
    r.ok_two = r.err_two <= tol;
    return r;
}

std::complex<double> special_S00(int64_t c, int weight2k, Variant variant) {
    if (weight2k != 3) throw std::invalid_argument("special_S00: closed form is for weight 3/2");
    if (variant == Variant::ThetaEven) {
        if (c < 2 || c % 2) throw VariantParityMismatch("special_S00: even variant needs even c");
        // nonzero exactly when c = 2n^2
        int64_t n = (int64_t)std::llround(std::sqrt((double)c / 2.0));
        if (2 * n * n != c) return 0.0;
        return std::sqrt(2.0) * cis8(-1) * (double)n * (double)euler_phi(2 * n);
    }
    if (variant == Variant::ThetaOdd) {
        if (c < 1 || c % 2 == 0) throw VariantParityMismatch("special_S00: odd variant needs odd c");
        int64_t n = (int64_t)std::llround(std::sqrt((double)c));
        if (n * n != c || n % 2 == 0) return 0.0;
        return cis8(3) * (double)n * (double)euler_phi(n);
    }
    throw std::invalid_argument("special_S00: theta variants only");
}

// ---------------------------------------------------------------------------

namespace {
int64_t ipow(int64_t p, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= p;
    return r;
}
}  // namespace

std::complex<double> alpha(const LocalFactorQuery& q) {
    if (q.weight2k != 1 && q.weight2k != 3)
        throw std::invalid_argument("alpha: weight2k must be 1 or 3");
    if (q.p == 2) {
        if (q.nu < 2) throw std::domain_error("alpha: p = 2 requires nu >= 2");
        int64_t P = ipow(2, q.nu);
        NeumaierC acc;
        for (int64_t a = 1; a <= P; a += 2) {
            int sym = kronecker(P, a);
            if (sym == 0) continue;
            int t = (q.weight2k * epsilon(a).exponent + (sym < 0 ? 4 : 0)) & 7;
            int64_t na = ((q.n % P) * (a % P)) % P;
            if (na < 0) na += P;
            acc.add(cis8(t) * cis2pi((double)na / (double)P));
        }
        return acc.result();
    }
    if (q.nu < 0) throw std::domain_error("alpha: nu < 0");
    if (q.nu == 0) return 1.0;
    int64_t P = ipow(q.p, q.nu);
    int epsP = epsilon(P).exponent;
    NeumaierC acc;
    for (int64_t a = 1; a < P; ++a) {
        if (a % q.p == 0) continue;
        int sym = (q.nu & 1) ? kronecker(a, q.p) : 1;
        int t = ((-q.weight2k * epsP) + (sym < 0 ? 4 : 0)) & 7;
        int64_t na = ((q.n % P) * a) % P;
        if (na < 0) na += P;
        acc.add(cis8(((t % 8) + 8) % 8) * cis2pi((double)na / (double)P));
    }
    return acc.result();
}

std::complex<double> alpha_closed(const LocalFactorQuery& q) {
    if (q.weight2k != 1 && q.weight2k != 3)
        throw std::invalid_argument("alpha_closed: weight2k must be 1 or 3");
    const int lambda = (q.weight2k - 1) / 2;
    const bool n_is_zero = (q.n == 0);
    if (q.p == 2) {
        if (q.nu < 2) throw std::domain_error("alpha_closed: p = 2 requires nu >= 2");
        const int h = n_is_zero ? 0 : valuation(q.n, 2);  // nu_2(n), n = 0 acts as infinity
        if (q.nu % 2 == 0) {
            if (!n_is_zero && h < q.nu - 2) return 0.0;
            int64_t l = n_is_zero ? 0 : q.n / (int64_t(1) << (q.nu - 2));
            // e(l/4)(1 + (-1)^l i^{2k}) 2^{nu-2}
            std::complex<double> bracket =
                1.0 + ((l % 2 == 0) ? 1.0 : -1.0) * cis8(2 * q.weight2k);
            return cis8((int)(((l % 4) + 4) % 4) * 2) * bracket * std::ldexp(1.0, q.nu - 2);
        }
        if (n_is_zero || h < q.nu - 3) return 0.0;
        int64_t l = q.n / (int64_t(1) << (q.nu - 3));
        if (l % 2 == 0) return 0.0;
        if ((l - q.weight2k) % 4 != 0) return 0.0;  // the 1_Z((l-2k)/4) indicator
        return 4.0 * cis8((int)(((l % 8) + 8) % 8)) * std::ldexp(1.0, q.nu - 3);
    }
    if (q.nu == 0) return 1.0;
    const int h = n_is_zero ? 0 : valuation(q.n, q.p);
    if (q.nu % 2 == 1) {
        if (n_is_zero || q.nu != h + 1) return 0.0;
        int64_t Pm1 = ipow(q.p, q.nu - 1);  // <= |n| here
        int64_t top = (lambda % 2 ? -1 : 1) * (q.n / Pm1);
        return (double)Pm1 * std::sqrt((double)q.p) * (double)kronecker(top, q.p);
    }
    if (n_is_zero || q.nu <= h)
        return std::pow((double)q.p, (double)(q.nu - 1)) * (double)(q.p - 1);
    if (q.nu == h + 1) return -std::pow((double)q.p, (double)(q.nu - 1));
    return 0.0;
}

std::complex<double> local_A(int64_t p, int64_t n, int weight2k, double s) {
    if (weight2k != 1 && weight2k != 3)
        throw std::invalid_argument("local_A: weight2k must be 1 or 3");
    if (!(s > 0.5)) throw std::domain_error("local_A: s must exceed 1/2");
    const int lambda = (weight2k - 1) / 2;
    auto powq = [&](double base, double e) { return std::pow(base, e); };
    if (p == 2) {
        std::complex<double> pref = std::pow(2.0, -4.0 * s) * (1.0 + cis8(2 * weight2k));
        if (n == 0) {
            // sum over even nu >= 2 of 2^{nu-2} 2^{-2 s nu}
            double u = std::pow(2.0, 2.0 - 4.0 * s);
            return pref * std::pow(2.0, 4.0 * s) * 0.25 * u / (1.0 - u);
        }
        int h = valuation(n, 2);
        double w = 1.0 - 2.0 * s;  // exponent unit (1-2s)
        double g2 = std::pow(2.0, 2.0 * w);
        auto geom = [&](int top) {  // (1 - 2^{top(1-2s)}) / (1 - 2^{2(1-2s)})
            return (1.0 - std::pow(2.0, top * w)) / (1.0 - g2);
        };
        if (h % 2 == 1) return pref * (geom(h - 1) - std::pow(2.0, (h - 1) * w));
        int64_t core = n >> h;  // odd
        int64_t cm4 = ((core % 4) + 4) % 4;
        int64_t mk4 = ((-(int64_t)weight2k % 4) + 4) % 4;
        if (h == 0 && cm4 == mk4) return pref * (-1.0);
        if (cm4 == mk4) return pref * (geom(h) - std::pow(2.0, h * w));
        // core = 2k mod 4 case
        int64_t top = (lambda % 2 ? -1 : 1) * core;
        double tail = kronecker(top, 2) * std::pow(2.0, 0.5 + (h + 1) * w);
        return pref * (geom(h + 2) + tail);
    }
    if (n == 0) {
        double v = powq((double)p, 2.0 * (1.0 - 2.0 * s));
        return 1.0 + (1.0 - 1.0 / (double)p) * v / (1.0 - v);
    }
    int h = valuation(n, p);
    double w = 1.0 - 2.0 * s;
    double v = powq((double)p, 2.0 * w);
    auto band = [&](int top) {  // (p^{2(1-2s)} - p^{top(1-2s)}) / (1 - p^{2(1-2s)})
        return (v - powq((double)p, top * w)) / (1.0 - v);
    };
    if (h % 2 == 1)
        return 1.0 + band(h + 1) * (1.0 - 1.0 / (double)p) -
               powq((double)p, (h + 1) * w - 1.0);
    int64_t core = n / ipow(p, h);
    int64_t top = (lambda % 2 ? -1 : 1) * core;
    return 1.0 + band(h + 2) * (1.0 - 1.0 / (double)p) +
           (double)kronecker(top, p) * powq((double)p, (h + 1) * w - 0.5);
}

bool multiplicativity_check(int64_t n, int64_t c, int weight2k, Variant variant,
                            double tol, double* err) {
    std::complex<double> lhs = kloosterman({0, n, c, weight2k, variant}).value;
    std::complex<double> rhs;
    if (variant == Variant::ThetaEven) {
        rhs = 1.0;
        for (auto [p, e] : factor(2 * c))
            rhs *= alpha({p, e, n, weight2k, 0.75});
    } else if (variant == Variant::ThetaOdd) {
        rhs = cis8(weight2k);
        for (auto [p, e] : factor(c)) rhs *= alpha({p, e, n, weight2k, 0.75});
    } else {
        throw std::invalid_argument("multiplicativity_check: theta variants only");
    }
    double e = std::abs(lhs - rhs);
    if (err) *err = e;
    return e <= tol;
}

// ---------------------------------------------------------------------------

std::vector<int64_t> geometric_grid(int64_t x_min, int64_t x_max, double ratio) {
    if (ratio <= 1.0) throw std::invalid_argument("geometric_grid: ratio must exceed 1");
    std::vector<int64_t> xs;
    for (double x = (double)x_max; x >= (double)x_min; x /= ratio)
        xs.push_back((int64_t)std::llround(x));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

std::vector<std::vector<Checkpoint>> partial_sum_multi(
    Variant v, int weight2k, std::span<const PhaseQuery> queries,
    const PartialSumOptions& opt) {
    const int nq = (int)queries.size();
    int64_t first = (v == Variant::ThetaEven) ? 2 : (v == Variant::ThetaOdd) ? 1
                    : (v == Variant::ThetaLevel4)                            ? 4
                                                                             : 1;
    int64_t stride = (v == Variant::ThetaLevel4) ? 4 : (v == Variant::Classical) ? 1 : 2;
    std::vector<int64_t> cps = opt.checkpoints;
    if (cps.empty()) cps = geometric_grid(std::max<int64_t>(opt.cutoff / 128, first),
                                          opt.cutoff, std::sqrt(2.0));

    std::vector<std::vector<Checkpoint>> streams((size_t)nq);
    std::vector<NeumaierC> acc((size_t)nq);
    size_t next_cp = 0;
    auto flush_below = [&](int64_t c) {
        while (next_cp < cps.size() && cps[next_cp] < c) {
            for (int k = 0; k < nq; ++k)
                streams[(size_t)k].push_back({cps[next_cp], acc[(size_t)k].result()});
            ++next_cp;
        }
    };

    sweep_moduli(
        first, stride, opt.cutoff, nq,
        [&](int64_t c, std::complex<double>* out) {
            kloosterman_batch(v, weight2k, c, queries, out);
        },
        [&](int64_t c, const std::complex<double>* vals) {
            flush_below(c);
            double div;
            switch (opt.divisor) {
                case Divisor::C: div = (double)c; break;
                case Divisor::C32: div = std::pow((double)c, 1.5); break;
                default: div = std::pow((double)c, 2.0 * opt.s); break;
            }
            for (int k = 0; k < nq; ++k) acc[(size_t)k].add(vals[k] / div);
        });
    flush_below(std::numeric_limits<int64_t>::max());
    return streams;
}

std::vector<Checkpoint> partial_sum(Variant v, int weight2k, const PhaseQuery& query,
                                    const PartialSumOptions& opt) {
    return partial_sum_multi(v, weight2k, std::span(&query, 1), opt)[0];
}

// ---------------------------------------------------------------------------

std::string KloostermanCache::key(Variant v, int weight2k, const PhaseQuery& q,
                                  int64_t c) const {
    char buf[160];
    if (q.integer)
        std::snprintf(buf, sizeof buf, "%s %d %lld %lld %lld", variant_name(v), weight2k,
                      (long long)q.m, (long long)q.n, (long long)c);
    else
        std::snprintf(buf, sizeof buf, "rv-%s %d %.17g %lld %lld", variant_name(v),
                      weight2k, q.rsq, (long long)q.n, (long long)c);
    return buf;
}

KloostermanCache::KloostermanCache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string variant;
        int w2k;
        if (!(ss >> variant >> w2k)) continue;
        std::string mfield;
        long long n, c;
        double re, im;
        if (!(ss >> mfield >> n >> c >> re >> im)) continue;
        std::ostringstream k;
        k << variant << ' ' << w2k << ' ' << mfield << ' ' << n << ' ' << c;
        entries_.emplace_back(k.str(), std::complex<double>(re, im));
    }
}

std::optional<std::complex<double>> KloostermanCache::lookup(Variant v, int weight2k,
                                                             const PhaseQuery& q,
                                                             int64_t c) const {
    std::string k = key(v, weight2k, q, c);
    for (const auto& [ek, val] : entries_)
        if (ek == k) return val;
    return std::nullopt;
}

void KloostermanCache::store(Variant v, int weight2k, const PhaseQuery& q, int64_t c,
                             std::complex<double> value) {
    std::string k = key(v, weight2k, q, c);
    entries_.emplace_back(k, value);
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    char buf[96];
    std::snprintf(buf, sizeof buf, " %.17g %.17g\n", value.real(), value.imag());
    out << k << buf;
}

}  // namespace rvkl
