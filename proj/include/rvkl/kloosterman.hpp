#pragma once
// Exact-phase Kloosterman sums twisted by powers of the theta multiplier,
// their structural relations, local Euler factors, and streamed partial sums
// over increasing modulus.
//
// Four variants share one kernel.  Writing M for the enumeration modulus and
// nu for nu_Theta:
//
//   ThetaEven   c even,  M = 2c: sum over ad = 1 (mod 2c) of
//               eps_d^{2k} (2c/d)^{2k} e((ma+nd)/2c)
//   ThetaOdd    c odd,   M = 2c: sum over even a,d with ad = 1 (mod c) of
//               e(k/4) eps_c^{-2k} (2d/c)^{2k} e((ma+nd)/2c)
//   ThetaLevel4 4|c,     M = c:  the width-1 sums with multiplier nu_theta^{2k}
//   Classical   any c,   M = c:  untwisted e((ma+nd)/c)
//
// Real-variable sums replace the integer frequency m by a real rsq and pin
// the a-summation to the window (-M/2, M/2); that window is part of the
// definition, not a normalization choice.
//
// All series and batch evaluations are deterministic for any worker count:
// each modulus is evaluated independently in a fixed chunk order and folded
// sequentially in increasing modulus order (see summation.hpp).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rvkl/arith.hpp"
#include "rvkl/summation.hpp"

namespace rvkl {

enum class Variant { ThetaEven, ThetaOdd, ThetaLevel4, Classical };

const char* variant_name(Variant v);

struct VariantParityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct KloostermanQuery {
    int64_t m = 0;
    int64_t n = 0;
    int64_t c = 2;
    int weight2k = 4;  // the exponent 2k in nu_Theta^{2k}; ignored by Classical
    Variant variant = Variant::ThetaEven;
};

struct KloostermanValue {
    std::complex<double> value;
    int64_t terms = 0;  // number of summed residue classes
    double comp = 0.0;  // compensation residual of the final reduction
};

// One frequency slot of a batched evaluation: either an integer m or a real
// rsq (the paper's r^2, supplied directly).
struct PhaseQuery {
    bool integer = true;
    int64_t m = 0;
    double rsq = 0.0;
    int64_t n = 0;

    static PhaseQuery of_int(int64_t m, int64_t n) { return {true, m, 0.0, n}; }
    static PhaseQuery of_real(double rsq, int64_t n) { return {false, 0, rsq, n}; }
};

// All queries evaluated against one modulus in a single pass over the units.
// out/comp/terms must hold q.size() entries (comp/terms may be null).
void kloosterman_batch(Variant v, int weight2k, int64_t c,
                       std::span<const PhaseQuery> q, std::complex<double>* out,
                       double* comp = nullptr, int64_t* terms = nullptr);

// Per-thread root-of-unity tables are kept for the current modulus; moduli
// whose table would exceed this byte cap fall back to on-the-fly evaluation.
void set_root_table_cap(int64_t bytes);

KloostermanValue kloosterman(const KloostermanQuery& q);

// ---------------------------------------------------------------------------
// Structural relations
// ---------------------------------------------------------------------------

// Even/odd modulus relations at c = 2*c_tilde (c_tilde odd):
//   S(m,4n,c,nu)    = ±sqrt2 S(m,n,c~,nu)     (+ iff m = 0,1 mod 4)
//   S(m,4n,c,nu^3)  = ∓sqrt2 S(m,n,c~,nu^3)   (- iff m = 0,3 mod 4)
//   S(2m,2n,c,nu^4) = 2(-1)^{m+n+1} S(m,n,c~,nu^4)
struct Prop21Result {
    double err_half = 0.0;
    double err_three_half = 0.0;
    double err_two = 0.0;
    bool ok_half = false;
    bool ok_three_half = false;
    bool ok_two = false;
};
Prop21Result relation_check(int64_t m, int64_t n, int64_t c_tilde, double tol = 1e-9);

// Closed forms for S(0,0,c,nu^3):
//   even c: sqrt2 e(-1/8) n phi(2n) when c = 2n^2, else 0
//   odd  c: e(3/8) n phi(n) when c = n^2 with n odd, else 0
std::complex<double> special_S00(int64_t c, int weight2k, Variant variant);

// ---------------------------------------------------------------------------
// Local factors of the n=0 Kloosterman-Selberg zeta functions
// ---------------------------------------------------------------------------

struct LocalFactorQuery {
    int64_t p = 2;
    int nu = 2;  // p = 2 requires nu >= 2 (the 2-factor starts there)
    int64_t n = 0;
    int weight2k = 3;  // in {1, 3}
    double s = 0.75;   // in (1/2, 1.001]
};

// alpha_{2k}(p^nu, n) as a direct residue sum.
std::complex<double> alpha(const LocalFactorQuery& q);
// The same value from the even/odd-nu case tables; independent of alpha().
std::complex<double> alpha_closed(const LocalFactorQuery& q);

// A_{2k}(p, n, s): the geometric-series closed form of the local factor.
std::complex<double> local_A(int64_t p, int64_t n, int weight2k, double s);

// Checks S(0,n,c,nu^{2k}) = [e(k/4) for odd c] * prod_{p^nu || M'} alpha,
// where M' = 2c for even c and c for odd c.
bool multiplicativity_check(int64_t n, int64_t c, int weight2k, Variant variant,
                            double tol = 1e-9, double* err = nullptr);

// ---------------------------------------------------------------------------
// Streamed partial sums  sum_{c <= x} S(m,n,c,nu^{2k}) / c^powers
// ---------------------------------------------------------------------------

enum class Divisor { C, C32, C2S };

struct Checkpoint {
    int64_t x;
    std::complex<double> value;
};

struct PartialSumOptions {
    int64_t cutoff = 20000;
    Divisor divisor = Divisor::C;
    double s = 0.75;  // used by Divisor::C2S
    std::vector<int64_t> checkpoints;  // ascending; filled geometrically if empty
};

// Geometric checkpoint grid in [x_min, x_max] with the given ratio.
std::vector<int64_t> geometric_grid(int64_t x_min, int64_t x_max, double ratio);

// One pass over the moduli of the variant, all queries at once; returns one
// checkpoint stream per query.
std::vector<std::vector<Checkpoint>> partial_sum_multi(
    Variant v, int weight2k, std::span<const PhaseQuery> queries,
    const PartialSumOptions& opt);

std::vector<Checkpoint> partial_sum(Variant v, int weight2k, const PhaseQuery& query,
                                    const PartialSumOptions& opt);

// ---------------------------------------------------------------------------
// Disk cache: one record per line
//   <variant> <weight2k> <m> <n> <c> <re> <im>          (integer sums)
//   rv-<variant> <weight2k> <rsq> <n> <c> <re> <im>     (real-variable sums)
// re/im/rsq are printed with 17 significant digits.
// ---------------------------------------------------------------------------
class KloostermanCache {
  public:
    KloostermanCache() = default;
    explicit KloostermanCache(std::string path);

    std::optional<std::complex<double>> lookup(Variant v, int weight2k,
                                               const PhaseQuery& q, int64_t c) const;
    void store(Variant v, int weight2k, const PhaseQuery& q, int64_t c,
               std::complex<double> value);
    size_t size() const { return entries_.size(); }

  private:
    std::string path_;
    std::vector<std::pair<std::string, std::complex<double>>> entries_;
    std::string key(Variant v, int weight2k, const PhaseQuery& q, int64_t c) const;
};

}  // namespace rvkl
