// rvkl: Kloosterman sums, modular q-series, and radial Fourier interpolation
// basis functions on the command line.
//
// Exit codes: 0 success / all checks pass, 1 check failures, 2 usage or
// configuration errors.
//
// Every flag has an RVKL_<NAME> environment override; precedence is
// config file < command line < environment.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rvkl/basis.hpp"
#include "rvkl/kloosterman.hpp"
#include "rvkl/modforms.hpp"
#include "rvkl/rv.hpp"
#include "rvkl/verify.hpp"

namespace {

using namespace rvkl;

struct GlobalOpts {
    int workers = 0;
    int64_t cutoff = 20000;
    int blocks = 8;
    double tol = 5e-3;
    std::string cache_path;
    std::string output = "csv";  // csv | jsonl | table
    uint64_t seed = 20240901;
    std::string config_path;
};

// environment overrides: RVKL_WORKERS, RVKL_CUTOFF, ... beat parsed flags
void apply_env(GlobalOpts& g) {
    auto get = [](const char* name) { return std::getenv(name); };
    if (const char* v = get("RVKL_WORKERS")) g.workers = std::atoi(v);
    if (const char* v = get("RVKL_CUTOFF")) g.cutoff = std::atoll(v);
    if (const char* v = get("RVKL_BLOCKS")) g.blocks = std::atoi(v);
    if (const char* v = get("RVKL_TOL")) g.tol = std::atof(v);
    if (const char* v = get("RVKL_CACHE_PATH")) g.cache_path = v;
    if (const char* v = get("RVKL_OUTPUT_FORMAT")) g.output = v;
    if (const char* v = get("RVKL_SEED")) g.seed = std::strtoull(v, nullptr, 10);
}

Variant parse_variant(const std::string& s) {
    if (s == "even") return Variant::ThetaEven;
    if (s == "odd") return Variant::ThetaOdd;
    if (s == "level4") return Variant::ThetaLevel4;
    if (s == "classical") return Variant::Classical;
    throw CLI::ValidationError("--variant", "expected even|odd|level4|classical");
}

// "a:b:step" or a single number
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> xs;
    if (s.empty()) return xs;
    auto c1 = s.find(':');
    if (c1 == std::string::npos) {
        xs.push_back(std::stod(s));
        return xs;
    }
    auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::invalid_argument("grid: expected a:b:step");
    double a = std::stod(s.substr(0, c1));
    double b = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    double step = std::stod(s.substr(c2 + 1));
    if (step <= 0.0) throw std::invalid_argument("grid: step must be positive");
    for (double x = a; x <= b + 1e-12; x += step) xs.push_back(x);
    return xs;
}

int cmd_kloosterman(const GlobalOpts& g, int64_t m, int64_t n, int64_t c, int weight,
                    const std::string& variant, double range, bool has_rsq, double rsq) {
    Variant v = parse_variant(variant);
    if (range > 0.0) {
        PartialSumOptions opt;
        opt.cutoff = (int64_t)range;
        PhaseQuery q = has_rsq ? PhaseQuery::of_real(rsq, n) : PhaseQuery::of_int(m, n);
        auto stream = partial_sum(v, weight, q, opt);
        std::printf("x,re,im\n");
        for (const auto& cp : stream)
            std::printf("%lld,%.17g,%.17g\n", (long long)cp.x, cp.value.real(),
                        cp.value.imag());
        return 0;
    }
    std::complex<double> value;
    if (has_rsq) {
        value = rv_kloosterman({rsq, n, c, weight, v});
    } else {
        KloostermanCache cache;
        bool cached = false;
        if (!g.cache_path.empty()) {
            cache = KloostermanCache(g.cache_path);
            PhaseQuery q = PhaseQuery::of_int(m, n);
            if (auto hit = cache.lookup(v, weight, q, c)) {
                value = *hit;
                cached = true;
            }
        }
        if (!cached) {
            value = kloosterman({m, n, c, weight, v}).value;
            if (!g.cache_path.empty())
                cache.store(v, weight, PhaseQuery::of_int(m, n), c, value);
        }
    }
    std::printf("%.17g %.17g\n", value.real(), value.imag());
    return 0;
}

int cmd_basis(const GlobalOpts& g, int dim, int64_t n, const std::string& grid,
              const std::string& variant) {
    BasisVariant var = variant == "tilde" ? BasisVariant::Tilde : BasisVariant::Plain;
    TruncationPolicy pol{g.cutoff, g.blocks, g.tol};
    std::vector<double> rs = parse_grid(grid);
    std::vector<BigBQuery> qs;
    for (double r : rs) qs.push_back({n, r});
    auto vals = basis_b_batch(dim, var, qs, pol);
    std::printf("dim,n,variant,r,value,oscillation\n");
    for (size_t i = 0; i < qs.size(); ++i)
        std::printf("%d,%lld,%s,%.17g,%.17g,%.17g\n", dim, (long long)n,
                    var == BasisVariant::Tilde ? "tilde" : "plain", rs[i], vals[i].value,
                    vals[i].oscillation);
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite) {
    VerifyConfig cfg;
    if (!g.config_path.empty()) {
        std::string err;
        if (!load_config_file(g.config_path, cfg, err)) {
            std::fprintf(stderr, "rvkl: %s\n", err.c_str());
            return 2;
        }
    }
    cfg.seed = g.seed;
    auto reports = run_suite(suite, cfg);
    if (g.output == "jsonl")
        std::fputs(report_jsonl(reports).c_str(), stdout);
    else
        std::fputs(report_table(reports).c_str(), stdout);
    return suite_exit_code(reports);
}

int cmd_zeta(const GlobalOpts&, int64_t p, int64_t n, double s, int weight, int nu,
             int64_t product_below) {
    if (nu >= 0) {
        auto a = alpha({p, nu, n, weight, s});
        std::printf("%.17g %.17g\n", a.real(), a.imag());
        return 0;
    }
    if (product_below > 0) {
        // partial Euler product over p' <= bound (p' = 2 included per even-c zeta)
        std::complex<double> prod = local_A(2, n, weight, s);
        for (int64_t q = 3; q <= product_below; q += 2) {
            bool prime = true;
            for (int64_t d = 3; d * d <= q; d += 2)
                if (q % d == 0) {
                    prime = false;
                    break;
                }
            if (prime) prod *= local_A(q, n, weight, s);
        }
        std::printf("%.17g %.17g\n", prod.real(), prod.imag());
        return 0;
    }
    auto a = local_A(p, n, weight, s);
    std::printf("%.17g %.17g\n", a.real(), a.imag());
    return 0;
}

int cmd_qseries(const GlobalOpts&, const std::string& form, int64_t order) {
    QSeries s;
    if (form == "theta") {
        s = theta_cap_series(order);
    } else if (form == "theta3") {
        auto t = theta_cap_series(order);
        s = t * t * t;
    } else if (form == "e2") {
        s = eisenstein_e2_series(order);
    } else if (form == "a4") {
        s = QSeries::zero(true, 0, order);
        for (int64_t n = 1; n <= order; ++n) s.set(n, (double)a4_coefficient(n));
    } else if (form == "hstar") {
        // holomorphic coefficients H(n) + r3(n)/48 of e^{pi i n tau}, n0 = -1/16
        s = QSeries::zero(true, 0, order);
        s.set(0, -1.0 / 16.0);
        for (int64_t n = 1; n <= order; ++n)
            s.set(n, (double)hurwitz12(n) / 12.0 + (double)r3(n) / 48.0);
    } else if (form == "zagier") {
        s = QSeries::zero(false, 0, order);
        s.set(0, -1.0 / 12.0);
        for (int64_t n = 1; n <= order; ++n) s.set(n, (double)hurwitz12(n) / 12.0);
    } else {
        throw CLI::ValidationError("--form", "expected theta|theta3|e2|a4|hstar|zagier");
    }
    std::fputs(qseries_export(s).c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kloosterman sums and radial Fourier interpolation bases"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--workers", g.workers, "worker threads (0 = all)");
    app.add_option("--cutoff", g.cutoff, "series cutoff")->check(CLI::Range((int64_t)64, (int64_t)100000000));
    app.add_option("--blocks", g.blocks, "Cesaro averaging window");
    app.add_option("--tol", g.tol, "oscillation tolerance");
    app.add_option("--cache-path", g.cache_path, "Kloosterman value cache file");
    app.add_option("--output-format", g.output, "csv | jsonl | table");
    app.add_option("--seed", g.seed, "seed for randomized sweeps");
    app.add_option("--config", g.config_path, "key = value config file");

    auto* ck = app.add_subcommand("kloosterman", "evaluate S(m,n,c) or partial sums");
    int64_t m = 0, n = 0, c = 0;
    int weight = 4;
    std::string variant = "even";
    double range = 0.0, rsq = 0.0;
    bool has_rsq = false;
    ck->add_option("--m", m, "integer frequency m");
    auto* rsq_opt = ck->add_option("--rsq", rsq, "real frequency r^2 (real-variable sum)");
    ck->add_option("--n", n, "integer frequency n");
    auto* copt = ck->add_option("--c", c, "modulus");
    ck->add_option("--weight", weight, "multiplier exponent 2k");
    ck->add_option("--variant", variant, "even|odd|level4|classical");
    ck->add_option("--range", range, "stream partial sums up to this cutoff");

    auto* cb = app.add_subcommand("basis", "interpolation basis values");
    int dim = 4;
    int64_t bn = 1;
    std::string grid = "1.0", bvariant = "plain";
    cb->add_option("--dim", dim, "dimension 3 or 4")->check(CLI::IsMember({3, 4}));
    cb->add_option("--n", bn, "node index");
    cb->add_option("--r-grid", grid, "r values, a:b:step or a single value");
    cb->add_option("--variant", bvariant, "plain|tilde")
        ->check(CLI::IsMember({"plain", "tilde"}));

    auto* cv = app.add_subcommand("verify", "run a verification suite");
    std::string suite = "exact";
    cv->add_option("--suite", suite, "exact|analytic|all")
        ->check(CLI::IsMember({"exact", "analytic", "all"}));

    auto* cz = app.add_subcommand("zeta", "local factors A_{2k}(p,n,s)");
    int64_t zp = 3, zn = 1;
    double zs = 0.75;
    int zweight = 3, znu = -1;
    int64_t zprod = 0;
    cz->add_option("--p", zp, "prime");
    cz->add_option("--n", zn, "frequency n");
    cz->add_option("--s", zs, "spectral parameter");
    cz->add_option("--weight", zweight, "multiplier exponent 2k (1 or 3)");
    cz->add_option("--nu", znu, "return alpha_{2k}(p^nu, n) instead");
    cz->add_option("--product-below", zprod, "partial Euler product over primes <= bound");

    auto* cq = app.add_subcommand("qseries", "coefficient dumps");
    std::string form = "theta";
    int64_t order = 100;
    cq->add_option("--form", form, "theta|theta3|e2|a4|hstar|zagier");
    cq->add_option("--order", order, "truncation order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    apply_env(g);
    set_workers(g.workers);

    try {
        if (ck->parsed()) {
            if (!*copt && range <= 0.0) {
                std::fprintf(stderr, "rvkl kloosterman: --c is required\n");
                return 2;
            }
            has_rsq = rsq_opt->count() > 0;
            return cmd_kloosterman(g, m, n, c, weight, variant, range, has_rsq, rsq);
        }
        if (cb->parsed()) return cmd_basis(g, dim, bn, grid, bvariant);
        if (cv->parsed()) return cmd_verify(g, suite);
        if (cz->parsed()) return cmd_zeta(g, zp, zn, zs, zweight, znu, zprod);
        if (cq->parsed()) return cmd_qseries(g, form, order);
    } catch (const VariantParityMismatch& e) {
        std::fprintf(stderr, "rvkl: %s\n", e.what());
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "rvkl: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "rvkl: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "rvkl: error: %s\n", e.what());
        return 1;
    }
    return 2;
}
