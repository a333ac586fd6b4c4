#include "rvkl/modgroup.hpp"

#include <cmath>
#include <deque>

namespace rvkl {

namespace {
bool congruent_mod2(const Mat2Z& g, int a, int b, int c, int d) {
    auto m2 = [](int64_t x) { return ((x % 2) + 2) % 2; };
    return m2(g.a) == a && m2(g.b) == b && m2(g.c) == c && m2(g.d) == d;
}
}  // namespace

bool membership(const Mat2Z& g, Group group, int64_t level) {
    if (g.det() != 1) return false;
    switch (group) {
        case Group::SL2Z: return true;
        case Group::GammaTheta:
            return congruent_mod2(g, 1, 0, 0, 1) || congruent_mod2(g, 0, 1, 1, 0);
        case Group::Gamma2: return congruent_mod2(g, 1, 0, 0, 1);
        case Group::Gamma0_4: return ((g.c % 4) + 4) % 4 == 0;
        case Group::Gamma0_N:
            if (level <= 0) throw std::invalid_argument("membership: level required");
            return ((g.c % level) + level) % level == 0;
    }
    return false;
}

EighthRoot nu_theta_cap(const Mat2Z& g) {
    if (!membership(g, Group::GammaTheta)) throw NotInGroup("nu_theta_cap: not in Gamma_Theta");
    if (g.c == 0) {
        // gamma = ±T^{2t}; nu(T^{2t}) = 1 and nu(-I) = e(-1/4) in weight 1/2
        return g.d > 0 ? EighthRoot(0) : EighthRoot(-2);
    }
    if (g.c < 0) {
        // nu(gamma) = i nu(-gamma), -gamma having positive c
        return EighthRoot(2) * nu_theta_cap(g.neg());
    }
    if (g.c % 2 == 0) {
        // eps_d^{-1} (2c/d)
        int e = epsilon(g.d).exponent;
        int sym = kronecker(2 * g.c, g.d);
        return EighthRoot(-e + (sym < 0 ? 4 : 0));
    }
    // e(-1/8) eps_c (2d/c)
    int e = epsilon(g.c).exponent;
    int sym = kronecker(2 * g.d, g.c);
    return EighthRoot(-1 + e + (sym < 0 ? 4 : 0));
}

EighthRoot nu_theta_cap_alt(const Mat2Z& g) {
    if (!membership(g, Group::GammaTheta)) throw NotInGroup("nu_theta_cap_alt: not in Gamma_Theta");
    if (g.c == 0) return g.d > 0 ? EighthRoot(0) : EighthRoot(-2);
    if (g.c < 0) return EighthRoot(2) * nu_theta_cap_alt(g.neg());
    if (g.c % 2 == 0) {
        // i^{(d-1)/2} (c/|d|)
        int64_t j = (g.d - 1) / 2;
        int sym = kronecker(g.c, g.d < 0 ? -g.d : g.d);
        return EighthRoot((int)((j % 4) * 2) + (sym < 0 ? 4 : 0));
    }
    // e(-c/8) (d/c)
    int sym = kronecker(g.d, g.c);
    return EighthRoot((int)(-(g.c % 8)) + (sym < 0 ? 4 : 0));
}

std::complex<double> aut_factor(const Mat2Z& g, std::complex<double> tau) {
    return double(g.c) * tau + double(g.d);
}

std::complex<double> half_power(std::complex<double> z, int k2) {
    double k = 0.5 * k2;
    return std::polar(std::pow(std::abs(z), k), k * std::arg(z));
}

std::complex<double> cocycle_w(int k2, const Mat2Z& g1, const Mat2Z& g2,
                               std::complex<double> tau) {
    std::complex<double> j2 = aut_factor(g2, tau);
    std::complex<double> j1 = aut_factor(g1, g2.act(tau));
    std::complex<double> j12 = aut_factor(g1 * g2, tau);
    return half_power(j2, k2) * half_power(j1, k2) / half_power(j12, k2);
}

namespace {

Mat2Z normalize_sign(const Mat2Z& m) { return m.c > 0 ? m : m.neg(); }

// right-multiplication by A^e = [T^{2e}] and B^f = [(S T^2 S)^f]
Mat2Z mul_A(const Mat2Z& m, int64_t e) { return {m.a, m.b + 2 * e * m.a, m.c, m.d + 2 * e * m.c}; }
Mat2Z mul_B(const Mat2Z& m, int64_t f) { return {m.a - 2 * f * m.b, m.b, m.c - 2 * f * m.d, m.d}; }

}  // namespace

std::vector<CosetWord> enumerate_coset_B(int64_t max_c, int64_t max_d) {
    std::vector<CosetWord> out;
    struct Node {
        Mat2Z m;       // raw word value (sign not normalized)
        bool last_is_A;
        std::vector<std::pair<int, int>> powers;
    };
    std::deque<Node> queue;
    for (int64_t f = -max_c / 2; f <= max_c / 2; ++f) {
        if (f == 0) continue;
        Node n{mul_B(kIdentity, f), false, {{(int)f, 0}}};
        queue.push_back(n);
    }
    while (!queue.empty()) {
        Node n = queue.front();
        queue.pop_front();
        if (std::llabs(n.m.c) <= max_c && std::llabs(n.m.d) <= max_d)
            out.push_back({n.powers, normalize_sign(n.m)});
        if (!n.last_is_A) {
            // append A^e, bounded by |d + 2ec| <= max_d
            int64_t c = n.m.c, d = n.m.d;
            for (int64_t e = -(max_d + std::llabs(d)) / (2 * std::llabs(c)) - 1;
                 e <= (max_d + std::llabs(d)) / (2 * std::llabs(c)) + 1; ++e) {
                if (e == 0) continue;
                if (std::llabs(d + 2 * e * c) > max_d) continue;
                Node child{mul_A(n.m, e), true, n.powers};
                child.powers.back().second = (int)e;
                queue.push_back(child);
            }
        } else {
            // append B^f, bounded by |c - 2fd| <= max_c
            int64_t c = n.m.c, d = n.m.d;
            for (int64_t f = -(max_c + std::llabs(c)) / (2 * std::llabs(d)) - 1;
                 f <= (max_c + std::llabs(c)) / (2 * std::llabs(d)) + 1; ++f) {
                if (f == 0) continue;
                if (std::llabs(c - 2 * f * d) > max_c) continue;
                Node child{mul_B(n.m, f), false, n.powers};
                child.powers.emplace_back((int)f, 0);
                queue.push_back(child);
            }
        }
    }
    return out;
}

std::vector<Mat2Z> enumerate_coset_B_tilde(int64_t max_c, int64_t max_d) {
    // gamma S has bottom row (d, -c) for gamma with bottom row (c, d)
    std::vector<Mat2Z> out{kS};
    for (const auto& w : enumerate_coset_B(max_d, max_c))
        out.push_back(normalize_sign(w.matrix * kS));
    return out;
}

}  // namespace rvkl
