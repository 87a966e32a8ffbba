#ifndef ASCOHOM_FACTOR_HPP
#define ASCOHOM_FACTOR_HPP

// Factorization over F_p: squarefree decomposition, distinct-degree
// factorization, then Cantor-Zassenhaus equal-degree splitting driven by a
// fixed-seed generator so results never depend on run order.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace ascohom {

struct Factor {
    Poly poly;  // monic irreducible
    int multiplicity;
    friend bool operator==(const Factor&, const Factor&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Factor& f) {
        return os << '(' << f.poly << ", " << f.multiplicity << ')';
    }
};

namespace detail {

// Squarefree factorization of a monic polynomial: pairs (g, k) with g
// squarefree and f = prod g^k.
inline std::vector<std::pair<Poly, int>> squarefree_parts(const Poly& f, int scale = 1) {
    std::vector<std::pair<Poly, int>> out;
    if (f.degree() < 1) return out;
    const std::uint32_t p = f.modulus();
    Poly df = f.derivative();
    if (df.is_zero()) {
        for (auto& [g, k] : squarefree_parts(f.pth_root(), scale * static_cast<int>(p))) out.emplace_back(g, k);
        return out;
    }
    Poly c = gcd(f, df);
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (!z.is_one()) out.emplace_back(z.monic(), i * scale);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) {
        // what remains is a p-th power
        for (auto& [g, k] : squarefree_parts(c.monic().pth_root(), scale * static_cast<int>(p))) out.emplace_back(g, k);
    }
    return out;
}

// Split a squarefree monic f into groups of irreducible factors of equal degree.
inline std::vector<std::pair<Poly, int>> distinct_degree(Poly f) {
    std::vector<std::pair<Poly, int>> out;
    const std::uint32_t p = f.modulus();
    const Poly x = Poly::x(p);
    Poly h = x % f;
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = powmod(h, p, f);
        Poly g = gcd(h - x, f);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

// Cantor-Zassenhaus for a squarefree product of irreducibles of degree d.
inline void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const std::uint32_t p = f.modulus();
    std::uniform_int_distribution<std::uint32_t> coin(0, p - 1);
    while (true) {
        Poly a(p);
        for (int i = 0; i < f.degree(); ++i) a.set_coeff(static_cast<std::size_t>(i), Fp(coin(rng), p));
        if (a.degree() < 1) continue;
        Poly g = gcd(a, f);
        if (g.is_one()) {
            if (p == 2) {
                // trace map a + a^2 + ... + a^(2^(d-1))
                Poly t = a % f, acc = t;
                for (int i = 1; i < d; ++i) {
                    t = t * t % f;
                    acc += t;
                }
                g = gcd(acc, f);
            } else {
                // a^((p^d - 1)/2) = N(a)^((p-1)/2), N(a) = a^(1 + p + ... + p^(d-1))
                Poly t = a % f, norm = t;
                for (int i = 1; i < d; ++i) {
                    t = powmod(t, p, f);
                    norm = norm * t % f;
                }
                Poly b = powmod(norm, (p - 1) / 2, f);
                g = gcd(b - Poly::constant(1, p), f);
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Monic irreducible factors with multiplicities, sorted canonically.
/// f equals lead(f) times the product of the factors.
inline std::vector<Factor> factor(const Poly& f) {
    if (f.is_zero()) throw precondition_error("UndefinedForZero", "cannot factor the zero polynomial");
    std::mt19937_64 rng(0x5eed5eedULL);
    std::vector<Factor> out;
    for (const auto& [part, k] : detail::squarefree_parts(f.monic())) {
        for (const auto& [group, d] : detail::distinct_degree(part)) {
            std::vector<Poly> irr;
            detail::equal_degree(group, d, rng, irr);
            for (auto& q : irr) out.push_back({std::move(q), k});
        }
    }
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
    // A factor of multiplicity a*p + b shows up once with b and once with a*p.
    std::vector<Factor> merged;
    for (auto& fac : out) {
        if (!merged.empty() && merged.back().poly == fac.poly)
            merged.back().multiplicity += fac.multiplicity;
        else
            merged.push_back(std::move(fac));
    }
    return merged;
}

/// Irreducibility via the Rabin-style check: no factor of degree <= deg/2.
inline bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    const std::uint32_t p = f.modulus();
    Poly g = f.monic();
    if (!gcd(g, g.derivative()).is_one()) return false;
    const Poly x = Poly::x(p);
    Poly h = x % g;
    for (int d = 1; 2 * d <= g.degree(); ++d) {
        h = powmod(h, p, g);
        if (!gcd(h - x, g).is_one()) return false;
    }
    return true;
}

}  // namespace ascohom

#endif
