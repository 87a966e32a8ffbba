#include <gtest/gtest.h>

#include <random>

#include "ascohom/rational.hpp"

using namespace ascohom;

namespace {

Poly P(std::vector<std::int64_t> c, std::uint32_t p) { return Poly(std::move(c), p); }
RationalFunction R(std::vector<std::int64_t> n, std::vector<std::int64_t> d, std::uint32_t p) {
    return RationalFunction(P(std::move(n), p), P(std::move(d), p));
}

Poly random_poly(int deg, std::uint32_t p, std::mt19937_64& rng) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1);
    for (auto& v : c) v = static_cast<std::int64_t>(rng() % p);
    c.back() = 1 + static_cast<std::int64_t>(rng() % (p - 1));
    return Poly(c, p);
}

// Brute force: a monic poly of degree n is irreducible iff no monic poly of
// degree 1..n/2 divides it.
bool brute_irreducible(const Poly& f) {
    const std::uint32_t p = f.modulus();
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        std::size_t count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (std::size_t code = 0; code < count; ++code) {
            std::vector<std::int64_t> c;
            std::size_t v = code;
            for (int i = 0; i < d; ++i) {
                c.push_back(static_cast<std::int64_t>(v % p));
                v /= p;
            }
            c.push_back(1);
            if ((f % Poly(c, p)).is_zero()) return false;
        }
    }
    return f.degree() >= 1;
}

}  // namespace

TEST(Poly, DivisionContractAndDegrees) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        Poly f = random_poly(static_cast<int>(rng() % 9), 7, rng), g = random_poly(1 + static_cast<int>(rng() % 4), 7, rng);
        auto [q, r] = f.divmod(g);
        EXPECT_EQ(q * g + r, f);
        EXPECT_LT(r.degree(), g.degree());
        EXPECT_EQ((f * g).degree(), f.degree() + g.degree());
    }
}

TEST(Poly, TaylorShiftAgreesWithEvaluation) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        Poly f = random_poly(6, 5, rng);
        Fp a(static_cast<std::int64_t>(rng() % 5), 5);
        Poly g = f.taylor_shift(a);
        for (std::int64_t x = 0; x < 5; ++x) EXPECT_EQ(g.eval(Fp(x, 5)), f.eval(Fp(x, 5) + a));
    }
}

TEST(Factor, Examples) {
    auto f1 = factor(P({-1, 0, 1}, 3));
    ASSERT_EQ(f1.size(), 2u);
    // canonical order compares little-endian coefficients: x+1 = [1,1] before x-1 = [2,1]
    EXPECT_EQ(f1[0], (Factor{P({1, 1}, 3), 1}));
    EXPECT_EQ(f1[1], (Factor{P({-1, 1}, 3), 1}));

    auto f2 = factor(P({1, 0, 1}, 3));
    ASSERT_EQ(f2.size(), 1u);
    EXPECT_EQ(f2[0], (Factor{P({1, 0, 1}, 3), 1}));
    for (std::int64_t a = 0; a < 3; ++a) EXPECT_FALSE(P({1, 0, 1}, 3).eval(Fp(a, 3)).is_zero());

    auto f3 = factor(P({0, 0, 0, 0, 0, 0, 1}, 5));
    ASSERT_EQ(f3.size(), 1u);
    EXPECT_EQ(f3[0], (Factor{P({0, 1}, 5), 6}));
}

TEST(Factor, RandomProductsReassembleIntoIrreducibles) {
    std::mt19937_64 rng(5);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        for (int t = 0; t < 25; ++t) {
            Poly f = Poly::constant(1 + static_cast<std::int64_t>(rng() % (p - 1)), p);
            int parts = 1 + static_cast<int>(rng() % 4);
            for (int k = 0; k < parts; ++k) {
                Poly g = random_poly(1 + static_cast<int>(rng() % 4), p, rng);
                f *= pow(g, 1 + rng() % (p + 2));
            }
            auto facs = factor(f);
            Poly prod = Poly::constant(f.lead());
            for (std::size_t i = 0; i < facs.size(); ++i) {
                EXPECT_TRUE(facs[i].poly.is_monic());
                EXPECT_TRUE(brute_irreducible(facs[i].poly)) << facs[i].poly;
                if (i) {
                    EXPECT_TRUE(facs[i - 1].poly < facs[i].poly);
                }
                prod *= pow(facs[i].poly, static_cast<std::uint64_t>(facs[i].multiplicity));
            }
            EXPECT_EQ(prod, f) << "p=" << p;
        }
    }
}

TEST(Factor, IrreducibilityTestAgreesWithBruteForce) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        std::uint32_t p = (t % 3 == 0) ? 2 : (t % 3 == 1 ? 3 : 5);
        Poly f = random_poly(1 + static_cast<int>(rng() % 6), p, rng).monic();
        EXPECT_EQ(is_irreducible(f), brute_irreducible(f)) << f;
    }
}

TEST(RationalFunction, CanonicalForm) {
    RationalFunction f = R({0, 2}, {0, 0, 4}, 5);  // 2x / 4x^2 = 3/x
    EXPECT_EQ(f.num(), P({3}, 5));
    EXPECT_EQ(f.den(), P({0, 1}, 5));
    EXPECT_EQ(R({0}, {1, 2}, 5).den(), P({1}, 5));
}

TEST(Ord, Examples) {
    const std::uint32_t p = 3;
    EXPECT_EQ(ord_at(R({1}, {0, 1}, 5), Place::rational(Fp(0, 5))), -1);
    EXPECT_EQ(ord_at(RationalFunction(P({0, 0, 0, 1}, 5)), Place::infinity(5)), -3);
    EXPECT_EQ(ord_at(R({1, 0, 1}, {0, 1}, p), Place::finite(P({1, 0, 1}, p))), 1);
    EXPECT_THROW(ord_at(RationalFunction(p), Place::infinity(p)), Error);
}

TEST(Ord, DegreeFormulaOnRandomFunctions) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        std::uint32_t p = (t % 2) ? 3 : 7;
        RationalFunction f(random_poly(static_cast<int>(rng() % 7), p, rng), random_poly(static_cast<int>(rng() % 7), p, rng));
        int total = 0;
        for (const auto& [q, n] : divisor(f)) {
            EXPECT_EQ(ord_at(f, q), n);
            total += n * q.degree();
        }
        EXPECT_EQ(total, 0);
    }
}

TEST(Ord, Multiplicative) {
    std::mt19937_64 rng(17);
    const std::uint32_t p = 5;
    for (int t = 0; t < 30; ++t) {
        RationalFunction f(random_poly(3, p, rng), random_poly(4, p, rng));
        RationalFunction g(random_poly(2, p, rng), random_poly(3, p, rng));
        for (const auto& q : {Place::infinity(p), Place::rational(Fp(0, p)), Place::rational(Fp(2, p)),
                              Place::finite(P({2, 0, 1}, p))})
            EXPECT_EQ(ord_at(f * g, q), ord_at(f, q) + ord_at(g, q));
    }
}

TEST(Derivative, Examples) {
    EXPECT_TRUE(RationalFunction(P({0, 0, 0, 1}, 3)).derivative().is_zero());
    EXPECT_EQ(R({1}, {0, 1}, 7).derivative(), R({-1}, {0, 0, 1}, 7));
    // x^-6 + x^-5 over F_3: the x^-6 term dies, leaving -5 x^-6 = x^-6
    RationalFunction f = RationalFunction::monomial(Fp(1, 3), -6) + RationalFunction::monomial(Fp(1, 3), -5);
    RationalFunction df = f.derivative();
    EXPECT_EQ(ord_at(df, Place::rational(Fp(0, 3))), -6);
    EXPECT_EQ(df, RationalFunction::monomial(Fp(1, 3), -6));
}

TEST(Derivative, LeibnizAndPthPowers) {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 40; ++t) {
        std::uint32_t p = (t % 2) ? 3 : 5;
        RationalFunction f(random_poly(3, p, rng), random_poly(2, p, rng));
        RationalFunction g(random_poly(2, p, rng), random_poly(3, p, rng));
        EXPECT_EQ((f * g).derivative(), f.derivative() * g + f * g.derivative());
        EXPECT_TRUE(f.pow(p).derivative().is_zero());
    }
}

TEST(Residue, Examples) {
    const std::uint32_t p = 5;
    DifferentialForm dx_over_x{R({1}, {0, 1}, p)};
    EXPECT_EQ(residue_at(dx_over_x, Place::rational(Fp(0, p))), Fp(1, p));
    EXPECT_EQ(residue_at(dx_over_x, Place::infinity(p)), Fp(-1, p));
    DifferentialForm w{R({1}, {1, -2, 1}, p)};  // 1/(x-1)^2
    EXPECT_EQ(residue_at(w, Place::rational(Fp(1, p))), Fp(0, p));
    EXPECT_THROW(residue_at(dx_over_x, Place::finite(P({2, 0, 1}, p))), Error);
}

TEST(Residue, LogarithmicDerivativeCountsMultiplicity) {
    std::mt19937_64 rng(23);
    const std::uint32_t p = 7;
    for (int t = 0; t < 30; ++t) {
        RationalFunction f(random_poly(4, p, rng), random_poly(3, p, rng));
        DifferentialForm w{f.derivative() / f};
        Fp total(0, p);
        for (std::int64_t a = 0; a < p; ++a) {
            Place q = Place::rational(Fp(a, p));
            EXPECT_EQ(residue_at(w, q), Fp(ord_at(f, q), p));
            total += residue_at(w, q);
        }
        EXPECT_EQ(residue_at(w, Place::infinity(p)), Fp(ord_at(f, Place::infinity(p)), p));
        // residue theorem when all poles are rational
        bool rational_poles = true;
        for (const auto& [q, n] : divisor(f)) rational_poles = rational_poles && q.degree() == 1;
        if (rational_poles) {
            EXPECT_TRUE((total + residue_at(w, Place::infinity(p))).is_zero());
        }
    }
}

TEST(PoleDivisor, Examples) {
    const std::uint32_t p = 5;
    RationalFunction f = R({1}, {0, 1}, p) + RationalFunction(P({0, 0, 0, 1}, p));
    auto pd = pole_divisor(f);
    ASSERT_EQ(pd.size(), 2u);
    EXPECT_EQ(pd[0].first, Place::rational(Fp(0, p)));
    EXPECT_EQ(pd[0].second, 1);
    EXPECT_TRUE(pd[1].first.is_infinity());
    EXPECT_EQ(pd[1].second, 3);
    EXPECT_TRUE(pole_divisor(RationalFunction::constant(2, p)).empty());
    auto pd3 = pole_divisor(R({1}, {1, 0, 1}, 3));
    ASSERT_EQ(pd3.size(), 1u);
    EXPECT_EQ(pd3[0].first.degree(), 2);
    EXPECT_EQ(pd3[0].second, 1);
}

TEST(RiemannRoch, Examples) {
    const std::uint32_t p = 3;
    Place zero = Place::rational(Fp(0, p)), inf = Place::infinity(p);
    auto s1 = riemann_roch_space({{zero, -2}, {inf, 0}}, p);
    auto b1 = s1.basis();
    ASSERT_EQ(b1.size(), 3u);
    for (const auto& g : b1) {
        EXPECT_GE(ord_at(g, zero), -2);
        EXPECT_GE(ord_at(g, inf), 0);
    }
    auto s2 = riemann_roch_space({{inf, -1}}, p);
    EXPECT_EQ(s2.basis(), (std::vector<RationalFunction>{RationalFunction::constant(1, p), RationalFunction::x(p)}));
    EXPECT_EQ(riemann_roch_space({{inf, 1}}, p).dimension(), 0u);
}

// Independent route: dimension of {h / E : deg h <= M} cut out by Laurent
// coefficient conditions, computed as a matrix rank.
TEST(RiemannRoch, DimensionAgreesWithLinearAlgebraOracle) {
    std::mt19937_64 rng(29);
    const std::uint32_t p = 5;
    for (int t = 0; t < 50; ++t) {
        std::vector<std::pair<Place, int>> cons;
        Poly e = Poly::constant(1, p);
        std::vector<std::pair<std::int64_t, int>> finite;
        for (std::int64_t a = 0; a < p; ++a) {
            if (rng() % 2) continue;
            int b = static_cast<int>(rng() % 7) - 4;
            cons.emplace_back(Place::rational(Fp(a, p)), b);
            finite.emplace_back(a, b);
            if (b < 0) e *= pow(Poly::linear(Fp(a, p)), static_cast<std::uint64_t>(-b));
        }
        int binf = static_cast<int>(rng() % 9) - 5;
        cons.emplace_back(Place::infinity(p), binf);
        auto space = riemann_roch_space(cons, p);

        const int m = e.degree() + 12;
        std::vector<std::vector<Fp>> rows;
        auto cols = static_cast<std::size_t>(m + 1);
        for (auto [a, b] : finite) {
            int ea = b < 0 ? -b : 0;
            // ord_a(h) >= b + ea: Taylor coefficients of h at a below that vanish
            for (int j = 0; j < b + ea; ++j) {
                std::vector<Fp> row(cols, Fp(0, p));
                for (int k = 0; k <= m; ++k) row[static_cast<std::size_t>(k)] = Poly::monomial(Fp(1, p), static_cast<std::size_t>(k)).taylor_shift(Fp(a, p)).coeff(static_cast<std::size_t>(j));
                rows.push_back(row);
            }
        }
        // deg E - deg h >= binf
        for (int k = e.degree() - binf + 1; k <= m; ++k)
            if (k >= 0) rows.push_back(unit_vector(cols, static_cast<std::size_t>(k), p));
        MatrixFp mat(rows.size(), cols, p);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) mat.set(i, j, rows[i][j]);
        std::size_t dim = cols - (rows.empty() ? 0 : rank(mat));
        EXPECT_EQ(space.dimension(), dim);
        for (const auto& g : space.basis())
            for (const auto& [q, b] : cons) EXPECT_GE(ord_at(g, q), b);
    }
}

TEST(Laurent, ExpansionAtInfinityOfPolynomialReciprocal) {
    // 1/(x - 1) at infinity = t + t^2 + t^3 + ... with t = 1/x
    auto l = laurent(R({1}, {-1, 1}, 7), Place::infinity(7), 4);
    EXPECT_EQ(l.start, 1);
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(l[j], Fp(1, 7));
    EXPECT_EQ(l[0], Fp(0, 7));
}
