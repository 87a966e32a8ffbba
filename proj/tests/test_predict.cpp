#include <gtest/gtest.h>

#include <random>

#include "ascohom/predict.hpp"

using namespace ascohom;

namespace {

RationalFunction xp(int k, std::uint32_t p) { return RationalFunction::monomial(Fp(1, p), k); }
RationalFunction pole(std::int64_t a, std::uint32_t p) { return RationalFunction(Poly::constant(1, p), Poly::linear(Fp(a, p))); }
ASCover standard(const RationalFunction& f) { return global_standard_form(ASCover(f)); }

// Ceiling by exhaustive search, independent of the integer formula.
int ceil_slow(int a, int b) {
    int q = -1000;
    while (q * b < a) ++q;
    return q;
}

}  // namespace

TEST(AlphaQ, Examples) {
    EXPECT_EQ(alpha_Q(2, 1, 3), 1);
    EXPECT_EQ(alpha_Q(2, 2, 3), 0);
    for (std::uint32_t p : {3u, 5u, 7u})
        for (int i = 1; i < static_cast<int>(p); ++i) EXPECT_EQ(alpha_Q(1, i, p), 0);
    std::vector<int> expect = {1, 0, 1, 0};
    for (int i = 1; i <= 4; ++i) EXPECT_EQ(alpha_Q(3, i, 5), expect[static_cast<std::size_t>(i - 1)]);
}

TEST(AlphaQ, WeightedSumIsLocalDimension) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const int ip = static_cast<int>(p);
        for (int m = 1; m <= 200; ++m) {
            if (m % ip == 0) continue;
            int s = 0;
            for (int i = 1; i < ip; ++i) {
                int a = alpha_Q(m, i, p);
                EXPECT_EQ(a, ceil_slow(m * (i + 1), ip) - ceil_slow(m * i, ip));
                s += i * a;
            }
            EXPECT_EQ(s, (m - 1) * (ip - 1) / 2) << "p=" << p << " m=" << m;
        }
    }
}

TEST(Predict, Examples) {
    auto a = predict(standard(xp(2, 3)));
    EXPECT_EQ(a.h0.to_string(), "{J1:1}");
    EXPECT_EQ(a.h1dr.to_string(), "{J2:1}");
    EXPECT_EQ(a.genus, 1);
    auto b = predict(standard(pole(0, 3) + pole(1, 3)));
    EXPECT_EQ(b.h0.to_string(), "{J2:1}");
    EXPECT_EQ(b.h1dr.to_string(), "{J2:2}");
    auto c = predict(standard(xp(-1, 5) + xp(3, 5)));
    JordanType expect(5);
    expect.add(4);
    expect.add(3);
    expect.add(1);
    EXPECT_EQ(c.h0, expect);
    EXPECT_EQ(c.h0.dim(), 8u);
}

TEST(Predict, DimensionsAgreeWithGenus) {
    std::mt19937_64 rng(1);
    for (std::uint32_t p : {3u, 5u, 7u}) {
        std::uniform_int_distribution<std::int64_t> c(0, p - 1);
        std::uniform_int_distribution<int> k(-9, 9);
        for (int t = 0; t < 40; ++t) {
            RationalFunction f = RationalFunction::monomial(Fp(c(rng), p), k(rng)) + RationalFunction::monomial(Fp(c(rng), p), k(rng)) +
                                 pole(c(rng), p);
            ASCover cov(f);
            try {
                cov = standard(f);
            } catch (const Error&) {
                continue;
            }
            auto pr = predict(cov);
            EXPECT_EQ(pr.h0.dim(), static_cast<std::size_t>(genus(cov)));
            EXPECT_EQ(pr.h1dr.dim(), 2 * pr.h0.dim());
            EXPECT_EQ(pr.h1, pr.h0);
        }
    }
}

TEST(Predict, PositiveBaseGenus) {
    auto pr = predict(standard(pole(0, 5) + pole(1, 5)), 2);
    EXPECT_EQ(pr.h1dr.count(5), 4u);
    EXPECT_EQ(pr.h1dr.count(4), 2u);
    EXPECT_EQ(pr.h0.count(5), 2u);
    EXPECT_EQ(pr.genus, 5 * 2 + 4);
}

TEST(LocalBasisIndices, Examples) {
    auto a = local_basis_indices(2, 3);
    ASSERT_EQ(a.h0.size(), 1u);
    EXPECT_EQ(a.h0[0], std::make_pair(0, 2));
    for (std::uint32_t p : {3u, 5u, 7u}) {
        auto b = local_basis_indices(1, p);
        EXPECT_TRUE(b.h0.empty() && b.h1.empty() && b.dr.empty());
    }
    auto c = local_basis_indices(3, 5);
    EXPECT_EQ(c.h0.size(), 4u);
    EXPECT_EQ(c.dr.size(), 8u);
}

TEST(LocalBasisIndices, Counts) {
    for (std::uint32_t p : {3u, 5u, 7u})
        for (int m = 1; m <= 60; ++m) {
            if (m % static_cast<int>(p) == 0) continue;
            auto s = local_basis_indices(m, p);
            const std::size_t half = static_cast<std::size_t>((m - 1) * (static_cast<int>(p) - 1) / 2);
            EXPECT_EQ(s.h0.size(), half);
            EXPECT_EQ(s.h1.size(), half);
            EXPECT_EQ(s.dr.size(), 2 * half);
        }
}

TEST(WeaklyRamified, Examples) {
    EXPECT_TRUE(weakly_ramified(standard(pole(0, 3) + pole(1, 3))));
    EXPECT_FALSE(weakly_ramified(standard(xp(2, 3))));
    ASCover lin = standard(xp(1, 3));
    EXPECT_TRUE(weakly_ramified(lin));
    EXPECT_EQ(genus(lin), 0);
    EXPECT_TRUE(predict(lin).h0.empty());
}
