#include <gtest/gtest.h>

#include <random>

#include "ascohom/exactfield.hpp"

using namespace ascohom;

namespace {

MatrixFp random_matrix(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937_64& rng) {
    MatrixFp m(r, c, p);
    std::uniform_int_distribution<std::int64_t> d(0, p - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, Fp(d(rng), p));
    return m;
}

MatrixFp random_invertible(std::size_t n, std::uint32_t p, std::mt19937_64& rng) {
    while (true) {
        MatrixFp m = random_matrix(n, n, p, rng);
        if (!determinant(m).is_zero()) return m;
    }
}

MatrixFp jordan_sum(const std::vector<std::size_t>& blocks, std::uint32_t p) {
    std::size_t n = 0;
    for (auto b : blocks) n += b;
    MatrixFp m(n, n, p);
    std::size_t off = 0;
    for (auto b : blocks) {
        for (std::size_t i = 0; i + 1 < b; ++i) m.set(off + i, off + i + 1, Fp(1, p));
        off += b;
    }
    return m;
}

}  // namespace

TEST(Fp, FieldAxiomsExhaustive) {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 101u}) {
        for (std::uint32_t a = 0; a < p; ++a) {
            Fp x(a, p);
            EXPECT_EQ(x.pow(p), x);
            if (a) {
                EXPECT_EQ(x * x.inv(), Fp(1, p));
            }
        }
    }
}

TEST(Fp, ReducesNegatives) {
    EXPECT_EQ(Fp(-1, 5).value(), 4u);
    EXPECT_EQ(Fp(-11, 5).value(), 4u);
    EXPECT_EQ(Fp(4, 5).signed_value(), -1);
}

TEST(Fp, ContextRejectsComposite) {
    EXPECT_THROW(PrimeField(9), Error);
    EXPECT_THROW(PrimeField(1), Error);
    EXPECT_NO_THROW(PrimeField(2147483647));
    EXPECT_THROW(Fp(0, 7).inv(), Error);
}

TEST(Rank, Examples) {
    EXPECT_EQ(rank(MatrixFp::identity(4, 3)), 4u);
    EXPECT_EQ(rank(MatrixFp(3, 5, 7)), 0u);
    EXPECT_EQ(rank(MatrixFp({{1, 2}, {2, 4}}, 5)), 1u);
}

TEST(Rank, InvariantUnderInvertibleChangeOfBasis) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        const std::uint32_t p = (t % 2) ? 3 : 5;
        // low-rank product so ranks are not trivially full
        MatrixFp a = random_matrix(6, 3, p, rng) * random_matrix(3, 7, p, rng);
        MatrixFp pm = random_invertible(6, p, rng), qm = random_invertible(7, p, rng);
        std::size_t r = rank(a);
        EXPECT_LE(r, 3u);
        EXPECT_EQ(rank(pm * a * qm), r);
        EXPECT_EQ(rank_by_columns(a), r);
        EXPECT_EQ(rank(a.transpose()), r);
    }
}

TEST(Kernel, Examples) {
    auto k = kernel_basis(MatrixFp(2, 2, 3));
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k[0], unit_vector(2, 0, 3));
    EXPECT_EQ(k[1], unit_vector(2, 1, 3));
    EXPECT_TRUE(kernel_basis(MatrixFp::identity(5, 7)).empty());
}

TEST(Kernel, SumZeroOverF2AgainstEnumeration) {
    MatrixFp a({{1, 1, 1}}, 2);
    auto k = kernel_basis(a);
    ASSERT_EQ(k.size(), 2u);
    // enumerate all 8 vectors: exactly 4 lie in the kernel, and the span of k has 4 elements
    int in_kernel = 0;
    for (int v = 0; v < 8; ++v)
        if (((v & 1) + ((v >> 1) & 1) + ((v >> 2) & 1)) % 2 == 0) ++in_kernel;
    EXPECT_EQ(in_kernel, 1 << k.size());
    for (const auto& v : k) EXPECT_TRUE((v[0] + v[1] + v[2]).is_zero());
}

TEST(Kernel, VectorsAnnihilatedAndCountMatches) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        MatrixFp a = random_matrix(4, 3, 7, rng) * random_matrix(3, 6, 7, rng);
        auto k = kernel_basis(a);
        EXPECT_EQ(k.size(), a.cols() - rank(a));
        for (const auto& v : k)
            for (const auto& e : a * std::span<const Fp>(v)) EXPECT_TRUE(e.is_zero());
    }
}

TEST(Determinant, MatchesTwoByTwoFormula) {
    MatrixFp m({{3, 4}, {2, 6}}, 7);
    EXPECT_EQ(determinant(m), Fp(3 * 6 - 4 * 2, 7));
    EXPECT_EQ(determinant(MatrixFp({{0, 1}, {1, 0}}, 5)), Fp(-1, 5));
}

TEST(NilpotentRanks, Examples) {
    EXPECT_EQ(nilpotent_rank_sequence(jordan_sum({3}, 3), 3), (std::vector<std::size_t>{3, 2, 1, 0}));
    EXPECT_EQ(nilpotent_rank_sequence(MatrixFp(4, 4, 5), 5), (std::vector<std::size_t>{4, 0, 0, 0, 0, 0}));
    EXPECT_EQ(nilpotent_rank_sequence(jordan_sum({2, 1}, 3), 3), (std::vector<std::size_t>{3, 1, 0, 0}));
}

TEST(NilpotentRanks, RejectsNonNilpotent) {
    try {
        nilpotent_rank_sequence(MatrixFp::identity(2, 3), 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "NotNilpotent");
    }
}

TEST(NilpotentRanks, StrictlyDecreasingUntilZero) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::size_t> blocks;
        for (int b = 0; b < 4; ++b) blocks.push_back(1 + rng() % 5);
        MatrixFp n = jordan_sum(blocks, 5);
        auto seq = nilpotent_rank_sequence(n, 5);
        for (std::size_t k = 1; k < seq.size(); ++k) {
            EXPECT_LE(seq[k], seq[k - 1]);
            if (seq[k - 1] > 0) {
                EXPECT_LT(seq[k], seq[k - 1]);
            }
        }
    }
}
