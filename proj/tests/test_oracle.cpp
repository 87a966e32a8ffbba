#include <gtest/gtest.h>

#include "ascohom/corpus.hpp"
#include "ascohom/oracle/derham.hpp"
#include "ascohom/oracle/resg.hpp"

using namespace ascohom;

namespace {

ASCover standard(const RationalFunction& f) { return global_standard_form(ASCover(f)); }
RationalFunction xp(int k, std::uint32_t p) { return RationalFunction::monomial(Fp(1, p), k); }
RationalFunction pole(std::int64_t a, std::uint32_t p) { return RationalFunction(Poly::constant(1, p), Poly::linear(Fp(a, p))); }

JordanType jt(std::uint32_t p, std::initializer_list<std::pair<std::size_t, std::size_t>> blocks) {
    JordanType j(p);
    for (auto [i, n] : blocks) j.add(i, n);
    return j;
}

}  // namespace

TEST(H0Basis, Examples) {
    auto b = h0_basis(standard(xp(2, 3)));
    ASSERT_EQ(b.forms.size(), 1u);
    EXPECT_TRUE(h0_basis(standard(xp(-1, 3))).forms.empty());
    EXPECT_EQ(h0_basis(standard(xp(-1, 5) + xp(3, 5))).forms.size(), 8u);
}

// Every basis form is checked to be holomorphic by the min-rule, and the
// count is checked against the genus, independently of the constraint code.
TEST(H0Basis, FormsAreHolomorphic) {
    for (const auto& e : reference_corpus()) {
        ASCover c = standard(e.f);
        auto b = h0_basis(c);
        const std::uint32_t p = c.p();
        for (const auto& w : b.forms) {
            std::vector<RationalFunction> comps(p, RationalFunction(p));
            comps[static_cast<std::size_t>(w.i)] = w.g;
            for (const auto& br : c.branch()) EXPECT_GE(form_valuation(br, comps, p), 0) << e.name;
            // away from the branch points the form is g dx on an unramified cover
            for (const auto& [q, n] : pole_divisor(w.g)) {
                bool branch = false;
                for (const auto& br : c.branch()) branch = branch || br.place == q;
                EXPECT_TRUE(branch || (q.is_infinity() && n <= -2)) << e.name;
            }
            bool inf_branch = false;
            for (const auto& br : c.branch()) inf_branch = inf_branch || br.place.is_infinity();
            if (!inf_branch) { EXPECT_GE(ord_at(w.g, Place::infinity(p)), 2) << e.name; }
        }
    }
}

TEST(SigmaJordanH0, Examples) {
    EXPECT_EQ(sigma_jordan_h0(standard(xp(2, 3))), jt(3, {{1, 1}}));
    EXPECT_EQ(sigma_jordan_h0(standard(pole(0, 3) + pole(1, 3))), jt(3, {{2, 1}}));
    EXPECT_EQ(sigma_jordan_h0(standard(xp(-1, 5) + xp(3, 5))), jt(5, {{4, 1}, {3, 1}, {1, 1}}));
}

TEST(SigmaJordanH0, MatchesPredictionOnCorpus) {
    for (const auto& e : reference_corpus()) {
        ASCover c = standard(e.f);
        EXPECT_EQ(sigma_jordan_h0(c), predict(c).h0) << e.name;
    }
}

TEST(SigmaJordanH0, SigmaHasOrderP) {
    for (const auto& e : reference_corpus()) {
        ASCover c = standard(e.f);
        auto b = h0_basis(c);
        if (b.forms.empty()) continue;
        MatrixFp s = sigma_matrix(b, c.p());
        MatrixFp acc = MatrixFp::identity(b.forms.size(), c.p());
        for (std::uint32_t k = 0; k < c.p(); ++k) acc = acc * s;
        EXPECT_TRUE((acc - MatrixFp::identity(b.forms.size(), c.p())).is_zero()) << e.name;
    }
}

// Same type when the basis is built for a non-rational branch place.
TEST(SigmaJordanH0, NonRationalBranchPlace) {
    const std::uint32_t p = 3;
    RationalFunction f(Poly::constant(1, p), Poly({1, 0, 1}, p));  // 1/(x^2+1)
    ASCover c = standard(f);
    EXPECT_EQ(c.geometric_branch_count(), 2);
    EXPECT_EQ(sigma_jordan_h0(c), predict(c).h0);
}

TEST(TraceTable, SymbolicTraceAgrees) {
    for (std::uint32_t p : {3u, 5u, 7u}) {
        std::vector<RationalFunction> fs = {xp(-1, p), xp(-1, p) + xp(2, p), pole(0, p) + pole(1, p)};
        for (const auto& f : fs)
            for (std::uint32_t i = 0; i <= 2 * (p - 1); ++i) {
                RationalFunction t = ASElement::y_power(f, i).trace();
                EXPECT_EQ(t, RationalFunction::constant(trace_table(i, p))) << "p=" << p << " i=" << i;
            }
    }
}

TEST(ResG, Examples) {
    auto r1 = res_G_report(standard(pole(0, 3) + pole(1, 3)));
    EXPECT_EQ(r1.rank, 2u);
    EXPECT_EQ(r1.kernel_dim, 0u);
    auto r2 = res_G_report(standard(xp(2, 3)));
    EXPECT_EQ(r2.rank, 0u);
    EXPECT_EQ(r2.kernel_dim, 1u);
    auto r3 = res_G_report(standard(xp(-1, 5) + xp(3, 5)));
    EXPECT_EQ(r3.rank, 4u);
    EXPECT_EQ(r3.kernel_dim, 4u);
}

TEST(ResG, RankAndImageOnCorpus) {
    for (const auto& e : reference_corpus()) {
        ASCover c = standard(e.f);
        auto r = res_G_report(c);
        EXPECT_EQ(r.rank, r.expected_rank) << e.name;
        EXPECT_TRUE(r.image_in_ixy) << e.name;
    }
}

// The dual coefficient against a direct trace in the algebra.
TEST(ResG, DualCoefficientMatchesAlgebra) {
    for (std::uint32_t p : {3u, 5u}) {
        RationalFunction f = xp(-1, p) + xp(2, p);
        ASElement z = ASElement::y_power(f, p - 1);
        ASElement two = ASElement::constant(f, RationalFunction::constant(2, p));
        for (std::uint32_t a = 0; a < p; ++a)
            for (std::uint32_t l = 0; l < p; ++l) {
                ASElement e = (z.sigma(a) - two) * ASElement::y_power(f, l);
                EXPECT_EQ(e.trace(), RationalFunction::constant(dual_component_coefficient(a, l, p)));
            }
    }
}

TEST(ResG, SectionIsIdentity) {
    auto s1 = res_G_section_check(standard(pole(0, 3) + pole(1, 3)));
    EXPECT_EQ(s1.dimension, 2u);
    EXPECT_TRUE(s1.ok());
    auto s2 = res_G_section_check(standard(pole(0, 5) + pole(1, 5) + pole(2, 5)));
    EXPECT_EQ(s2.dimension, 8u);
    EXPECT_TRUE(s2.ok());
    auto s3 = res_G_section_check(standard(xp(2, 3)));
    EXPECT_EQ(s3.dimension, 0u);
    EXPECT_TRUE(s3.ok());
    auto s4 = res_G_section_check(standard(xp(-1, 7) + xp(4, 7)));
    EXPECT_EQ(s4.dimension, 6u);
    EXPECT_TRUE(s4.ok());
}

TEST(ResG, RejectsNonRationalPlace) {
    RationalFunction f(Poly::constant(1, 3), Poly({1, 0, 1}, 3));
    try {
        res_G_report(standard(f));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.name(), "NonRationalPlace");
    }
}

TEST(DeRham, Examples) {
    auto r1 = derham_jordan(standard(xp(2, 3)), 1);
    EXPECT_EQ(r1.type, jt(3, {{2, 1}}));
    EXPECT_EQ(r1.dim, 2u);
    EXPECT_TRUE(r1.stabilized);
    auto r2 = derham_jordan(standard(xp(-1, 3)), 1);
    EXPECT_TRUE(r2.type.empty());
    EXPECT_EQ(r2.dim, 0u);
    auto c3 = standard(pole(0, 3) + pole(1, 3));
    auto r3 = derham_jordan(c3, 1);
    EXPECT_EQ(r3.type, jt(3, {{2, 2}}));
    EXPECT_EQ(r3.type, predict(c3).h0 + predict(c3).h1);
}

TEST(DeRham, MatchesPredictionOnCorpus) {
    for (const auto& e : reference_corpus()) {
        ASCover c = standard(e.f);
        auto r = derham_jordan(c, 1);
        EXPECT_EQ(r.dim, 2u * static_cast<std::size_t>(genus(c))) << e.name;
        EXPECT_EQ(r.type, predict(c).h1dr) << e.name;
        EXPECT_TRUE(r.stabilized) << e.name;
    }
}

// Dimension 2g also at margin 0, where the truncation is tightest.
TEST(DeRham, MarginZeroAlreadyExact) {
    for (const auto& e : reference_corpus()) {
        ASCover c = standard(e.f);
        DeRhamModel m(c, 0);
        EXPECT_EQ(m.quotient_dim(), 2u * static_cast<std::size_t>(genus(c))) << e.name;
    }
}

TEST(DeRham, ClassRepresentativesAreCocycles) {
    for (const auto& e : reference_corpus()) {
        ASCover c = standard(e.f);
        DeRhamModel m(c, 1);
        auto reps = m.class_representatives();
        EXPECT_EQ(reps.size(), 2u * static_cast<std::size_t>(genus(c))) << e.name;
        for (const auto& r : reps) EXPECT_TRUE(m.is_compatible(r)) << e.name;
    }
}

// A pair whose tail is off by one coefficient is rejected by the exact check.
TEST(DeRham, CompatibilityDetectsBrokenTail) {
    ASCover c = standard(xp(2, 3));
    DeRhamModel m(c, 1);
    auto reps = m.class_representatives();
    bool saw_tail = false;
    for (auto r : reps) {
        if (r.tails.empty()) continue;
        saw_tail = true;
        r.tails.front().c += Fp(1, 3);
        EXPECT_FALSE(m.is_compatible(r));
    }
    EXPECT_TRUE(saw_tail);
}

TEST(Hodge, Examples) {
    EXPECT_TRUE(hodge_filtration_check(standard(xp(2, 3))).ok());
    EXPECT_TRUE(hodge_filtration_check(standard(xp(-1, 3))).ok());
    EXPECT_TRUE(hodge_filtration_check(standard(xp(-1, 5) + xp(3, 5))).ok());
}

TEST(Hodge, Corpus) {
    for (const auto& e : reference_corpus()) EXPECT_TRUE(hodge_filtration_check(standard(e.f)).ok()) << e.name;
}
