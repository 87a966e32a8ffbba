#ifndef ASCOHOM_ASCOVER_HPP
#define ASCOHOM_ASCOVER_HPP

// A single Z/p Artin-Schreier cover y^p - y = f of the projective line,
// its standard form, and the ramification data that falls out of it.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace ascohom {

/// Ramification data at one branch place. d, d', d'' are the different
/// exponents sum_{i >= 0, 1, 2} (#G_i - 1) at a point above.
struct BranchDatum {
    Place place;
    int m = 0;
    int d = 0;
    int dprime = 0;
    int ddoubleprime = 0;

    int degree() const noexcept { return place.degree(); }

    static BranchDatum from_jump(Place q, int m, std::uint32_t p) {
        const int pm1 = static_cast<int>(p) - 1;
        return {std::move(q), m, (m + 1) * pm1, m * pm1, (m - 1) * pm1};
    }
};

class ASCover {
   public:
    /// The cover y^p - y = f, as given. Call global_standard_form to get branch data.
    explicit ASCover(RationalFunction f) : p_(f.modulus()), f_(std::move(f)), shift_(p_) {
        PrimeField check(p_);
        (void)check;
    }

    std::uint32_t p() const noexcept { return p_; }
    const RationalFunction& f() const noexcept { return f_; }
    /// Accumulated g with y_std = y_original - g.
    const RationalFunction& shift() const noexcept { return shift_; }
    bool standardized() const noexcept { return standardized_; }

    const std::vector<BranchDatum>& branch() const {
        if (!standardized_) throw precondition_error("NotStandardized", "cover has not been put in standard form");
        return branch_;
    }

    /// Number of geometric branch points: sum of place degrees.
    int geometric_branch_count() const {
        int n = 0;
        for (const auto& b : branch()) n += b.degree();
        return n;
    }

    bool all_branch_rational() const {
        for (const auto& b : branch())
            if (b.degree() != 1) return false;
        return true;
    }

   private:
    friend ASCover global_standard_form(const ASCover& cover);

    std::uint32_t p_;
    RationalFunction f_;
    RationalFunction shift_;
    bool standardized_ = false;
    std::vector<BranchDatum> branch_;
};

struct LocalReduction {
    RationalFunction shift;
    RationalFunction reduced;  // = f - (shift^p - shift)
};

/// Kill pole orders divisible by p at q by subtracting wp(g) = g^p - g with
/// g having poles only at q.
inline LocalReduction local_standard_form(const RationalFunction& f, const Place& q) {
    const std::uint32_t p = f.modulus();
    LocalReduction out{RationalFunction(p), f};
    while (!out.reduced.is_zero()) {
        const int ord = ord_at(out.reduced, q);
        if (ord >= 0 || (-ord) % static_cast<int>(p) != 0) break;
        const int k = -ord;
        RationalFunction g(p);
        if (q.is_infinity()) {
            // leading coefficient c of x^k; c^(1/p) = c in F_p
            Fp c = out.reduced.num().lead();
            g = RationalFunction::monomial(c, k / static_cast<int>(p));
        } else {
            const Poly& qp = q.poly();
            // f = N / (q^k D1) with q coprime to N and D1
            Poly d1 = out.reduced.den();
            for (int i = 0; i < k; ++i) d1 = d1 / qp;
            Poly lead = out.reduced.num() * invmod(d1, qp) % qp;
            // p-th root in F_p[x]/(q): Frobenius has order deg q
            Poly s = lead;
            for (int i = 1; i < q.degree(); ++i) s = powmod(s, p, qp);
            ensure(powmod(s, p, qp) == lead, "ResidueFieldObstruction", "p-th root of the leading coefficient");
            g = RationalFunction(s, pow(qp, static_cast<std::uint64_t>(k) / p));
        }
        out.reduced = out.reduced - (g.pow(p) - g);
        out.shift += g;
    }
    return out;
}

/// Standard form at every place: finite places in canonical order, then infinity.
inline ASCover global_standard_form(const ASCover& cover) {
    ASCover out = cover;
    RationalFunction f = cover.f();
    if (!f.is_zero()) {
        for (const auto& [q, n] : pole_divisor(f)) {
            if (n % static_cast<int>(cover.p()) != 0) continue;
            LocalReduction r = local_standard_form(f, q);
            f = r.reduced;
            out.shift_ += r.shift;
        }
    }
    // A pure constant means the equation splits over the algebraic closure.
    if (f.is_constant())
        throw precondition_error("DisconnectedCover", "f reduces to a constant; the cover is not irreducible");
    out.f_ = f;
    out.branch_.clear();
    for (auto& [q, n] : pole_divisor(f)) {
        ensure(n % static_cast<int>(cover.p()) != 0, "NotStandardized", "pole order divisible by p after reduction");
        out.branch_.push_back(BranchDatum::from_jump(q, n, cover.p()));
    }
    out.standardized_ = true;
    return out;
}

/// ord_Q(df) for f dx-valued differential df = f' dx.
inline int ord_df(const RationalFunction& f, const Place& q) {
    return ord_at(DifferentialForm{f.derivative()}, q);
}

/// The jump read off the differential: m = -ord_Q(df) - 1, valid when
/// p * ord_Q(df) < ord_Q(f) - p.
inline int m_via_df(const RationalFunction& f, const Place& q) {
    const int p = static_cast<int>(f.modulus());
    if (f.is_zero() || ord_at(f, q) >= 0)
        throw precondition_error("HypothesisFails", "f has no pole at " + q.to_string());
    RationalFunction df = f.derivative();
    if (df.is_zero()) throw precondition_error("HypothesisFails", "df = 0");
    const int od = ord_df(f, q), of = ord_at(f, q);
    if (!(p * od < of - p))
        throw precondition_error("HypothesisFails", "ord(df) = " + std::to_string(od) + " is not below ord(f)/p - 1 = " +
                                                        std::to_string(of) + "/" + std::to_string(p) + " - 1");
    return -od - 1;
}

/// Riemann-Hurwitz for a Z/p cover of P^1 totally ramified over the branch locus.
inline int genus(const ASCover& cover) {
    int s = 0;
    for (const auto& b : cover.branch()) s += b.degree() * (b.m + 1);
    const int num = (static_cast<int>(cover.p()) - 1) * (s - 2);
    if (num < 0 || num % 2 != 0) throw internal_error("GenusInconsistent", "Riemann-Hurwitz numerator " + std::to_string(num));
    return num / 2;
}

}  // namespace ascohom

#endif
