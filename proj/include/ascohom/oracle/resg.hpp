#ifndef ASCOHOM_ORACLE_RESG_HPP
#define ASCOHOM_ORACLE_RESG_HPP

// The residue map res_G : H0(X, Omega) -> (+)_{Q in B} k[G] for G = Z/p,
// built from the magical element z = y^(p-1) and its trace dual z - 2, and
// the section built from forms on the base with prescribed residues.

#include <cstdint>
#include <vector>

#include "h0.hpp"

namespace ascohom {

/// c(a, l) = tr(sigma^a(z - 2) * y^l) with z = y^(p-1), via the trace table.
inline Fp dual_component_coefficient(std::uint32_t a, std::uint32_t l, std::uint32_t p) {
    Fp acc = Fp(-2, p) * trace_table(l, p);
    const Fp s(a, p);
    for (std::uint32_t j = 0; j <= p - 1; ++j) acc += binomial_mod(p - 1, j, p) * s.pow(p - 1 - j) * trace_table(j + l, p);
    return acc;
}

/// Rows indexed (branch place, a) with a in F_p, columns by basis forms.
inline MatrixFp res_G_matrix(const ASCover& cover, const H0Basis& basis) {
    const std::uint32_t p = cover.p();
    const auto& br = cover.branch();
    for (const auto& b : br)
        if (b.degree() != 1) throw precondition_error("NonRationalPlace", "res_G needs rational branch places; " + b.place.to_string() + " is not");
    MatrixFp m(br.size() * p, basis.forms.size(), p);
    for (std::size_t col = 0; col < basis.forms.size(); ++col) {
        const auto& w = basis.forms[col];
        for (std::size_t q = 0; q < br.size(); ++q) {
            Fp r = residue_at(DifferentialForm{w.g}, br[q].place);
            if (r.is_zero()) continue;
            for (std::uint32_t a = 0; a < p; ++a)
                m.set(q * p + a, col, dual_component_coefficient(a, static_cast<std::uint32_t>(w.i), p) * r);
        }
    }
    return m;
}

/// Linear conditions cutting out I_{X/Y} inside (+)_Q k[G] for G = Z/p with
/// every stabilizer equal to G: each Q-block sums to zero (I_{G,G} = I_G)
/// and, for each group element, the sum over Q vanishes.
inline MatrixFp ixy_conditions(std::size_t n_branch, std::uint32_t p) {
    MatrixFp c(n_branch + p, n_branch * p, p);
    for (std::size_t q = 0; q < n_branch; ++q)
        for (std::uint32_t a = 0; a < p; ++a) {
            c.set(q, q * p + a, Fp(1, p));
            c.set(n_branch + a, q * p + a, Fp(1, p));
        }
    return c;
}

struct ResGReport {
    std::size_t rank = 0;
    std::size_t kernel_dim = 0;
    std::size_t expected_rank = 0;  // (#B - 1)(p - 1)
    bool image_in_ixy = false;
};

inline ResGReport res_G_report(const ASCover& cover) {
    const std::uint32_t p = cover.p();
    H0Basis basis = h0_basis(cover);
    MatrixFp m = res_G_matrix(cover, basis);
    ResGReport out;
    out.rank = rank(m);
    out.kernel_dim = basis.forms.size() - out.rank;
    out.expected_rank = (cover.branch().size() - 1) * (p - 1);
    out.image_in_ixy = (ixy_conditions(cover.branch().size(), p) * m).is_zero();
    return out;
}

struct SectionReport {
    std::size_t dimension = 0;  // dim I_{X/Y}
    bool holomorphic = true;
    bool identity = true;
    bool ok() const noexcept { return holomorphic && identity; }
};

/// Sends a basis of I_{X/Y} through sum a_{Q,g} g*(z) eta_Q and checks that
/// the forms are holomorphic and that res_G returns the original vectors.
inline SectionReport res_G_section_check(const ASCover& cover) {
    const std::uint32_t p = cover.p();
    const auto& br = cover.branch();
    SectionReport out;
    for (const auto& b : br)
        if (b.degree() != 1) throw precondition_error("NonRationalPlace", "section needs rational branch places");
    if (br.size() < 2) return out;

    auto ixy = kernel_basis(ixy_conditions(br.size(), p));
    out.dimension = ixy.size();
    ensure(ixy.size() == (br.size() - 1) * (p - 1), "IxyDimension", "I_{X/Y} has unexpected dimension");

    // Q0 is infinity when it branches, otherwise the first finite branch place.
    std::size_t q0 = 0;
    for (std::size_t q = 0; q < br.size(); ++q)
        if (br[q].place.is_infinity()) q0 = q;
    auto simple_pole = [&](const Place& q) {
        return RationalFunction(Poly::constant(1, p), Poly::linear(q.point()));
    };
    std::vector<RationalFunction> eta(br.size(), RationalFunction(p));
    for (std::size_t q = 0; q < br.size(); ++q) {
        if (q == q0) continue;
        eta[q] = simple_pole(br[q].place);
        if (!br[q0].place.is_infinity()) eta[q] -= simple_pole(br[q0].place);
    }

    H0Basis basis = h0_basis(cover);
    for (const auto& v : ixy) {
        // (y + a)^(p-1) = sum_l C(p-1, l) a^(p-1-l) y^l
        std::vector<RationalFunction> comp(p, RationalFunction(p));
        for (std::size_t q = 0; q < br.size(); ++q) {
            if (q == q0) continue;
            for (std::uint32_t a = 0; a < p; ++a) {
                Fp coef = v[q * p + a];
                if (coef.is_zero()) continue;
                for (std::uint32_t l = 0; l < p; ++l)
                    comp[l] += (coef * binomial_mod(p - 1, l, p) * Fp(a, p).pow(p - 1 - l)) * eta[q];
            }
        }
        for (std::uint32_t l = 0; l < p; ++l)
            if (!basis.spaces[l].coordinates(comp[l])) out.holomorphic = false;
        for (std::size_t q = 0; q < br.size(); ++q) {
            for (std::uint32_t a = 0; a < p; ++a) {
                Fp r(0, p);
                for (std::uint32_t l = 0; l < p; ++l)
                    r += dual_component_coefficient(a, l, p) * residue_at(DifferentialForm{comp[l]}, br[q].place);
                if (r != v[q * p + a]) out.identity = false;
            }
        }
    }
    return out;
}

}  // namespace ascohom

#endif
