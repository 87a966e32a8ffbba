#ifndef ASCOHOM_ORACLE_H0_HPP
#define ASCOHOM_ORACLE_H0_HPP

// Holomorphic differentials on X as sum_i y^i L_i dx, with each L_i a
// Riemann-Roch space on the projective line, and the sigma-action on them.

#include <cstdint>
#include <vector>

#include "../ascover.hpp"
#include "../gmodule.hpp"
#include "../predict.hpp"
#include "asalgebra.hpp"

namespace ascohom {

/// y^i * g * dx
struct FormInBasis {
    int i = 0;
    RationalFunction g;
};

/// Smallest ord_Q(g) (in the parameter at Q, for the function g) for which
/// y^i g dx has valuation >= -pole at the point above the branch place.
/// Uses ord_P(y^i g dx) = -i m + p ord_Q(g dx) + d.
inline int component_bound(const BranchDatum& b, int i, int pole, std::uint32_t p) {
    const int dx_shift = b.place.is_infinity() ? 2 : 0;
    return detail::ceil_div(i * b.m - b.d - pole, static_cast<int>(p)) + dx_shift;
}

/// ord_P of y^i g dx at the point above a branch place.
inline int form_term_valuation(const BranchDatum& b, int i, const RationalFunction& g, std::uint32_t p) {
    if (g.is_zero()) return kOrdInfinity;
    const int ord_gdx = ord_at(g, b.place) - (b.place.is_infinity() ? 2 : 0);
    return -i * b.m + static_cast<int>(p) * ord_gdx + b.d;
}

/// Min-rule valuation of sum_i y^i g_i dx at the point above a branch place;
/// the terms have distinct valuations mod p because p does not divide m.
inline int form_valuation(const BranchDatum& b, const std::vector<RationalFunction>& comps, std::uint32_t p) {
    int v = kOrdInfinity;
    std::vector<int> seen;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        int t = form_term_valuation(b, static_cast<int>(i), comps[i], p);
        if (t == kOrdInfinity) continue;
        for (int s : seen) ensure(s != t, "ValuationTie", "min-rule terms share a valuation");
        seen.push_back(t);
        v = std::min(v, t);
    }
    return v;
}

/// Constraints for y^i g dx to be regular away from the branch points and to
/// have poles of order at most pole[Q] above each branch place Q.
inline std::vector<std::pair<Place, int>> component_constraints(const ASCover& cover, int i, const std::vector<int>& pole) {
    std::vector<std::pair<Place, int>> cons;
    bool inf_branch = false;
    const auto& br = cover.branch();
    for (std::size_t q = 0; q < br.size(); ++q) {
        cons.emplace_back(br[q].place, component_bound(br[q], i, pole[q], cover.p()));
        inf_branch = inf_branch || br[q].place.is_infinity();
    }
    if (!inf_branch) cons.emplace_back(Place::infinity(cover.p()), 2);  // dx has a double pole there
    return cons;
}

struct H0Basis {
    std::vector<FormInBasis> forms;
    std::vector<RiemannRochSpace> spaces;  // L_0 .. L_{p-1}
    std::vector<std::size_t> offset;       // first basis index with y-exponent i
};

inline H0Basis h0_basis(const ASCover& cover) {
    const std::uint32_t p = cover.p();
    const std::vector<int> no_poles(cover.branch().size(), 0);
    H0Basis out;
    for (int i = 0; i < static_cast<int>(p); ++i) {
        out.offset.push_back(out.forms.size());
        out.spaces.push_back(riemann_roch_space(component_constraints(cover, i, no_poles), p));
        for (const auto& g : out.spaces.back().basis()) out.forms.push_back({i, g});
    }
    if (out.forms.size() != static_cast<std::size_t>(genus(cover)))
        throw internal_error("GenusMismatch", "holomorphic basis has " + std::to_string(out.forms.size()) +
                                                  " elements, genus is " + std::to_string(genus(cover)));
    return out;
}

/// Matrix of sigma (y -> y + 1) on the basis; columns are images.
inline MatrixFp sigma_matrix(const H0Basis& b, std::uint32_t p) {
    const std::size_t n = b.forms.size();
    MatrixFp s(n, n, p);
    for (std::size_t col = 0; col < n; ++col) {
        const auto& w = b.forms[col];
        for (int l = 0; l <= w.i; ++l) {
            Fp c = binomial_mod(static_cast<std::uint32_t>(w.i), static_cast<std::uint32_t>(l), p);
            if (c.is_zero()) continue;
            auto coords = b.spaces[static_cast<std::size_t>(l)].coordinates(w.g);
            if (!coords) throw internal_error("ActionNotStable", "sigma moved a form out of the holomorphic space");
            for (std::size_t k = 0; k < coords->size(); ++k) s.add_to(b.offset[static_cast<std::size_t>(l)] + k, col, c * (*coords)[k]);
        }
    }
    return s;
}

inline JordanType sigma_jordan_h0(const ASCover& cover) {
    const std::uint32_t p = cover.p();
    H0Basis b = h0_basis(cover);
    MatrixFp n = sigma_matrix(b, p) - MatrixFp::identity(b.forms.size(), p);
    return jordan_type(n, p);
}

}  // namespace ascohom

#endif
