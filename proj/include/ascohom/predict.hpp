#ifndef ASCOHOM_PREDICT_HPP
#define ASCOHOM_PREDICT_HPP

// Closed-form equivariant structure of the cohomology of a Z/p cover in
// standard form.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "ascover.hpp"
#include "gmodule.hpp"

namespace ascohom {

namespace detail {
inline int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }
}  // namespace detail

inline int alpha_Q(int m, int i, std::uint32_t p) {
    const int ip = static_cast<int>(p);
    if (m <= 0 || std::gcd(m, ip) != 1)
        throw precondition_error("NotCoprime", "jump " + std::to_string(m) + " must be positive and prime to p");
    return detail::ceil_div(m * (i + 1), ip) - detail::ceil_div(m * i, ip);
}

/// Local type sum_i J_i^{alpha_Q(i)}.
inline JordanType local_h0_type(int m, std::uint32_t p) {
    JordanType j(p);
    for (int i = 1; i <= static_cast<int>(p) - 1; ++i) {
        int a = alpha_Q(m, i, p);
        if (a > 0) j.add(static_cast<std::size_t>(i), static_cast<std::size_t>(a));
    }
    return j;
}

struct LocalPrediction {
    Place place;
    int m = 0;
    JordanType h0, h1, h1dr;
};

struct CohomPrediction {
    int g_y = 0;
    int genus = 0;
    int alpha = 0;
    JordanType h0, h1, h1dr;
    std::vector<LocalPrediction> local;
};

inline CohomPrediction predict(const ASCover& cover, int g_y = 0) {
    const std::uint32_t p = cover.p();
    if (g_y < 0) throw precondition_error("BadGenus", "base genus must be nonnegative");
    const auto& branch = cover.branch();
    if (branch.empty()) throw precondition_error("DisconnectedCover", "empty branch locus");
    CohomPrediction out;
    out.g_y = g_y;
    out.h0 = JordanType(p);
    out.h1dr = JordanType(p);
    int s = 0;
    for (const auto& b : branch) s += b.degree() * (b.m + 1);
    out.alpha = s - 2;
    out.genus = static_cast<int>(p) * g_y + (static_cast<int>(p) - 1) * (s - 2) / 2;

    if (g_y) out.h0.add(p, static_cast<std::size_t>(g_y));
    if (cover.geometric_branch_count() > 1) out.h0.add(p - 1, static_cast<std::size_t>(cover.geometric_branch_count() - 1));
    for (const auto& b : branch) {
        LocalPrediction lp{b.place, b.m, local_h0_type(b.m, p), local_h0_type(b.m, p), JordanType(p)};
        if (b.m > 1) lp.h1dr.add(p - 1, static_cast<std::size_t>(b.m - 1));
        for (int k = 0; k < b.degree(); ++k) out.h0 = out.h0 + lp.h0;
        out.local.push_back(std::move(lp));
    }
    out.h1 = out.h0;
    if (g_y) out.h1dr.add(p, static_cast<std::size_t>(2 * g_y));
    if (out.alpha > 0) out.h1dr.add(p - 1, static_cast<std::size_t>(out.alpha));

    ensure(out.h0.dim() == static_cast<std::size_t>(out.genus), "GenusMismatch", "predicted H0 dimension differs from the genus");
    ensure(out.h1dr.dim() == 2 * out.h0.dim(), "GenusMismatch", "predicted de Rham dimension differs from 2g");
    return out;
}

struct LocalBasisIndices {
    std::vector<std::pair<int, int>> h0, h1, dr;
};

/// Index sets (i, j) of the explicit local bases of H0_Q, H1_Q and H1_dR,Q.
inline LocalBasisIndices local_basis_indices(int m, std::uint32_t p) {
    const int ip = static_cast<int>(p);
    if (m <= 0 || std::gcd(m, ip) != 1) throw precondition_error("NotCoprime", "jump must be positive and prime to p");
    LocalBasisIndices out;
    for (int i = 0; i <= ip - 2; ++i)
        for (int j = 2; m * i + ip * j <= (m + 1) * (ip - 1) + 1; ++j) out.h0.emplace_back(i, j);
    for (int i = 1; i <= ip - 1; ++i)
        for (int j = 1; -m * i + ip * j < 1; ++j) out.h1.emplace_back(i, j);
    for (int i = 0; i <= ip - 2; ++i)
        for (int j = 2; j <= m; ++j) out.dr.emplace_back(i, j);
    return out;
}

/// Every jump equals 1; then the Hodge-de Rham sequence splits equivariantly,
/// so the predicted de Rham type must be h0 + h1.
inline bool weakly_ramified(const ASCover& cover) {
    bool weak = true;
    for (const auto& b : cover.branch()) weak = weak && b.m == 1;
    if (weak) {
        CohomPrediction pr = predict(cover);
        ensure(pr.h1dr == pr.h0 + pr.h1, "SplitMismatch", "weakly ramified cover with non-split predicted types");
    }
    return weak;
}

}  // namespace ascohom

#endif
