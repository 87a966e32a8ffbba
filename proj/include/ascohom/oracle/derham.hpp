#ifndef ASCOHOM_ORACLE_DERHAM_HPP
#define ASCOHOM_ORACLE_DERHAM_HPP

// Finite model of H1_dR(X) as pairs (omega, (h_P)) modulo coboundaries:
//   omega: a form regular away from the ramified points, poles <= T_P + 1;
//   h_P:   a principal part at P, in the basis y^i t^j with -T_P <= -i m + p j < 0;
//   cocycle condition: omega - d h_P regular at P;
//   coboundaries: (dh, principal parts of h) for h regular away from the
//   ramified points with poles <= T_P.
// With T_P = d'_P + p * margin, sum_P T_P exceeds 2g - 2, so every class has
// such a representative (Mittag-Leffler on X) and a class that dies in
// H1_dR already dies inside the model. The quotient therefore has dimension
// exactly 2g; the recomputation at margin + 1 is kept as a consistency check.

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "../predict.hpp"
#include "h0.hpp"

namespace ascohom {

namespace detail {
inline int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

/// Local parameter at a rational place: x - a, or 1/x at infinity.
inline RationalFunction local_parameter(const Place& q) {
    const std::uint32_t p = q.modulus();
    if (q.is_infinity()) return RationalFunction(Poly::constant(1, p), Poly::x(p));
    return RationalFunction(Poly::linear(q.point()));
}
}  // namespace detail

/// A class representative: omega = sum_i y^i omega_i dx plus, per branch
/// place, the tail sum c * y^i t^j.
struct TailTerm {
    std::size_t branch = 0;
    int i = 0;
    int j = 0;
    Fp c;
};

struct DeRhamClassRep {
    std::vector<RationalFunction> omega;  // components omega_i
    std::vector<TailTerm> tails;
};

/// (d/dx) coefficients of d(y^i t^j) in the basis y^l dx, exactly.
inline std::vector<RationalFunction> differential_of_monomial(const RationalFunction& f, const Place& q, int i, int j) {
    const std::uint32_t p = f.modulus();
    std::vector<RationalFunction> out(p, RationalFunction(p));
    RationalFunction t = detail::local_parameter(q);
    RationalFunction tj = t.pow(j);
    // d(y^i t^j) = i y^(i-1) t^j dy + y^i d(t^j), dy = -f' dx
    if (i > 0) out[static_cast<std::size_t>(i - 1)] -= Fp(i, p) * (f.derivative() * tj);
    out[static_cast<std::size_t>(i)] += tj.derivative();
    return out;
}

class DeRhamModel {
   public:
    DeRhamModel(const ASCover& cover, int margin) : cover_(cover), p_(cover.p()), margin_(margin) {
        for (const auto& b : cover.branch())
            if (b.degree() != 1) throw precondition_error("NonRationalPlace", "de Rham model needs rational branch places; " + b.place.to_string() + " is not");
        if (margin < 0) throw precondition_error("BadMargin", "truncation margin must be nonnegative");
        build();
    }

    std::uint32_t p() const noexcept { return p_; }
    int margin() const noexcept { return margin_; }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t omega_dim() const noexcept { return omega_dim_; }
    std::size_t tail_dim() const noexcept { return tails_.size(); }
    const MatrixFp& cocycles() const noexcept { return z_; }       // columns span Z1
    const MatrixFp& coboundaries() const noexcept { return b_; }  // columns span B1
    const MatrixFp& nilpotent() const noexcept { return n_; }     // sigma - 1 on the ambient space
    const MatrixFp& constraints() const noexcept { return c_; }

    std::size_t quotient_dim() const { return rank(MatrixFp::hstack(z_, b_)) - rank(b_); }

    /// Jordan type of sigma - 1 on Z1/B1 (or on Z1/(B1 + extra) if extra is given).
    JordanType quotient_type(const MatrixFp* extra = nullptr) const {
        MatrixFp denom = extra ? MatrixFp::hstack(b_, *extra) : b_;
        const std::size_t rb = rank(denom);
        std::vector<std::size_t> ranks;
        MatrixFp nk = z_;
        for (std::uint32_t k = 0; k <= p_; ++k) {
            if (k) nk = n_ * nk;
            ranks.push_back(rank(MatrixFp::hstack(nk, denom)) - rb);
        }
        return jordan_from_ranks(ranks, p_);
    }

    /// Ambient coordinates of (omega, 0) for a holomorphic form y^i g dx.
    std::vector<Fp> embed_form(const FormInBasis& w) const {
        std::vector<Fp> v(ambient_, Fp(0, p_));
        auto coords = omega_spaces_[static_cast<std::size_t>(w.i)].coordinates(w.g);
        if (!coords) throw internal_error("FormOutOfModel", "holomorphic form outside the pole-bounded space");
        for (std::size_t k = 0; k < coords->size(); ++k) v[omega_offset_[static_cast<std::size_t>(w.i)] + k] = (*coords)[k];
        return v;
    }

    /// Decode an ambient vector into forms and tails.
    DeRhamClassRep decode(const std::vector<Fp>& v) const {
        DeRhamClassRep rep;
        rep.omega.assign(p_, RationalFunction(p_));
        for (std::uint32_t i = 0; i < p_; ++i) {
            const auto& s = omega_spaces_[i];
            for (std::size_t k = 0; k < s.dimension(); ++k) {
                Fp c = v[omega_offset_[i] + k];
                if (!c.is_zero()) rep.omega[i] += c * s.element(k);
            }
        }
        for (std::size_t t = 0; t < tails_.size(); ++t) {
            Fp c = v[omega_dim_ + t];
            if (!c.is_zero()) rep.tails.push_back({tails_[t].branch, tails_[t].i, tails_[t].j, c});
        }
        return rep;
    }

    /// Exact cocycle check by the min-rule: omega - d(tail_P) is regular at every P.
    bool is_compatible(const DeRhamClassRep& rep) const {
        const auto& br = cover_.branch();
        for (std::size_t q = 0; q < br.size(); ++q) {
            std::vector<RationalFunction> diff = rep.omega;
            for (const auto& t : rep.tails) {
                if (t.branch != q) continue;
                auto dm = differential_of_monomial(cover_.f(), br[q].place, t.i, t.j);
                for (std::uint32_t l = 0; l < p_; ++l) diff[l] -= t.c * dm[l];
            }
            if (form_valuation(br[q], diff, p_) < 0) return false;
        }
        return true;
    }

    /// Class representatives of a basis of Z1/B1.
    std::vector<DeRhamClassRep> class_representatives() const {
        std::vector<DeRhamClassRep> reps;
        MatrixFp acc = b_;
        std::size_t r = rank(acc);
        for (std::size_t c = 0; c < z_.cols(); ++c) {
            MatrixFp col = MatrixFp::from_columns({z_.column(c)}, ambient_, p_);
            MatrixFp next = MatrixFp::hstack(acc, col);
            std::size_t rn = rank(next);
            if (rn > r) {
                reps.push_back(decode(z_.column(c)));
                acc = std::move(next);
                r = rn;
            }
        }
        return reps;
    }

   private:
    struct TailKey {
        std::size_t branch;
        int i, j;
    };

    void build() {
        const auto& br = cover_.branch();
        const int ip = static_cast<int>(p_);
        for (const auto& b : br) bound_.push_back(b.dprime + ip * margin_);

        // omega_i: poles <= T + 1 above branch places, regular elsewhere
        std::vector<int> omega_pole;
        for (int t : bound_) omega_pole.push_back(t + 1);
        for (int i = 0; i < ip; ++i) {
            omega_offset_.push_back(omega_dim_);
            omega_spaces_.push_back(riemann_roch_space(component_constraints(cover_, i, omega_pole), p_));
            omega_dim_ += omega_spaces_.back().dimension();
        }

        // tail monomials y^i t^j with -T <= -i m + p j < 0
        for (std::size_t q = 0; q < br.size(); ++q)
            for (int i = 0; i < ip; ++i) {
                const int jlo = detail::ceil_div(i * br[q].m - bound_[q], ip);
                const int jhi = detail::floor_div(i * br[q].m - 1, ip);
                for (int j = jlo; j <= jhi; ++j) {
                    tail_index_[{q, i, j}] = tails_.size();
                    tails_.push_back({q, i, j});
                }
            }
        ambient_ = omega_dim_ + tails_.size();

        build_constraints();
        z_ = MatrixFp::from_columns(kernel_basis(c_), ambient_, p_);
        build_coboundaries();
        build_sigma();

        ensure((c_ * b_).is_zero(), "CoboundaryNotCocycle", "a coboundary violates the cocycle conditions");
        ensure((c_ * (n_ * z_)).is_zero(), "ActionNotStable", "sigma does not preserve the cocycles");
    }

    std::optional<std::size_t> tail(std::size_t q, int i, int j) const {
        auto it = tail_index_.find({q, i, j});
        if (it == tail_index_.end()) return std::nullopt;
        return it->second;
    }

    void build_constraints() {
        const auto& br = cover_.branch();
        const int ip = static_cast<int>(p_);
        std::vector<std::vector<Fp>> rows;
        for (std::size_t q = 0; q < br.size(); ++q) {
            const Place& place = br[q].place;
            const bool at_inf = place.is_infinity();
            int jmin = 0;
            for (const auto& t : tails_)
                if (t.branch == q) jmin = std::min(jmin, t.j);
            int top = 0;
            for (int l = 0; l < ip; ++l) top = std::max(top, component_bound(br[q], l, 0, p_));
            Laurent fprime = laurent(cover_.f().derivative(), place, top - jmin + 2);
            for (int l = 0; l < ip; ++l) {
                const int hi = component_bound(br[q], l, 0, p_) - 1;  // coefficients below the holomorphy threshold
                const int lo = component_bound(br[q], l, bound_[q] + 1, p_) - ip - 2;
                if (hi < lo) continue;
                const auto& space = omega_spaces_[static_cast<std::size_t>(l)];
                std::vector<Laurent> ex;
                for (std::size_t k = 0; k < space.dimension(); ++k) ex.push_back(laurent(space.element(k), place, hi));
                for (int k = lo; k <= hi; ++k) {
                    std::vector<Fp> row(ambient_, Fp(0, p_));
                    for (std::size_t e = 0; e < ex.size(); ++e) row[omega_offset_[static_cast<std::size_t>(l)] + e] = ex[e][k];
                    // minus the y^l-component of d(sum c y^i t^j), read at t^k
                    for (const auto& t : tails_) {
                        if (t.branch != q) continue;
                        auto idx = omega_dim_ + *tail(q, t.i, t.j);
                        if (t.i == l + 1) {
                            // -(l+1) f' t^j
                            row[idx] += Fp(l + 1, p_) * fprime[k - t.j];
                        }
                        if (t.i == l && t.j != 0) {
                            // d(t^j)/dx = j t^(j-1), or -j t^(j+1) at infinity
                            if (!at_inf && k == t.j - 1) row[idx] -= Fp(t.j, p_);
                            if (at_inf && k == t.j + 1) row[idx] += Fp(t.j, p_);
                        }
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
        c_ = MatrixFp(rows.size(), ambient_, p_);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < ambient_; ++c) c_.set(r, c, rows[r][c]);
    }

    void build_coboundaries() {
        const auto& br = cover_.branch();
        const int ip = static_cast<int>(p_);
        const RationalFunction fp = cover_.f().derivative();
        std::vector<std::vector<Fp>> cols;
        for (int i = 0; i < ip; ++i) {
            std::vector<std::pair<Place, int>> cons;
            bool inf_branch = false;
            for (std::size_t q = 0; q < br.size(); ++q) {
                cons.emplace_back(br[q].place, detail::ceil_div(i * br[q].m - bound_[q], ip));
                inf_branch = inf_branch || br[q].place.is_infinity();
            }
            if (!inf_branch) cons.emplace_back(Place::infinity(p_), 0);
            RiemannRochSpace fun = riemann_roch_space(cons, p_);
            for (const auto& r : fun.basis()) {
                std::vector<Fp> v(ambient_, Fp(0, p_));
                // d(y^i r) = y^i r' dx - i f' r y^(i-1) dx
                add_form(v, i, r.derivative());
                if (i > 0) add_form(v, i - 1, Fp(-i, p_) * (fp * r));
                for (std::size_t q = 0; q < br.size(); ++q) {
                    const int kmax = detail::floor_div(i * br[q].m - 1, ip);
                    Laurent ex = laurent(r, br[q].place, kmax);
                    for (int k = ex.start; k <= kmax; ++k) {
                        Fp c = ex[k];
                        if (c.is_zero()) continue;
                        auto t = tail(q, i, k);
                        if (!t) throw internal_error("TailOutOfModel", "principal part exceeds the tail bound");
                        v[omega_dim_ + *t] += c;
                    }
                }
                cols.push_back(std::move(v));
            }
        }
        b_ = MatrixFp::from_columns(cols, ambient_, p_);
    }

    void add_form(std::vector<Fp>& v, int i, const RationalFunction& g) const {
        auto coords = omega_spaces_[static_cast<std::size_t>(i)].coordinates(g);
        if (!coords) throw internal_error("FormOutOfModel", "form component outside the pole-bounded space");
        for (std::size_t k = 0; k < coords->size(); ++k) v[omega_offset_[static_cast<std::size_t>(i)] + k] += (*coords)[k];
    }

    void build_sigma() {
        MatrixFp s(ambient_, ambient_, p_);
        for (std::uint32_t i = 0; i < p_; ++i) {
            const auto& space = omega_spaces_[i];
            for (std::size_t k = 0; k < space.dimension(); ++k) {
                const std::size_t col = omega_offset_[i] + k;
                RationalFunction g = space.element(k);
                for (std::uint32_t l = 0; l <= i; ++l) {
                    Fp c = binomial_mod(i, l, p_);
                    if (c.is_zero()) continue;
                    auto coords = omega_spaces_[l].coordinates(g);
                    if (!coords) throw internal_error("ActionNotStable", "sigma left the pole-bounded form space");
                    for (std::size_t e = 0; e < coords->size(); ++e) s.add_to(omega_offset_[l] + e, col, c * (*coords)[e]);
                }
            }
        }
        for (std::size_t t = 0; t < tails_.size(); ++t) {
            const auto& key = tails_[t];
            for (int l = 0; l <= key.i; ++l) {
                Fp c = binomial_mod(static_cast<std::uint32_t>(key.i), static_cast<std::uint32_t>(l), p_);
                if (c.is_zero()) continue;
                // terms that became regular vanish in the principal part
                if (auto target = tail(key.branch, l, key.j)) s.add_to(omega_dim_ + *target, omega_dim_ + t, c);
            }
        }
        n_ = s - MatrixFp::identity(ambient_, p_);
    }

    struct KeyLess {
        bool operator()(const TailKey& a, const TailKey& b) const {
            return std::tie(a.branch, a.i, a.j) < std::tie(b.branch, b.i, b.j);
        }
    };

    ASCover cover_;
    std::uint32_t p_;
    int margin_;
    std::vector<int> bound_;  // T_P per branch place
    std::vector<RiemannRochSpace> omega_spaces_;
    std::vector<std::size_t> omega_offset_;
    std::size_t omega_dim_ = 0;
    std::vector<TailKey> tails_;
    std::map<TailKey, std::size_t, KeyLess> tail_index_;
    std::size_t ambient_ = 0;
    MatrixFp c_, z_, b_, n_;
};

struct DeRhamResult {
    JordanType type;
    std::size_t dim = 0;
    int margin = 0;
    JordanType type_next;  // at margin + 1
    std::size_t dim_next = 0;
    bool stabilized = false;
};

inline DeRhamResult derham_jordan(const ASCover& cover, int margin) {
    DeRhamModel m0(cover, margin), m1(cover, margin + 1);
    DeRhamResult out{m0.quotient_type(), m0.quotient_dim(), margin, m1.quotient_type(), m1.quotient_dim(), false};
    const std::size_t two_g = 2 * static_cast<std::size_t>(genus(cover));
    if (out.dim != two_g && out.dim_next != two_g)
        throw mismatch_error("DimensionMismatch", "de Rham model has dimension " + std::to_string(out.dim) + " / " +
                                                      std::to_string(out.dim_next) + ", expected " + std::to_string(two_g));
    out.stabilized = out.type == out.type_next && out.dim == two_g;
    return out;
}

struct HodgeReport {
    bool independent = false;   // images of H0 are independent in H1_dR
    bool stable = false;        // their span is sigma-stable
    bool quotient_matches = false;  // H1_dR / H0 has the predicted H1(O) type
    JordanType quotient;
    bool ok() const noexcept { return independent && stable && quotient_matches; }
};

inline HodgeReport hodge_filtration_check(const ASCover& cover, int margin = 1) {
    const std::uint32_t p = cover.p();
    DeRhamModel model(cover, margin);
    H0Basis basis = h0_basis(cover);
    HodgeReport out;
    if (basis.forms.empty()) {
        out.independent = out.stable = true;
        out.quotient = model.quotient_type();
        out.quotient_matches = out.quotient == predict(cover).h1;
        return out;
    }
    std::vector<std::vector<Fp>> cols;
    for (const auto& w : basis.forms) cols.push_back(model.embed_form(w));
    MatrixFp h = MatrixFp::from_columns(cols, model.ambient_dim(), p);
    const MatrixFp& b = model.coboundaries();
    const std::size_t rb = rank(b);
    const std::size_t rbh = rank(MatrixFp::hstack(b, h));
    out.independent = rbh - rb == basis.forms.size();
    out.stable = rank(MatrixFp::hstack(h, model.nilpotent() * h)) == rank(h);
    out.quotient = model.quotient_type(&h);
    out.quotient_matches = out.quotient == predict(cover).h1;
    return out;
}

}  // namespace ascohom

#endif
