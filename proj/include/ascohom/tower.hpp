#ifndef ASCOHOM_TOWER_HPP
#define ASCOHOM_TOWER_HPP

// Towers of Artin-Schreier layers y_k^p - y_k = F_k(y_1..y_{k-1}) over a base
// curve. Valuations are never computed from expansions: every order comes
// from the min-rule on normal forms, ramification-index scaling, and the
// pullback rule ord_P(w) = e * ord_Q(w) + d_P for differentials.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ascover.hpp"
#include "elliptic.hpp"
#include "gmodule.hpp"
#include "oracle/asalgebra.hpp"

namespace ascohom {

/// A lower bound on an order of vanishing, and whether it is attained.
struct Valuation {
    static constexpr std::int64_t kInf = std::int64_t{1} << 60;
    std::int64_t value = kInf;
    bool exact = true;

    bool infinite() const noexcept { return value >= kInf; }
    static Valuation at_least(std::int64_t v) { return {v, false}; }

    friend Valuation operator+(Valuation a, Valuation b) {
        if (a.infinite() || b.infinite()) return {};
        return {a.value + b.value, a.exact && b.exact};
    }
    Valuation scaled(std::int64_t s) const { return infinite() ? *this : Valuation{value * s, exact}; }
    friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Min-rule for a sum: exact only when a single exact term is strictly smallest.
inline Valuation min_rule(const std::vector<Valuation>& terms) {
    Valuation best;
    std::size_t attained = 0;
    bool bound_at_min = false;
    for (const auto& t : terms) {
        if (t.infinite()) continue;
        if (best.infinite() || t.value < best.value) {
            best = t;
            attained = 1;
            bound_at_min = !t.exact;
        } else if (t.value == best.value) {
            ++attained;
            bound_at_min = bound_at_min || !t.exact;
        }
    }
    if (best.infinite()) return best;
    best.exact = attained == 1 && !bound_at_min;
    return best;
}

using Exponents = std::vector<std::uint32_t>;

/// Normal form sum c_e y^e with every exponent below p; coefficients in the base.
struct TowerElement {
    std::size_t vars = 0;
    std::map<Exponents, BaseElement> terms;

    bool is_zero() const noexcept { return terms.empty(); }
    /// True when no variable at index >= k occurs.
    bool uses_only_below(std::size_t k) const {
        for (const auto& [e, c] : terms)
            for (std::size_t l = k; l < e.size(); ++l)
                if (e[l]) return false;
        return true;
    }
    void add_term(const Exponents& e, const BaseElement& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms.erase(it);
    }
    friend TowerElement operator+(TowerElement a, const TowerElement& b) {
        for (const auto& [e, c] : b.terms) a.add_term(e, c);
        return a;
    }
    friend TowerElement operator-(TowerElement a, const TowerElement& b) {
        for (const auto& [e, c] : b.terms) a.add_term(e, -c);
        return a;
    }
    friend bool operator==(const TowerElement&, const TowerElement&) = default;
};

class Tower {
   public:
    /// steps[k] is F_{k+1}, a normal-form element in y_1..y_k.
    Tower(BaseCurve base, std::vector<TowerElement> steps) : base_(std::move(base)), steps_(std::move(steps)) {
        const std::size_t n = steps_.size();
        if (n == 0) throw precondition_error("EmptyTower", "a tower needs at least one layer");
        for (std::size_t k = 0; k < n; ++k) {
            steps_[k] = widen(steps_[k]);
            if (!steps_[k].uses_only_below(k))
                throw precondition_error("BadStep", "step " + std::to_string(k + 1) + " uses y_" + std::to_string(k + 1) + " or later");
            for (const auto& [e, c] : steps_[k].terms) {
                for (auto x : e)
                    if (x >= p()) throw precondition_error("BadStep", "exponents must be below p");
                if (c.modulus() != p()) throw precondition_error("BadStep", "coefficient field differs from p");
                if (!base_.is_elliptic() && !c.b().is_zero()) throw precondition_error("BadStep", "w-terms need an elliptic base");
            }
        }
    }

    std::uint32_t p() const noexcept { return base_.p(); }
    std::size_t height() const noexcept { return steps_.size(); }
    const BaseCurve& base() const noexcept { return base_; }
    const TowerElement& step(std::size_t k) const { return steps_.at(k); }

    TowerElement zero() const { return TowerElement{height(), {}}; }
    TowerElement constant(const BaseElement& c) const {
        TowerElement t = zero();
        t.add_term(Exponents(height(), 0), c);
        return t;
    }
    /// y_{k+1}
    TowerElement variable(std::size_t k) const { return monomial(k, 1); }
    TowerElement monomial(std::size_t k, std::uint32_t e) const {
        TowerElement t = zero();
        Exponents ex(height(), 0);
        ex.at(k) = e;
        t.add_term(ex, BaseElement(RationalFunction::constant(1, p())));
        return t;
    }

    TowerElement mul(const TowerElement& a, const TowerElement& b) const {
        TowerElement out = zero();
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                Exponents e(height());
                for (std::size_t l = 0; l < height(); ++l) e[l] = ea[l] + eb[l];
                out = out + reduce_monomial(e, ca.mul(cb, base_));
            }
        return out;
    }

    TowerElement pow(const TowerElement& a, std::uint32_t e) const {
        TowerElement acc = constant(BaseElement(RationalFunction::constant(1, p())));
        for (std::uint32_t i = 0; i < e; ++i) acc = mul(acc, a);
        return acc;
    }

    /// y_{k+1} -> y_{k+1} + j; exponents stay below p, so no reduction is needed.
    TowerElement shift(const TowerElement& a, std::size_t k, std::int64_t j) const {
        TowerElement out = zero();
        const Fp s(j, p());
        for (const auto& [e, c] : a.terms)
            for (std::uint32_t l = 0; l <= e[k]; ++l) {
                Fp coef = binomial_mod(e[k], l, p()) * s.pow(e[k] - l);
                if (coef.is_zero()) continue;
                Exponents ex = e;
                ex[k] = l;
                out.add_term(ex, coef * c);
            }
        return out;
    }

    /// Trace down the tower one layer at a time: sum over y_k -> y_k + j.
    BaseElement trace_full(const TowerElement& a) const {
        TowerElement cur = a;
        for (std::size_t k = height(); k-- > 0;) {
            TowerElement acc = zero();
            for (std::uint32_t j = 0; j < p(); ++j) acc = acc + shift(cur, k, j);
            ensure(acc.uses_only_below(k), "TraceNotInBase", "trace over a layer kept its variable");
            cur = acc;
        }
        auto it = cur.terms.find(Exponents(height(), 0));
        return it == cur.terms.end() ? BaseElement(p()) : it->second;
    }

   private:
    TowerElement widen(const TowerElement& t) const {
        TowerElement out = zero();
        for (const auto& [e, c] : t.terms) {
            if (e.size() > height()) throw precondition_error("BadStep", "more exponents than layers");
            Exponents ex = e;
            ex.resize(height(), 0);
            out.add_term(ex, c);
        }
        return out;
    }

    // y_k^e with e >= p becomes y_k^(e-p) (y_k + F_k); highest layer first.
    TowerElement reduce_monomial(const Exponents& e, const BaseElement& c) const {
        TowerElement out = zero();
        if (c.is_zero()) return out;
        std::size_t k = height();
        for (std::size_t l = height(); l-- > 0;)
            if (e[l] >= p()) {
                k = l;
                break;
            }
        if (k == height()) {
            out.add_term(e, c);
            return out;
        }
        Exponents lifted = e, dropped = e;
        lifted[k] -= p() - 1;
        dropped[k] -= p();
        TowerElement rest = zero();
        rest.add_term(dropped, c);
        return reduce_monomial(lifted, c) + mul(rest, steps_[k]);
    }

    BaseCurve base_;
    std::vector<TowerElement> steps_;
};

/// A tower with its group: generators[k] is a group element acting by
/// y_{k+1} -> y_{k+1} + 1 on the layer it defines.
struct TowerSpec {
    Tower tower;
    std::optional<GroupTable> group;
    std::vector<std::size_t> generators;
    std::vector<std::string> warnings;
};

/// How a layer behaves above one base place.
struct LayerPlace {
    bool ramified = false;
    std::int64_t m = 0;
    std::string route;  // "unramified", "pole-order", "differential", "standard-form"
    Valuation ord_f;    // ord of F_k at the point of X_{k-1}
    Valuation ord_df;
};

/// Data at a representative point above a base place, level by level.
struct PlaceTrack {
    Place place;
    std::vector<std::int64_t> E;   // ramification index of X_k/Y, k = 0..n
    std::vector<std::int64_t> d;   // different exponent of X_k/Y
    std::vector<Valuation> ord_y;  // ord of y_k at level k (original generators)
    std::vector<Valuation> ord_dF; // ord of dF_k at level k-1
    std::vector<LayerPlace> layers;

    std::int64_t points_at(std::size_t level, const BaseCurve& base, std::uint32_t p) const {
        std::int64_t n = base.points_over(place);
        for (std::size_t k = 0; k < level; ++k) n *= p;
        return n / E[level];
    }
};

struct LayerSummary {
    std::int64_t genus_below = 0;  // g(X_{k-1})
    std::int64_t genus = 0;        // g(X_k)
    std::int64_t degree_f = 0;     // deg F_k as a map X_{k-1} -> P^1
    bool degree_exact = true;
    bool genus_bound = false;      // g_k < p (g_{k-1} + deg F_k)
    bool gsf_criterion = false;    // some jump exceeds 2 g_{k-1} p
    bool etale = false;            // unramified everywhere
};

struct TowerAnalysis {
    std::vector<PlaceTrack> places;
    std::vector<LayerSummary> layers;
};

namespace detail {

inline Valuation base_ord(const BaseElement& c, const Place& q, const BaseCurve& base) {
    int o = c.ord(q, base);
    return o == kOrdInfinity ? Valuation{} : Valuation{o, true};
}

inline Valuation base_ord_d(const BaseElement& c, const Place& q, const BaseCurve& base) {
    int o = c.ord_d(q, base);
    return o == kOrdInfinity ? Valuation{} : Valuation{o, true};
}

/// ord at level `to` of a differential known at level `from`.
inline Valuation pull_form(const PlaceTrack& t, Valuation v, std::size_t from, std::size_t to) {
    if (v.infinite()) return v;
    const std::int64_t e = t.E[to] / t.E[from];
    return {e * v.value + (t.d[to] - e * t.d[from]), v.exact};
}

inline Valuation ord_y_at(const PlaceTrack& t, std::size_t var, std::size_t level) {
    return t.ord_y[var].scaled(t.E[level] / t.E[var + 1]);
}

inline Valuation monomial_ord(const PlaceTrack& t, const Exponents& e, std::size_t level) {
    Valuation v{0, true};
    for (std::size_t l = 0; l < e.size(); ++l)
        if (e[l]) v = v + ord_y_at(t, l, level).scaled(e[l]);
    return v;
}

inline Valuation element_ord(const Tower& tw, const PlaceTrack& t, const TowerElement& f, std::size_t level) {
    std::vector<Valuation> terms;
    for (const auto& [e, c] : f.terms) terms.push_back(base_ord(c, t.place, tw.base()).scaled(t.E[level]) + monomial_ord(t, e, level));
    return min_rule(terms);
}

/// ord of df at level `level`, from d(c y^e) = dc y^e + sum_l e_l c y^(e - 1_l) dy_l, dy_l = -dF_l.
inline Valuation element_ord_d(const Tower& tw, const PlaceTrack& t, const TowerElement& f, std::size_t level) {
    std::vector<Valuation> terms;
    for (const auto& [e, c] : f.terms) {
        Valuation dc = pull_form(t, base_ord_d(c, t.place, tw.base()), 0, level);
        terms.push_back(dc + monomial_ord(t, e, level));
        const Valuation oc = base_ord(c, t.place, tw.base()).scaled(t.E[level]);
        for (std::size_t l = 0; l < e.size(); ++l) {
            if (!e[l]) continue;
            Exponents rest = e;
            rest[l] -= 1;
            Valuation dy = pull_form(t, t.ord_dF[l], l, level);
            terms.push_back(oc + monomial_ord(t, rest, level) + dy);
        }
    }
    return min_rule(terms);
}

inline std::vector<Place> tracked_places(const Tower& tw) {
    std::vector<Place> out;
    for (std::size_t k = 0; k < tw.height(); ++k)
        for (const auto& [e, c] : tw.step(k).terms)
            for (const auto& q : c.x_poles()) {
                if (!tw.base().supports(q))
                    throw precondition_error("UnsupportedPlace", "coefficient pole at " + q.to_string() +
                                                                     " is not a 2-torsion point or infinity of the elliptic base");
                if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
            }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Jumps, ramification indices, differents and genera, layer by layer.
inline TowerAnalysis analyze_tower(const Tower& tw) {
    const std::uint32_t p = tw.p();
    const std::int64_t ip = p;
    const std::size_t n = tw.height();
    TowerAnalysis out;
    for (const auto& q : detail::tracked_places(tw)) {
        PlaceTrack t{q, {1}, {0}, {}, {}, {}};
        out.places.push_back(std::move(t));
    }
    std::int64_t g_prev = tw.base().genus();
    for (std::size_t k = 0; k < n; ++k) {
        const TowerElement& f = tw.step(k);
        LayerSummary sum;
        sum.genus_below = g_prev;
        std::int64_t ram_sum = 0;  // sum over points of X_k of (m + 1)(p - 1)
        std::int64_t max_jump = 0;
        for (auto& t : out.places) {
            LayerPlace lp;
            lp.ord_f = detail::element_ord(tw, t, f, k);
            lp.ord_df = detail::element_ord_d(tw, t, f, k);
            const Valuation v = lp.ord_f, dv = lp.ord_df;
            if (v.value >= 0) {
                lp.route = "unramified";
            } else if (v.exact && v.value % ip != 0) {
                lp.ramified = true;
                lp.m = -v.value;
                lp.route = "pole-order";
            } else if (k == 0 && !tw.base().is_elliptic() && f.uses_only_below(0)) {
                auto r = local_standard_form(f.terms.begin()->second.a(), t.place);
                const int o = ord_or_inf(r.reduced, t.place);
                lp.ramified = o < 0;
                lp.m = o < 0 ? -o : 0;
                lp.route = o < 0 ? "standard-form" : "unramified";
            } else if (!dv.infinite() && dv.exact && ip * dv.value < v.value - ip) {
                lp.ramified = true;
                lp.m = -dv.value - 1;
                lp.route = "differential";
                ensure(lp.m > 0 && lp.m % ip != 0, "BadJump", "derived jump is not positive and prime to p");
            } else {
                throw precondition_error("Inconclusive", "layer " + std::to_string(k + 1) + " at " + t.place.to_string() +
                                                             ": ord(F) >= " + std::to_string(v.value) +
                                                             (v.exact ? "" : " (bound)") + " and ord(dF) = " +
                                                             (dv.infinite() ? std::string("inf") : std::to_string(dv.value)) +
                                                             " decide neither the jump nor unramifiedness");
            }
            t.ord_dF.push_back(dv);
            const std::int64_t e = lp.ramified ? ip : 1;
            t.E.push_back(t.E[k] * e);
            t.d.push_back(e * t.d[k] + (lp.ramified ? (lp.m + 1) * (ip - 1) : 0));
            // y^p - y = F: at a pole p * ord(y) = ord(F) at the new level
            if (lp.ramified || v.value < 0) {
                t.ord_y.push_back(Valuation{v.value * e / ip, v.exact});
            } else {
                t.ord_y.push_back(Valuation::at_least(0));
            }
            const std::int64_t pts = t.points_at(k, tw.base(), p);
            if (lp.ramified) {
                ram_sum += pts * (lp.m + 1) * (ip - 1);
                max_jump = std::max(max_jump, lp.m);
            }
            if (v.value < 0) {
                sum.degree_f += pts * -v.value;
                sum.degree_exact = sum.degree_exact && v.exact;
            }
            t.layers.push_back(lp);
        }
        // Riemann-Hurwitz: 2 g_k - 2 = p (2 g_{k-1} - 2) + sum (m + 1)(p - 1)
        const std::int64_t twice = ip * (2 * g_prev - 2) + ram_sum + 2;
        sum.etale = ram_sum == 0;
        // an etale step over a rational curve is geometrically disconnected; keep the formal value
        if (!sum.etale) ensure(twice % 2 == 0 && twice >= 0, "GenusInconsistent", "Riemann-Hurwitz gave a negative or odd value");
        sum.genus = twice / 2;
        sum.gsf_criterion = max_jump > 2 * g_prev * ip;
        sum.genus_bound = sum.genus < ip * (g_prev + sum.degree_f);
        out.layers.push_back(sum);
        g_prev = sum.genus;
    }
    return out;
}

/// z = prod y_k^(p-1), written in the standardized generators. Requires the
/// global standard form criterion at every layer.
inline TowerElement magical_element(const Tower& tw, const TowerAnalysis& an) {
    for (std::size_t k = 0; k < an.layers.size(); ++k)
        if (!an.layers[k].gsf_criterion)
            throw precondition_error("LayerNotStandard", "layer " + std::to_string(k + 1) +
                                                             " has no jump above 2 g p; global standard form not certified");
    TowerElement z = tw.constant(BaseElement(RationalFunction::constant(1, tw.p())));
    for (std::size_t k = 0; k < tw.height(); ++k) z = tw.mul(z, tw.monomial(k, tw.p() - 1));
    BaseElement tr = tw.trace_full(z);
    const Fp expect = (tw.height() % 2) ? Fp(-1, tw.p()) : Fp(1, tw.p());
    ensure(tr == BaseElement(RationalFunction::constant(expect)), "TraceMismatch", "trace of z is not (-1)^height");
    return z;
}

struct ConditionBEntry {
    Place place;
    std::int64_t ord_z = 0;
    bool exact = true;
    std::int64_t minus_dprime = 0;
    bool holds = false;
};

struct ConditionBReport {
    enum class Status { Holds, Fails, Inconclusive };
    Status status = Status::Inconclusive;
    std::string reason;
    Fp trace{0, 2};
    std::vector<ConditionBEntry> entries;
    bool holds() const noexcept { return status == Status::Holds; }
};

/// ord_P(z) >= -d'_P at every point and tr(z) != 0, with per-place certificates.
/// Away from the tracked places everything is regular and d' = 0.
inline ConditionBReport evaluate_condition_B(const Tower& tw, const TowerAnalysis& an) {
    ConditionBReport rep;
    const std::int64_t ip = tw.p();
    const std::size_t n = tw.height();
    try {
        TowerElement z = magical_element(tw, an);
        rep.trace = tw.trace_full(z).a().constant_value();
    } catch (const Error& e) {
        rep.reason = e.what();
        return rep;
    }
    rep.status = ConditionBReport::Status::Holds;
    for (const auto& t : an.places) {
        ConditionBEntry c{t.place, 0, true, -(t.d[n] - (t.E[n] - 1)), false};
        for (std::size_t k = 0; k < n; ++k) {
            if (t.layers[k].ramified) {
                c.ord_z -= (ip - 1) * (t.E[n] / t.E[k + 1]) * t.layers[k].m;
            } else {
                c.exact = false;  // standardized y_k is regular there
            }
        }
        c.holds = c.ord_z >= c.minus_dprime;
        if (!c.holds && rep.status == ConditionBReport::Status::Holds) {
            rep.status = ConditionBReport::Status::Fails;
            rep.reason = "ConditionBFails at " + t.place.to_string() + ": ord(z) = " + std::to_string(c.ord_z) + " < " +
                         std::to_string(c.minus_dprime);
        }
        rep.entries.push_back(c);
    }
    return rep;
}

inline ConditionBReport check_condition_B(const Tower& tw) {
    TowerAnalysis an = analyze_tower(tw);
    ConditionBReport rep = evaluate_condition_B(tw, an);
    if (rep.status == ConditionBReport::Status::Fails) throw mismatch_error("ConditionBFails", rep.reason);
    if (rep.status == ConditionBReport::Status::Inconclusive) throw precondition_error("Inconclusive", rep.reason);
    return rep;
}

struct StabilizerEntry {
    Place place;
    std::vector<std::size_t> ramified_layers;  // 1-based
    std::vector<std::size_t> subgroup;
    std::string type;
    bool normal = false;
};

struct ConditionAReport {
    std::vector<StabilizerEntry> entries;
    bool all_normal = false;
    bool generate = false;                 // stabilizers generate G
    std::vector<std::size_t> etale_layers;  // 1-based
    bool holds() const noexcept { return all_normal && generate && etale_layers.empty(); }
};

/// Stabilizer above each tracked place: generated by the generators of the
/// layers ramified there; normality decides condition (A).
inline ConditionAReport check_condition_A_and_stabilizers(const TowerSpec& spec, const TowerAnalysis& an) {
    if (!spec.group) throw precondition_error("NoGroup", "tower has no group table");
    const GroupTable& g = *spec.group;
    const std::size_t n = spec.tower.height();
    if (spec.generators.size() != n) throw precondition_error("BadGenerators", "need one generator per layer");
    if (g.p() != spec.tower.p()) throw precondition_error("NotAPGroup", "group and tower have different p");
    ConditionAReport rep;
    rep.all_normal = true;
    std::vector<std::size_t> all;
    for (const auto& t : an.places) {
        StabilizerEntry s{t.place, {}, {}, "", false};
        std::vector<std::size_t> gens;
        for (std::size_t k = 0; k < n; ++k)
            if (t.layers[k].ramified) {
                s.ramified_layers.push_back(k + 1);
                gens.push_back(spec.generators[k]);
            }
        if (gens.empty()) continue;
        s.subgroup = g.subgroup_generated(gens);
        std::size_t expect = 1;
        for (std::size_t i = 0; i < gens.size(); ++i) expect *= g.p();
        ensure(s.subgroup.size() == expect, "StabilizerLabeling", "layer generators do not span a subgroup of order p^#ramified layers");
        s.normal = g.is_normal(s.subgroup);
        s.type = g.describe(s.subgroup);
        rep.all_normal = rep.all_normal && s.normal;
        all.insert(all.end(), s.subgroup.begin(), s.subgroup.end());
        rep.entries.push_back(std::move(s));
    }
    rep.generate = !all.empty() && g.subgroup_generated(all).size() == g.order();
    for (std::size_t k = 0; k < an.layers.size(); ++k)
        if (an.layers[k].etale) rep.etale_layers.push_back(k + 1);
    return rep;
}

struct HeisenbergParams {
    std::int64_t a1 = 0, a2 = 0, b2 = 0, a3 = 0, b3 = 0, c3 = 0;
    std::array<std::int64_t, 3> roots{0, 1, 2};
};

/// y1^p - y1 = f1, y2^p - y2 = f2, y3^p - y3 = f3 + f2 (y1 - y2) over
/// w^2 = (x - r1)(x - r2)(x - r3), with
/// f1 = (x-r1)^-a1, f2 = (x-r1)^-a2 (x-r2)^-b2, f3 = (x-r1)^-a3 (x-r2)^-b3 (x-r3)^-c3.
inline TowerSpec heisenberg_family(std::uint32_t p, const HeisenbergParams& h) {
    if (p < 3 || !is_prime(p)) throw precondition_error("ParameterViolation", "the construction needs an odd prime p");
    std::vector<std::string> warnings;
    if (p < 5) warnings.push_back("p = 3: the tower is built, but conditions (A) and (B) are only certified for p >= 5");
    const std::int64_t ip = p;
    const std::vector<std::pair<const char*, std::int64_t>> named = {{"a1", h.a1}, {"a2", h.a2}, {"b2", h.b2},
                                                                     {"a3", h.a3}, {"b3", h.b3}, {"c3", h.c3}};
    for (const auto& [name, v] : named) {
        if (v <= 0) throw precondition_error("ParameterViolation", std::string(name) + " must be positive");
        if (v % ip == 0) throw precondition_error("ParameterViolation", std::string(name) + " = " + std::to_string(v) + " is divisible by p");
    }
    if (!(h.a1 > ip)) throw precondition_error("ParameterViolation", "a1 > p fails");
    if (!(h.a2 > 4 * h.a1 * ip)) throw precondition_error("ParameterViolation", "a2 > 4 a1 p fails");
    if (!(h.a3 > 4 * ip * (h.a1 + h.a2 + h.b2))) throw precondition_error("ParameterViolation", "a3 > 4 p (a1 + a2 + b2) fails");
    if (!(h.b3 > 4 * h.b2)) throw precondition_error("ParameterViolation", "b3 > 4 b2 fails");

    BaseCurve base = BaseCurve::elliptic(h.roots, p);
    auto lin_pow = [&](std::size_t i, std::int64_t e) {
        return RationalFunction(Poly::constant(1, p), pow(Poly::linear(base.roots()[i]), static_cast<std::uint64_t>(e)));
    };
    RationalFunction f1 = lin_pow(0, h.a1);
    RationalFunction f2 = lin_pow(0, h.a2) * lin_pow(1, h.b2);
    RationalFunction f3 = lin_pow(0, h.a3) * lin_pow(1, h.b3) * lin_pow(2, h.c3);

    TowerElement s1{3, {}}, s2{3, {}}, s3{3, {}};
    s1.add_term({0, 0, 0}, BaseElement(f1));
    s2.add_term({0, 0, 0}, BaseElement(f2));
    s3.add_term({0, 0, 0}, BaseElement(f3));
    s3.add_term({1, 0, 0}, BaseElement(f2));
    s3.add_term({0, 1, 0}, BaseElement(-f2));

    // E(p^3) as unitriangular matrices: layer 1 moves y1, layers 2 and 3 span
    // the normal subgroup fixing y1, and layer 3 is the centre.
    return TowerSpec{Tower(base, {s1, s2, s3}), GroupTable::heisenberg(p),
                     {GroupTable::heisenberg_index(p, 1, 0, 0), GroupTable::heisenberg_index(p, 0, 1, 0),
                      GroupTable::heisenberg_index(p, 0, 0, 1)},
                     std::move(warnings)};
}

struct BoundCheck {
    std::string name;
    std::int64_t lhs = 0;
    std::string op;
    std::int64_t rhs = 0;
    bool holds = false;
};

/// The inequalities behind the Heisenberg certificate, with the actual
/// values computed from the tower analysis.
inline std::vector<BoundCheck> heisenberg_bounds(const TowerSpec& spec, const TowerAnalysis& an, const HeisenbergParams& h) {
    const std::int64_t p = spec.tower.p();
    auto at = [&](std::size_t root) -> const PlaceTrack& {
        for (const auto& t : an.places)
            if (!t.place.is_infinity() && t.place.point() == spec.tower.base().roots()[root]) return t;
        throw internal_error("MissingPlace", "branch place over a root is not tracked");
    };
    const PlaceTrack& q1 = at(0);
    const PlaceTrack& q2 = at(1);
    const PlaceTrack& q3 = at(2);
    const std::int64_t gy = spec.tower.base().genus();
    const std::int64_t g1 = an.layers[0].genus, g2 = an.layers[1].genus;
    auto lt = [](std::string name, std::int64_t a, std::int64_t b) { return BoundCheck{std::move(name), a, "<", b, a < b}; };
    auto gt = [](std::string name, std::int64_t a, std::int64_t b) { return BoundCheck{std::move(name), a, ">", b, a > b}; };
    auto eq = [](std::string name, std::int64_t a, std::int64_t b) { return BoundCheck{std::move(name), a, "=", b, a == b}; };
    std::vector<BoundCheck> out;
    out.push_back(eq("m(X1/Y, Q1) = 2 a1", q1.layers[0].m, 2 * h.a1));
    out.push_back(gt("m(X1/Y, Q1) > 2 g(Y) p", q1.layers[0].m, 2 * gy * p));
    out.push_back(lt("g(X1) < p (g(Y) + deg f1)", g1, p * (gy + an.layers[0].degree_f)));
    out.push_back(lt("g(X1) < 3 a1 p", g1, 3 * h.a1 * p));
    out.push_back(gt("m(X2/X1, Q1) > 2 g(X1) p", q1.layers[1].m, 2 * g1 * p));
    out.push_back(lt("m(X2/X1, Q1) < 2 a2 p", q1.layers[1].m, 2 * h.a2 * p));
    out.push_back(lt("g(X2) < p (g(X1) + deg f2)", g2, p * (g1 + an.layers[1].degree_f)));
    out.push_back(lt("g(X2) < 3 p^2 (a1 + a2 + b2)", g2, 3 * p * p * (h.a1 + h.a2 + h.b2)));
    const std::int64_t dprime2 = q1.d[2] - (q1.E[2] - 1);
    out.push_back(lt("d'(X2/Y, Q1) < 2 p^2 (a1 + a2)", dprime2, 2 * p * p * (h.a1 + h.a2)));
    out.push_back(gt("m(X/X2, Q1) > 2 g(X2) p", q1.layers[2].m, 2 * g2 * p));
    out.push_back(gt("m(X/X2, Q2) > 0", q2.layers[2].m, 0));
    out.push_back(gt("m(X/X2, Q3) > 0", q3.layers[2].m, 0));
    for (std::size_t k = 0; k < an.layers.size(); ++k)
        out.push_back(lt("g(X" + std::to_string(k + 1) + ") < p (g(X" + std::to_string(k) + ") + deg F" + std::to_string(k + 1) + ")",
                         an.layers[k].genus, p * (an.layers[k].genus_below + an.layers[k].degree_f)));
    return out;
}

}  // namespace ascohom

#endif
