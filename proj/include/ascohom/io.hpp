#ifndef ASCOHOM_IO_HPP
#define ASCOHOM_IO_HPP

// JSON cover and tower files. A rational function is {"num": [...], "den": [...]}
// with little-endian coefficients in [0, p); a place is its coefficient array
// or "inf". A step is either a plain rational function or
// {"terms": [{"y": [e1, ...], "a": R, "b": R}]} for a + b w times y1^e1 ...

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tower.hpp"

namespace ascohom::io {

using json = nlohmann::ordered_json;

struct CoverFile {
    std::uint32_t p = 2;
    BaseCurve base = BaseCurve::projective_line(2);
    std::vector<TowerElement> steps;  // widened to the height
    std::string label;
    std::optional<std::string> group;
    std::vector<std::size_t> generators;

    std::size_t height() const noexcept { return steps.size(); }
    bool is_plain_cover() const noexcept { return height() == 1 && !base.is_elliptic() && steps[0].uses_only_below(0); }
};

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw parse_error("BadField", where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw parse_error("MissingField", where + "." + key + ": missing");
    return *it;
}

inline std::int64_t parse_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw parse_error("BadField", where + ": expected an integer");
    return j.get<std::int64_t>();
}

inline std::vector<std::int64_t> parse_coeffs(const json& j, std::uint32_t p, const std::string& where) {
    if (!j.is_array()) throw parse_error("BadField", where + ": expected an array of coefficients");
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        const std::int64_t v = parse_int(j[i], at);
        if (v < 0 || v >= static_cast<std::int64_t>(p))
            throw parse_error("BadCoefficient", at + " = " + std::to_string(v) + " is not in [0, " + std::to_string(p) + ")");
        out.push_back(v);
    }
    return out;
}

inline json coeffs_to_json(const Poly& f) {
    json a = json::array();
    for (std::size_t i = 0; i < f.size(); ++i) a.push_back(f.coeff(i).value());
    return a;
}

}  // namespace detail

inline json to_json(const Poly& f) { return detail::coeffs_to_json(f); }

inline json to_json(const RationalFunction& f) {
    json j = json::object();
    j["num"] = detail::coeffs_to_json(f.num());
    j["den"] = detail::coeffs_to_json(f.den());
    return j;
}

inline json to_json(const Place& q) {
    if (q.is_infinity()) return "inf";
    return detail::coeffs_to_json(q.poly());
}

inline json to_json(const JordanType& t) {
    json j = json::object();
    for (std::size_t i = t.p(); i >= 1; --i)
        if (t.count(i)) j["J" + std::to_string(i)] = t.count(i);
    return j;
}

inline RationalFunction parse_rational(const json& j, std::uint32_t p, const std::string& where) {
    Poly num(detail::parse_coeffs(detail::field(j, "num", where), p, where + ".num"), p);
    Poly den = Poly::constant(1, p);
    if (j.contains("den")) den = Poly(detail::parse_coeffs(j["den"], p, where + ".den"), p);
    if (den.is_zero()) throw parse_error("ZeroDenominator", where + ".den: denominator is zero");
    return RationalFunction(std::move(num), std::move(den));
}

inline Place parse_place(const json& j, std::uint32_t p, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") throw parse_error("BadField", where + ": expected \"inf\" or a coefficient array");
        return Place::infinity(p);
    }
    return Place::finite(Poly(detail::parse_coeffs(j, p, where), p));
}

inline BaseCurve parse_base(const json& j, std::uint32_t p, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() != "P1") throw parse_error("BadField", where + ": unknown base '" + j.get<std::string>() + "'");
        return BaseCurve::projective_line(p);
    }
    const json& r = detail::field(j, "elliptic", where);
    if (!r.is_array() || r.size() != 3) throw parse_error("BadField", where + ".elliptic: expected three roots");
    auto roots = detail::parse_coeffs(r, p, where + ".elliptic");
    return BaseCurve::elliptic({roots[0], roots[1], roots[2]}, p);
}

inline json to_json(const BaseCurve& b) {
    if (!b.is_elliptic()) return "P1";
    json r = json::array();
    for (const auto& a : b.roots()) r.push_back(a.value());
    json j = json::object();
    j["elliptic"] = r;
    return j;
}

/// Step k may use y_1 .. y_k only, with exponents below p.
inline TowerElement parse_step(const json& j, std::size_t k, std::size_t height, std::uint32_t p, const std::string& where) {
    TowerElement t{height, {}};
    if (j.is_object() && j.contains("num")) {
        t.add_term(Exponents(height, 0), BaseElement(parse_rational(j, p, where)));
        return t;
    }
    const json& terms = detail::field(j, "terms", where);
    if (!terms.is_array()) throw parse_error("BadField", where + ".terms: expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string at = where + ".terms[" + std::to_string(i) + "]";
        Exponents e(height, 0);
        if (terms[i].contains("y")) {
            const json& y = terms[i]["y"];
            if (!y.is_array() || y.size() > k)
                throw parse_error("BadField", at + ".y: step " + std::to_string(k + 1) + " may use at most " + std::to_string(k) + " variables");
            for (std::size_t l = 0; l < y.size(); ++l) {
                const std::int64_t v = detail::parse_int(y[l], at + ".y[" + std::to_string(l) + "]");
                if (v < 0 || v >= static_cast<std::int64_t>(p))
                    throw parse_error("BadExponent", at + ".y[" + std::to_string(l) + "] = " + std::to_string(v) + " is not in [0, p)");
                e[l] = static_cast<std::uint32_t>(v);
            }
        }
        RationalFunction a = terms[i].contains("a") ? parse_rational(terms[i]["a"], p, at + ".a") : RationalFunction(p);
        RationalFunction b = terms[i].contains("b") ? parse_rational(terms[i]["b"], p, at + ".b") : RationalFunction(p);
        t.add_term(e, BaseElement(a, b));
    }
    return t;
}

/// Canonical form: a plain rational function when the step has one term free
/// of y and w, otherwise the term list in exponent order.
inline json step_to_json(const TowerElement& t, std::size_t k) {
    if (t.terms.size() == 1) {
        const auto& [e, c] = *t.terms.begin();
        bool plain = c.b().is_zero();
        for (auto v : e) plain = plain && v == 0;
        if (plain) return to_json(c.a());
    }
    json terms = json::array();
    for (const auto& [e, c] : t.terms) {
        json term = json::object();
        term["y"] = json(std::vector<std::uint32_t>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k)));
        if (!c.a().is_zero()) term["a"] = to_json(c.a());
        if (!c.b().is_zero()) term["b"] = to_json(c.b());
        terms.push_back(term);
    }
    json j = json::object();
    j["terms"] = terms;
    return j;
}

inline CoverFile parse_cover(const json& j, const std::string& where = "$") {
    CoverFile c;
    const std::int64_t p = detail::parse_int(detail::field(j, "p", where), where + ".p");
    if (p < 2 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p))) throw parse_error("BadField", where + ".p = " + std::to_string(p) + " is not a supported prime");
    c.p = static_cast<std::uint32_t>(p);
    c.base = j.contains("base") ? parse_base(j["base"], c.p, where + ".base") : BaseCurve::projective_line(c.p);
    json steps;
    if (j.contains("steps")) {
        steps = j["steps"];
    } else if (j.contains("f")) {
        steps = json::array({j["f"]});
    } else {
        throw parse_error("MissingField", where + ".steps: missing (or give a single f)");
    }
    if (!steps.is_array() || steps.empty()) throw parse_error("BadField", where + ".steps: expected a nonempty array");
    for (std::size_t k = 0; k < steps.size(); ++k)
        c.steps.push_back(parse_step(steps[k], k, steps.size(), c.p, where + ".steps[" + std::to_string(k) + "]"));
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw parse_error("BadField", where + ".label: expected a string");
        c.label = j["label"].get<std::string>();
    }
    if (j.contains("group")) {
        if (!j["group"].is_string()) throw parse_error("BadField", where + ".group: expected a selector string");
        c.group = j["group"].get<std::string>();
    }
    if (j.contains("generators")) {
        const json& g = j["generators"];
        if (!g.is_array()) throw parse_error("BadField", where + ".generators: expected an array");
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::int64_t v = detail::parse_int(g[i], where + ".generators[" + std::to_string(i) + "]");
            if (v < 0) throw parse_error("BadField", where + ".generators[" + std::to_string(i) + "]: negative index");
            c.generators.push_back(static_cast<std::size_t>(v));
        }
    }
    return c;
}

inline json to_json(const CoverFile& c) {
    json j = json::object();
    if (!c.label.empty()) j["label"] = c.label;
    j["p"] = c.p;
    j["base"] = to_json(c.base);
    json steps = json::array();
    for (std::size_t k = 0; k < c.steps.size(); ++k) steps.push_back(step_to_json(c.steps[k], k));
    j["steps"] = steps;
    if (c.group) j["group"] = *c.group;
    if (!c.generators.empty()) j["generators"] = c.generators;
    return j;
}

inline json parse_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("BadJson", source + ": " + e.what());
    }
}

/// One cover or a batch {"covers": [...]}.
inline std::vector<CoverFile> parse_batch(const json& j) {
    std::vector<CoverFile> out;
    if (j.is_object() && j.contains("covers")) {
        const json& cs = j["covers"];
        if (!cs.is_array()) throw parse_error("BadField", "$.covers: expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i) out.push_back(parse_cover(cs[i], "$.covers[" + std::to_string(i) + "]"));
    } else {
        out.push_back(parse_cover(j));
    }
    return out;
}

inline ASCover to_cover(const CoverFile& c) {
    if (!c.is_plain_cover()) throw precondition_error("NotACover", "expected a single step over P1 with no y or w terms");
    if (c.steps[0].terms.empty()) return ASCover(RationalFunction(c.p));
    const BaseElement& f = c.steps[0].terms.begin()->second;
    if (!f.b().is_zero()) throw precondition_error("NotACover", "w terms need an elliptic base");
    return ASCover(f.a());
}

inline CoverFile from_cover(const RationalFunction& f, std::string label = "") {
    CoverFile c;
    c.p = f.modulus();
    c.base = BaseCurve::projective_line(c.p);
    TowerElement t{1, {}};
    t.add_term(Exponents(1, 0), BaseElement(f));
    c.steps.push_back(t);
    c.label = std::move(label);
    return c;
}

/// Tower and group; a tower without a group gets (Z/p)^n when no step uses a
/// lower variable, with generator k acting on layer k alone.
inline TowerSpec to_tower_spec(const CoverFile& c) {
    TowerSpec s{Tower(c.base, c.steps), std::nullopt, c.generators, {}};
    if (c.group) {
        s.group = GroupTable::from_selector(*c.group, c.p);
    } else {
        bool split = true;
        for (const auto& st : c.steps) split = split && st.uses_only_below(0);
        if (split && c.generators.empty()) {
            s.group = GroupTable::elementary_abelian(c.p, c.height());
            std::size_t g = 1;
            for (std::size_t k = 0; k < c.height(); ++k, g *= c.p) s.generators.push_back(g);
        }
    }
    return s;
}

inline CoverFile from_tower_spec(const TowerSpec& s, std::string group_selector, std::string label = "") {
    CoverFile c;
    c.p = s.tower.p();
    c.base = s.tower.base();
    for (std::size_t k = 0; k < s.tower.height(); ++k) c.steps.push_back(s.tower.step(k));
    c.group = std::move(group_selector);
    c.generators = s.generators;
    c.label = std::move(label);
    return c;
}

}  // namespace ascohom::io

#endif
