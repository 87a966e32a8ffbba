#ifndef ASCOHOM_REPORT_HPP
#define ASCOHOM_REPORT_HPP

// Subcommand bodies shared by the CLI and the acceptance runner. Each returns
// the structured report and the exit code; nothing here touches the clock
// unless timing is requested, so reports are reproducible byte for byte.

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <sstream>

#include "io.hpp"
#include "oracle/derham.hpp"
#include "oracle/resg.hpp"
#include "predict.hpp"

namespace ascohom::report {

using io::json;

struct Outcome {
    json report;
    int exit_code = 0;
};

inline json branch_table(const ASCover& c) {
    json rows = json::array();
    for (const auto& b : c.branch()) {
        json r = json::object();
        r["place"] = io::to_json(b.place);
        r["degree"] = b.degree();
        r["m"] = b.m;
        r["d"] = b.d;
        r["d1"] = b.dprime;
        r["d2"] = b.ddoubleprime;
        rows.push_back(r);
    }
    return rows;
}

inline json prediction_json(const CohomPrediction& pr) {
    json j = json::object();
    j["alpha"] = pr.alpha;
    j["h0"] = io::to_json(pr.h0);
    j["h1"] = io::to_json(pr.h1);
    j["h1dr"] = io::to_json(pr.h1dr);
    json local = json::array();
    for (const auto& l : pr.local) {
        json r = json::object();
        r["place"] = io::to_json(l.place);
        r["m"] = l.m;
        r["h0"] = io::to_json(l.h0);
        local.push_back(r);
    }
    j["local"] = local;
    return j;
}

/// Echo, standardized f, branch table, genus, predictions.
inline json analyze_one(const io::CoverFile& file, const ASCover& std_cover) {
    json j = json::object();
    if (!file.label.empty()) j["label"] = file.label;
    j["p"] = file.p;
    j["input"] = io::to_json(file.steps[0].terms.empty() ? RationalFunction(file.p) : file.steps[0].terms.begin()->second.a());
    j["standardized"] = io::to_json(std_cover.f());
    j["shift"] = io::to_json(std_cover.shift());
    j["branch"] = branch_table(std_cover);
    j["genus"] = genus(std_cover);
    j["weakly_ramified"] = weakly_ramified(std_cover);
    j["prediction"] = prediction_json(predict(std_cover));
    return j;
}

inline Outcome cmd_analyze(const std::vector<io::CoverFile>& files) {
    json arr = json::array();
    for (const auto& f : files) arr.push_back(analyze_one(f, global_standard_form(io::to_cover(f))));
    Outcome o;
    o.report["command"] = "analyze";
    o.report["covers"] = arr;
    return o;
}

inline Outcome cmd_standard_form(const std::vector<io::CoverFile>& files) {
    json arr = json::array();
    for (const auto& f : files) {
        ASCover c = global_standard_form(io::to_cover(f));
        json j = json::object();
        if (!f.label.empty()) j["label"] = f.label;
        j["p"] = f.p;
        j["standardized"] = io::to_json(c.f());
        j["shift"] = io::to_json(c.shift());
        j["branch"] = branch_table(c);
        arr.push_back(j);
    }
    Outcome o;
    o.report["command"] = "standard-form";
    o.report["covers"] = arr;
    return o;
}

enum class Which { h0, derham, resg, all };

inline Which parse_which(const std::string& s) {
    if (s == "h0") return Which::h0;
    if (s == "derham") return Which::derham;
    if (s == "resg") return Which::resg;
    if (s == "all") return Which::all;
    throw parse_error("BadField", "which = '" + s + "': expected h0, derham, resg or all");
}

inline const char* verdict(bool ok) { return ok ? "match" : "mismatch"; }

inline json verify_h0(const ASCover& c, const CohomPrediction& pr, bool& ok) {
    JordanType oracle = sigma_jordan_h0(c);
    json j = json::object();
    j["predicted"] = io::to_json(pr.h0);
    j["oracle"] = io::to_json(oracle);
    j["dim"] = oracle.dim();
    const bool m = oracle == pr.h0;
    j["verdict"] = verdict(m);
    ok = ok && m;
    return j;
}

inline json verify_derham(const ASCover& c, const CohomPrediction& pr, int margin, bool& ok) {
    DeRhamResult r = derham_jordan(c, margin);
    HodgeReport h = hodge_filtration_check(c, margin);
    const std::size_t two_g = 2 * static_cast<std::size_t>(genus(c));
    json j = json::object();
    j["margin"] = margin;
    j["predicted"] = io::to_json(pr.h1dr);
    j["oracle"] = io::to_json(r.type);
    j["dim"] = r.dim;
    j["two_genus"] = two_g;
    j["oracle_next_margin"] = io::to_json(r.type_next);
    j["stabilized"] = r.stabilized;
    json hj = json::object();
    hj["h0_independent"] = h.independent;
    hj["h0_stable"] = h.stable;
    hj["quotient"] = io::to_json(h.quotient);
    hj["quotient_matches_h1"] = h.quotient_matches;
    j["hodge"] = hj;
    const bool weak = weakly_ramified(c);
    const JordanType split = pr.h0 + pr.h1;
    json sj = json::object();
    sj["weakly_ramified"] = weak;
    sj["h0_plus_h1"] = io::to_json(split);
    sj["oracle_equals_h0_plus_h1"] = r.type == split;
    int d2 = 0;
    for (const auto& b : c.branch()) d2 = std::max(d2, b.ddoubleprime);
    sj["max_d2"] = d2;
    j["splitting"] = sj;
    const bool m = r.type == pr.h1dr && r.dim == two_g && r.stabilized && h.ok() && (!weak || r.type == split);
    j["verdict"] = verdict(m);
    ok = ok && m;
    return j;
}

inline json verify_resg(const ASCover& c, bool& ok) {
    ResGReport r = res_G_report(c);
    SectionReport s = res_G_section_check(c);
    json j = json::object();
    j["rank"] = r.rank;
    j["expected_rank"] = r.expected_rank;
    j["kernel_dim"] = r.kernel_dim;
    j["image_in_ixy"] = r.image_in_ixy;
    j["section_dim"] = s.dimension;
    j["section_holomorphic"] = s.holomorphic;
    j["section_identity"] = s.identity;
    const bool m = r.rank == r.expected_rank && r.image_in_ixy && s.ok();
    j["verdict"] = verdict(m);
    ok = ok && m;
    return j;
}

inline Outcome cmd_verify(const std::vector<io::CoverFile>& files, Which which, int margin, bool timing = false) {
    if (margin < 0) throw precondition_error("BadMargin", "truncation margin must be nonnegative");
    json arr = json::array();
    bool all_ok = true;
    for (const auto& f : files) {
        const auto t0 = std::chrono::steady_clock::now();
        ASCover c = global_standard_form(io::to_cover(f));
        CohomPrediction pr = predict(c);
        json j = analyze_one(f, c);
        bool ok = true;
        if (which == Which::h0 || which == Which::all) j["h0"] = verify_h0(c, pr, ok);
        if (which == Which::derham || which == Which::all) j["derham"] = verify_derham(c, pr, margin, ok);
        if (which == Which::resg || which == Which::all) j["resg"] = verify_resg(c, ok);
        j["verdict"] = verdict(ok);
        if (timing)
            j["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        all_ok = all_ok && ok;
        arr.push_back(j);
    }
    Outcome o;
    o.report["command"] = "verify";
    o.report["covers"] = arr;
    o.report["verdict"] = verdict(all_ok);
    o.exit_code = all_ok ? 0 : static_cast<int>(ErrorKind::mismatch);
    return o;
}

inline json valuation_json(const Valuation& v) {
    if (v.infinite()) return "inf";
    if (v.exact) return v.value;
    return ">=" + std::to_string(v.value);
}

/// The tower may sit at the top level or under "tower".
inline io::CoverFile tower_file(const json& j) {
    if (j.is_object() && j.contains("tower")) return io::parse_cover(j["tower"], "$.tower");
    return io::parse_cover(j);
}

inline Outcome cmd_magical(const io::CoverFile& file) {
    TowerSpec spec = io::to_tower_spec(file);
    const Tower& tw = spec.tower;
    TowerAnalysis an = analyze_tower(tw);
    json rep = json::object();
    rep["command"] = "magical";
    if (!file.label.empty()) rep["label"] = file.label;
    rep["p"] = tw.p();
    rep["base"] = io::to_json(tw.base());
    rep["height"] = tw.height();

    json layers = json::array();
    for (std::size_t k = 0; k < an.layers.size(); ++k) {
        const auto& l = an.layers[k];
        json r = json::object();
        r["layer"] = k + 1;
        r["genus_below"] = l.genus_below;
        r["genus"] = l.genus;
        r["degree_f"] = l.degree_exact ? json(l.degree_f) : json(">=" + std::to_string(l.degree_f));
        r["genus_bound"] = l.genus_bound;
        r["gsf_criterion"] = l.gsf_criterion;
        r["etale"] = l.etale;
        layers.push_back(r);
    }
    rep["layers"] = layers;

    json places = json::array();
    for (const auto& t : an.places) {
        json r = json::object();
        r["place"] = io::to_json(t.place);
        json ls = json::array();
        for (std::size_t k = 0; k < t.layers.size(); ++k) {
            const auto& lp = t.layers[k];
            json x = json::object();
            x["layer"] = k + 1;
            x["ramified"] = lp.ramified;
            x["m"] = lp.m;
            x["route"] = lp.route;
            x["ord_f"] = valuation_json(lp.ord_f);
            x["ord_df"] = valuation_json(lp.ord_df);
            ls.push_back(x);
        }
        r["layers"] = ls;
        r["ramification_index"] = t.E.back();
        r["different"] = t.d.back();
        places.push_back(r);
    }
    rep["places"] = places;

    std::vector<std::string> failures;
    ConditionBReport b = evaluate_condition_B(tw, an);
    json bj = json::object();
    bj["status"] = b.status == ConditionBReport::Status::Holds  ? "holds"
                   : b.status == ConditionBReport::Status::Fails ? "fails"
                                                                 : "inconclusive";
    if (!b.reason.empty()) bj["reason"] = b.reason;
    if (b.status != ConditionBReport::Status::Inconclusive) bj["trace"] = b.trace.signed_value();
    json certs = json::array();
    for (const auto& e : b.entries) {
        json r = json::object();
        r["place"] = io::to_json(e.place);
        r["ord_z"] = e.exact ? json(e.ord_z) : json(">=" + std::to_string(e.ord_z));
        r["minus_d1"] = e.minus_dprime;
        r["holds"] = e.holds;
        certs.push_back(r);
    }
    bj["certificates"] = certs;
    rep["condition_B"] = bj;
    if (b.status == ConditionBReport::Status::Fails) failures.push_back(b.reason);

    bool a_holds = false;
    if (spec.group) {
        ConditionAReport a = check_condition_A_and_stabilizers(spec, an);
        a_holds = a.holds();
        json aj = json::object();
        aj["group"] = spec.group->name();
        json st = json::array();
        for (const auto& e : a.entries) {
            json r = json::object();
            r["place"] = io::to_json(e.place);
            r["ramified_layers"] = e.ramified_layers;
            r["order"] = e.subgroup.size();
            r["type"] = e.type;
            r["normal"] = e.normal;
            st.push_back(r);
        }
        aj["stabilizers"] = st;
        aj["all_normal"] = a.all_normal;
        aj["stabilizers_generate"] = a.generate;
        aj["etale_layers"] = a.etale_layers;
        rep["condition_A"] = aj;
        if (!a.all_normal) failures.push_back("NotNormal: some stabilizer is not a normal subgroup");
        if (!a.generate) failures.push_back("StabilizersDontGenerate: the stabilizers generate a proper subgroup, so no magical element exists");
        for (auto k : a.etale_layers)
            failures.push_back("EtaleLayer: layer " + std::to_string(k) +
                               " is unramified everywhere, so the cover factors through an etale subcover and no magical element exists");
    } else {
        failures.push_back("NoGroup: give \"group\" and \"generators\" to check stabilizers");
    }
    rep["failures"] = failures;
    const bool holds = a_holds && b.holds();
    rep["verdict"] = holds ? "holds" : "fails";
    Outcome o;
    o.report = rep;
    if (holds) {
        o.exit_code = 0;
    } else if (b.status == ConditionBReport::Status::Inconclusive && failures.empty()) {
        o.exit_code = static_cast<int>(ErrorKind::precondition);
    } else {
        o.exit_code = static_cast<int>(ErrorKind::mismatch);
    }
    return o;
}

inline Outcome cmd_gdet(const std::string& selector, std::size_t trials, std::uint64_t seed, std::uint32_t ambient_p) {
    GroupTable g = GroupTable::from_selector(selector, ambient_p);
    GroupDeterminantResult r = group_determinant_check(g, trials, seed);
    Outcome o;
    o.report["command"] = "gdet";
    o.report["group"] = g.name();
    o.report["order"] = g.order();
    o.report["p"] = g.p();
    o.report["trials"] = r.trials;
    o.report["seed"] = seed;
    o.report["sign"] = r.sign;
    o.report["verdict"] = "holds";
    return o;
}

/// The tower file, plus the proof's inequalities when check is set.
inline Outcome cmd_heisenberg(std::uint32_t p, const HeisenbergParams& h, bool check) {
    TowerSpec spec = heisenberg_family(p, h);
    io::CoverFile file = io::from_tower_spec(spec, "heisenberg:" + std::to_string(p), "heisenberg-p" + std::to_string(p));
    Outcome o;
    if (!check) {
        o.report = io::to_json(file);
        if (!spec.warnings.empty()) o.report["warnings"] = spec.warnings;
        return o;
    }
    TowerAnalysis an = analyze_tower(spec.tower);
    json bounds = json::array();
    bool all = true;
    for (const auto& b : heisenberg_bounds(spec, an, h)) {
        json r = json::object();
        r["name"] = b.name;
        r["lhs"] = b.lhs;
        r["op"] = b.op;
        r["rhs"] = b.rhs;
        r["holds"] = b.holds;
        all = all && b.holds;
        bounds.push_back(r);
    }
    o.report["command"] = "heisenberg";
    o.report["warnings"] = spec.warnings;
    o.report["bounds"] = bounds;
    o.report["verdict"] = all ? "holds" : "fails";
    o.report["tower"] = io::to_json(file);
    o.exit_code = all ? 0 : static_cast<int>(ErrorKind::mismatch);
    return o;
}

inline json error_json(const Error& e) {
    json j = json::object();
    const char* kind = e.kind() == ErrorKind::parse          ? "parse"
                       : e.kind() == ErrorKind::precondition ? "precondition"
                       : e.kind() == ErrorKind::mismatch     ? "mismatch"
                                                             : "internal";
    j["error"] = {{"kind", kind}, {"name", e.name()}, {"message", e.what()}};
    return j;
}

namespace detail {

inline std::string scalar(const json& v) {
    if (v.is_array() && v.size() > 16) return "[" + std::to_string(v.size()) + " entries]";
    return v.is_string() ? v.get<std::string>() : v.dump();
}

inline bool flat_row(const json& v) {
    if (!v.is_object()) return false;
    for (const auto& [k, x] : v.items())
        if (x.is_array() && !x.empty() && x[0].is_object()) return false;
    return true;
}

inline void render(const json& v, int indent, std::ostream& os) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, x] : v.items()) {
        if (x.is_array() && !x.empty() && flat_row(x[0])) {
            os << pad << key << ":\n";
            std::vector<std::string> cols;
            for (const auto& [k, _] : x[0].items()) cols.push_back(k);
            std::vector<std::size_t> width;
            for (const auto& c : cols) width.push_back(c.size());
            std::vector<std::vector<std::string>> cells;
            for (const auto& row : x) {
                std::vector<std::string> r;
                for (std::size_t i = 0; i < cols.size(); ++i) {
                    r.push_back(row.contains(cols[i]) ? scalar(row[cols[i]]) : "");
                    width[i] = std::max(width[i], r.back().size());
                }
                cells.push_back(r);
            }
            auto line = [&](const std::vector<std::string>& r) {
                os << pad << "  ";
                for (std::size_t i = 0; i < r.size(); ++i) os << std::left << std::setw(static_cast<int>(width[i]) + 2) << r[i];
                os << '\n';
            };
            line(cols);
            for (const auto& r : cells) line(r);
        } else if (x.is_array() && !x.empty() && x[0].is_object()) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                os << pad << key << "[" << i << "]:\n";
                render(x[i], indent + 2, os);
            }
        } else if (x.is_object() && !x.empty() && !std::all_of(x.begin(), x.end(), [](const json& v) { return v.is_number(); })) {
            os << pad << key << ":\n";
            render(x, indent + 2, os);
        } else {
            os << pad << key << ": " << scalar(x) << '\n';
        }
    }
}

}  // namespace detail

/// Human-oriented rendering; lossy by design (long coefficient arrays stay raw JSON).
inline std::string render_table(const json& report) {
    std::ostringstream os;
    if (report.is_object()) detail::render(report, 0, os);
    return os.str();
}

}  // namespace ascohom::report

#endif
