// One line per acceptance criterion; exit status 0 iff every line passes.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "ascohom/corpus.hpp"
#include "ascohom/oracle/asalgebra.hpp"
#include "ascohom/report.hpp"

using namespace ascohom;

namespace {

struct Check {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<std::pair<std::string, ASCover>> corpus_covers() {
    std::vector<std::pair<std::string, ASCover>> out;
    for (const auto& e : reference_corpus()) out.emplace_back(e.name, global_standard_form(ASCover(e.f)));
    return out;
}

Check h0_types() {
    Check c;
    auto t0 = Clock::now();
    int n = 0;
    for (const auto& [name, cover] : corpus_covers()) {
        JordanType oracle = sigma_jordan_h0(cover);
        JordanType pred = predict(cover).h0;
        if (oracle != pred) c.fail(name + ": oracle " + oracle.to_string() + " vs predicted " + pred.to_string());
        ++n;
    }
    const double s = seconds_since(t0);
    if (s >= 10) c.fail("took " + std::to_string(s) + " s");
    if (c.pass) c.detail = std::to_string(n) + " covers";
    return c;
}

Check derham_types() {
    Check c;
    auto t0 = Clock::now();
    int n = 0;
    for (const auto& [name, cover] : corpus_covers()) {
        if (!cover.all_branch_rational()) continue;
        const std::uint32_t p = cover.p();
        int s = 0;
        for (const auto& b : cover.branch()) s += b.m + 1;
        JordanType expect(p);
        if (s > 2) expect.add(p - 1, static_cast<std::size_t>(s - 2));
        // margins 0 and 1 give the type at margins 0, 1, 2
        DeRhamResult r0 = derham_jordan(cover, 0), r1 = derham_jordan(cover, 1);
        const std::size_t two_g = 2 * static_cast<std::size_t>(genus(cover));
        if (r1.type != expect) c.fail(name + ": oracle " + r1.type.to_string() + " vs " + expect.to_string());
        if (r1.dim != two_g) c.fail(name + ": dimension " + std::to_string(r1.dim) + " vs 2g = " + std::to_string(two_g));
        if (!r0.stabilized && !r1.stabilized) c.fail(name + ": type not stabilized by margin 2");
        ++n;
    }
    const double s = seconds_since(t0);
    if (s >= 60) c.fail("took " + std::to_string(s) + " s");
    if (c.pass) c.detail = std::to_string(n) + " covers";
    return c;
}

Check hodge_splitting() {
    Check c;
    int weak = 0, wild = 0;
    for (const auto& [name, cover] : corpus_covers()) {
        CohomPrediction pr = predict(cover);
        DeRhamResult r = derham_jordan(cover, 1);
        if (weakly_ramified(cover)) {
            ++weak;
            if (r.type != pr.h0 + pr.h1) c.fail(name + ": de Rham type is not h0 + h1");
        } else {
            int d2 = 0;
            for (const auto& b : cover.branch()) d2 = std::max(d2, b.ddoubleprime);
            if (d2 <= 0) c.fail(name + ": some m >= 2 but d'' = 0");
            if (r.type != pr.h1dr) c.fail(name + ": de Rham type differs from the prediction");
            if (!hodge_filtration_check(cover, 1).ok()) c.fail(name + ": H0 is not a stable subspace with quotient h1");
            ++wild;
        }
    }
    if (weak == 0 || wild == 0) c.fail("corpus lacks a weakly or a wildly ramified member");
    if (c.pass) c.detail = std::to_string(weak) + " weakly ramified, " + std::to_string(wild) + " with d'' > 0";
    return c;
}

Check res_g() {
    Check c;
    int n = 0;
    for (const auto& [name, cover] : corpus_covers()) {
        if (!cover.all_branch_rational() || cover.branch().size() < 2) continue;
        ResGReport r = res_G_report(cover);
        if (r.rank != r.expected_rank) c.fail(name + ": rank " + std::to_string(r.rank) + " vs " + std::to_string(r.expected_rank));
        if (!res_G_section_check(cover).ok()) c.fail(name + ": section is not a right inverse");
        ++n;
    }
    if (n == 0) c.fail("no corpus member has two rational branch places");
    if (c.pass) c.detail = std::to_string(n) + " covers";
    return c;
}

Check alpha_sum() {
    Check c;
    int n = 0;
    for (std::uint32_t p : {3u, 5u, 7u})
        for (int m = 1; m <= 200; ++m) {
            if (m % static_cast<int>(p) == 0) continue;
            int s = 0;
            for (int i = 1; i < static_cast<int>(p); ++i) s += i * alpha_Q(m, i, p);
            if (2 * s != (m - 1) * (static_cast<int>(p) - 1)) c.fail("p=" + std::to_string(p) + " m=" + std::to_string(m));
            ++n;
        }
    if (c.pass) c.detail = std::to_string(n) + " (p, m) pairs";
    return c;
}

Check trace_table_check() {
    Check c;
    int n = 0;
    for (std::uint32_t p : {3u, 5u, 7u}) {
        const auto x = [p](int k) { return RationalFunction::monomial(Fp(1, p), k); };
        const RationalFunction covers[] = {x(2), x(-1) + x(p + 1), RationalFunction(Poly::constant(1, p), Poly({1, 0, 1}, p))};
        for (const auto& f : covers)
            for (std::uint32_t i = 0; i <= 2 * (p - 1); ++i) {
                RationalFunction tr = ASElement::y_power(f, i).trace();
                if (tr != RationalFunction::constant(trace_table(i, p)))
                    c.fail("p=" + std::to_string(p) + " i=" + std::to_string(i) + " f=" + f.to_string() + ": " + tr.to_string());
                ++n;
            }
    }
    if (c.pass) c.detail = std::to_string(n) + " traces";
    return c;
}

Check group_determinant() {
    Check c;
    auto t0 = Clock::now();
    int n = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const std::string ps = std::to_string(p);
        for (const std::string& sel : {"cyclic:" + ps, "cyclic:" + std::to_string(p * p), "elem-abelian:" + ps + ":2", "heisenberg:" + ps}) {
            try {
                auto r = group_determinant_check(GroupTable::from_selector(sel, p), 20, 0);
                if (r.trials != 20) c.fail(sel + ": ran " + std::to_string(r.trials) + " trials");
            } catch (const Error& e) {
                c.fail(sel + ": " + e.what());
            }
            ++n;
        }
    }
    const double s = seconds_since(t0);
    if (s >= 5) c.fail("took " + std::to_string(s) + " s");
    if (c.pass) c.detail = std::to_string(n) + " groups x 20 trials";
    return c;
}

RationalFunction random_rational(std::mt19937_64& rng, std::uint32_t p) {
    std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
    std::uniform_int_distribution<int> deg(0, 4), ex(0, 3);
    std::vector<std::int64_t> num(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& v : num) v = coef(rng);
    Poly d = Poly::constant(1, p);
    for (int k = 0; k < 2; ++k) d = d * pow(Poly::linear(Fp(coef(rng), p)), static_cast<std::uint64_t>(ex(rng)));
    return RationalFunction(Poly(num, p), d);
}

Check m_via_differential() {
    Check c;
    std::mt19937_64 rng(2024);
    int applicable = 0, tried = 0;
    const std::uint32_t primes[] = {3, 5, 7};
    while (applicable < 200 && tried < 100000) {
        const std::uint32_t p = primes[tried++ % 3];
        RationalFunction g = random_rational(rng, p);
        RationalFunction f = random_rational(rng, p) + (g.pow(p) - g);
        if (f.is_constant()) continue;
        ASCover s(f);
        try {
            s = global_standard_form(ASCover(f));
        } catch (const Error&) {
            continue;
        }
        bool used = false;
        for (const auto& b : s.branch()) {
            try {
                const int m = m_via_df(f, b.place);
                if (m != b.m) c.fail("f=" + f.to_string() + " at " + b.place.to_string());
                used = true;
            } catch (const Error& e) {
                if (e.name() != "HypothesisFails") c.fail(e.what());
            }
        }
        if (used) ++applicable;
    }
    if (applicable < 200) c.fail("only " + std::to_string(applicable) + " applicable samples");
    try {
        const auto x = [](int k) { return RationalFunction::monomial(Fp(1, 3), k); };
        m_via_df(x(-6) + x(-1), Place::rational(Fp(0, 3)));
        c.fail("x^-6 + x^-1 over F_3 was accepted");
    } catch (const Error& e) {
        if (e.name() != "HypothesisFails") c.fail(std::string("counter-case raised ") + e.what());
    }
    if (c.pass) c.detail = std::to_string(applicable) + " random covers, counter-case rejected";
    return c;
}

Check heisenberg() {
    Check c;
    auto t0 = Clock::now();
    const HeisenbergParams h{6, 121, 1, 2561, 6, 1, {0, 1, 2}};
    TowerSpec spec = heisenberg_family(5, h);
    TowerAnalysis an = analyze_tower(spec.tower);
    ConditionBReport b = evaluate_condition_B(spec.tower, an);
    if (!b.holds()) c.fail("condition B: " + b.reason);
    ConditionAReport a = check_condition_A_and_stabilizers(spec, an);
    if (!a.holds()) c.fail("condition A fails");
    const std::pair<std::int64_t, const char*> expect[] = {{0, "E(5^3)"}, {1, "Z/5 x Z/5"}, {2, "Z/5"}};
    for (const auto& [root, type] : expect) {
        bool found = false;
        for (const auto& e : a.entries)
            if (!e.place.is_infinity() && e.place.point() == Fp(root, 5)) {
                found = true;
                if (e.type != type) c.fail("stabilizer at x = " + std::to_string(root) + " is " + e.type);
            }
        if (!found) c.fail("no stabilizer at x = " + std::to_string(root));
    }
    for (const auto& bc : heisenberg_bounds(spec, an, h))
        if (!bc.holds) c.fail(bc.name + ": " + std::to_string(bc.lhs) + " " + bc.op + " " + std::to_string(bc.rhs));
    const double s = seconds_since(t0);
    if (s >= 300) c.fail("took " + std::to_string(s) + " s");
    if (c.pass) c.detail = "genera " + std::to_string(an.layers[0].genus) + ", " + std::to_string(an.layers[1].genus) + ", " + std::to_string(an.layers[2].genus);
    return c;
}

Check determinism() {
    Check c;
    std::vector<io::CoverFile> files;
    for (const auto& e : reference_corpus()) files.push_back(io::from_cover(e.f, e.name));
    const std::string a = report::cmd_verify(files, report::Which::all, 1).report.dump(2);
    const std::string b = report::cmd_verify(files, report::Which::all, 1).report.dump(2);
    if (a != b) c.fail("two runs differ");
    if (c.pass) c.detail = std::to_string(a.size()) + " bytes, identical";
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"h0-jordan-type", h0_types},
        {"derham-jordan-type", derham_types},
        {"hodge-splitting", hodge_splitting},
        {"res-g-rank-and-section", res_g},
        {"alpha-weighted-sum", alpha_sum},
        {"trace-table", trace_table_check},
        {"group-determinant", group_determinant},
        {"jump-from-differential", m_via_differential},
        {"heisenberg-tower", heisenberg},
        {"report-determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.fail(std::string("threw ") + e.what());
        }
        if (!c.pass) ++failed;
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << "  (" << c.detail << ")\n";
    }
    return failed ? 1 : 0;
}
