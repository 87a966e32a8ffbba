#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ascohom/report.hpp"

using namespace ascohom;
using report::json;

namespace {

struct Options {
    std::string input;
    std::string output;
    bool as_json = false;
    bool as_table = false;
    bool timing = false;
    int margin = 1;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
};

json read_input(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw parse_error("CannotRead", "cannot open " + path);
        buf << in.rdbuf();
    }
    return io::parse_text(buf.str(), path);
}

void emit(const Options& o, const json& rep) {
    const std::string text = o.as_table && !o.as_json ? report::render_table(rep) : rep.dump(2) + "\n";
    if (o.output.empty() || o.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw precondition_error("CannotWrite", "cannot open " + o.output);
    out << text;
}

std::vector<std::int64_t> split_ints(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw parse_error("BadField", what + ": '" + part + "' is not an integer");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Galois-module structure of Artin-Schreier covers: predictions, oracles, towers"};
    app.require_subcommand(1);
    Options o;

    auto add_io = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("-i,--input", o.input, "input JSON file ('-' for stdin)");
        if (needs_input) in->required();
        sub->add_option("-o,--output", o.output, "write the report here instead of stdout");
        sub->add_flag("--json", o.as_json, "structured output (default)");
        sub->add_flag("--table", o.as_table, "human-readable output");
    };

    auto* analyze = app.add_subcommand("analyze", "standardize a cover and print invariants and predictions");
    add_io(analyze, true);

    std::string which = "all";
    auto* verify = app.add_subcommand("verify", "compare oracle computations with the predictions");
    add_io(verify, true);
    verify->add_option("which", which, "h0, derham, resg or all")->check(CLI::IsMember({"h0", "derham", "resg", "all"}));
    verify->add_option("--truncation-margin", o.margin, "extra pole allowance of the de Rham model")->check(CLI::NonNegativeNumber);
    verify->add_flag("--timing", o.timing, "add per-cover wall time (breaks byte-identical output)");

    auto* sform = app.add_subcommand("standard-form", "global standard form and branch data");
    add_io(sform, true);

    auto* magical = app.add_subcommand("magical", "certify conditions (A) and (B) for a tower");
    add_io(magical, true);

    std::string selector;
    std::uint32_t ambient_p = 0;
    auto* gdet = app.add_subcommand("gdet", "check the group determinant identity on random points");
    add_io(gdet, false);
    gdet->add_option("group", selector, "cyclic:N, elem-abelian:P:R or heisenberg:P")->required();
    gdet->add_option("--p", ambient_p, "ambient characteristic the group order must be a power of");
    gdet->add_option("--trials", o.trials, "number of random points");
    gdet->add_option("--seed", o.seed, "RNG seed");

    std::uint32_t hp = 5;
    std::string params = "6,121,1,2561,6,1", roots = "0,1,2";
    bool check = false;
    auto* heis = app.add_subcommand("heisenberg", "emit the Heisenberg tower (a1,a2,b2,a3,b3,c3) as a tower file");
    add_io(heis, false);
    heis->add_option("--p", hp, "odd prime");
    heis->add_option("--params", params, "a1,a2,b2,a3,b3,c3");
    heis->add_option("--roots", roots, "r1,r2,r3 of the cubic");
    heis->add_flag("--check", check, "analyze the tower and report the proof's inequalities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ErrorKind::parse);
    }

    try {
        report::Outcome out;
        if (analyze->parsed()) {
            out = report::cmd_analyze(io::parse_batch(read_input(o.input)));
        } else if (verify->parsed()) {
            out = report::cmd_verify(io::parse_batch(read_input(o.input)), report::parse_which(which), o.margin, o.timing);
        } else if (sform->parsed()) {
            out = report::cmd_standard_form(io::parse_batch(read_input(o.input)));
        } else if (magical->parsed()) {
            out = report::cmd_magical(report::tower_file(read_input(o.input)));
        } else if (gdet->parsed()) {
            out = report::cmd_gdet(selector, o.trials, o.seed, ambient_p);
        } else if (heis->parsed()) {
            auto a = split_ints(params, "--params");
            auto r = split_ints(roots, "--roots");
            if (a.size() != 6) throw parse_error("BadField", "--params: expected six integers");
            if (r.size() != 3) throw parse_error("BadField", "--roots: expected three integers");
            HeisenbergParams h{a[0], a[1], a[2], a[3], a[4], a[5], {r[0], r[1], r[2]}};
            out = report::cmd_heisenberg(hp, h, check);
        }
        emit(o, out.report);
        return out.exit_code;
    } catch (const Error& e) {
        std::cerr << report::error_json(e).dump(2) << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << report::error_json(internal_error("Unexpected", e.what())).dump(2) << "\n";
        return static_cast<int>(ErrorKind::internal);
    }
}
