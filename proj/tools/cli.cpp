#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bvc/analysis.hpp"
#include "bvc/conditions.hpp"
#include "bvc/geometry.hpp"
#include "bvc/io.hpp"
#include "bvc/protocol.hpp"

namespace bvc::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

int exit_from_reports(const std::vector<ConditionReport>& reports) {
    bool budget = false;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Fails) return kFail;
        if (r.verdict == Verdict::NotEvaluated) budget = true;
    }
    return budget ? kBudget : kOk;
}

struct CheckOpts {
    std::string graph;
    int d = 1;
    int f = 0;
    std::string which = "both";
    std::string route = "partition";
    std::uint64_t budget = 0;
    std::string output;
};

int cmd_check(const CheckOpts& o, const std::string& which, std::ostream& out) {
    Digraph g = parse_graph_text(read_file(o.graph));
    SweepBudget budget;
    if (o.budget > 0) {
        budget.max_partitions = o.budget;
        budget.max_reduced_graphs = o.budget;
    }
    std::vector<ConditionReport> reports;
    if (which == "nc" || which == "both") reports.push_back(check_nc(g, o.d, o.f, budget));
    if (which == "sc" || which == "both") {
        if (o.route == "partition" || o.route == "both")
            reports.push_back(check_sc(g, o.d, o.f, budget));
        if (o.route == "reduced" || o.route == "both")
            reports.push_back(check_sc_via_reduced(g, o.d, o.f, budget));
    }
    std::string text;
    for (const auto& r : reports) {
        text += serialize_report(r);
        text += "\n";
    }
    out << text;
    if (!o.output.empty()) write_file(o.output, text);
    return exit_from_reports(reports);
}

struct SimOpts {
    std::string scenario;
    std::string trace_out;
    std::string spread_out;
    std::string sweep_dir;
    bool strict_paper = false;
};

const char* termination_word(TerminationPolicy::Kind k) {
    switch (k) {
        case TerminationPolicy::Kind::PaperBound: return "paper";
        case TerminationPolicy::Kind::EmpiricalSpread: return "empirical";
        case TerminationPolicy::Kind::FixedRounds: return "fixed";
    }
    return "?";
}

void print_summary(const TraceSummary& s, std::ostream& out) {
    out << "summary rounds " << s.rounds << "\n";
    out << "summary converged " << (s.converged ? 1 : 0) << "\n";
    out << "summary termination " << s.termination << "\n";
    Point spread_point;
    spread_point.coords = s.spread;
    out << "summary spread " << format_point(spread_point) << "\n";
    out << "summary validity " << (s.validity_pass ? "pass" : "fail") << "\n";
    out << "summary agreement " << (s.agreement_pass ? "pass" : "fail") << "\n";
    if (!s.t_end.empty()) {
        out << "summary t-end " << s.t_end << "\n";
        out << "summary t-end-executed " << (s.t_end_executed ? 1 : 0) << "\n";
    }
}

int simulate_one(const std::string& path, const SimOpts& o, std::ostream& out,
                 std::ostream& err) {
    Scenario sc = parse_scenario(read_file(path));
    if (o.strict_paper && sc.termination.kind != TerminationPolicy::Kind::PaperBound) {
        err << "error: --strict-paper accepts only 'policy paper' scenarios\n";
        return kUsage;
    }

    ExecutionTrace trace;
    try {
        trace = run_execution(sc);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    } catch (const TEndOverflow& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }

    ValidityReport validity = verify_validity(trace, sc);
    AgreementReport agreement = verify_epsilon_agreement(trace, sc.epsilon);

    TraceSummary s;
    s.rounds = trace.rounds_executed;
    s.converged = trace.converged;
    s.termination = termination_word(sc.termination.kind);
    s.spread = trace.spread_after(trace.rounds.size());
    s.validity_pass = validity.pass;
    s.agreement_pass = agreement.pass;
    try {
        TEndResult te = compute_t_end(sc.graph, sc.d, sc.f, sc.mu, sc.U, sc.epsilon);
        s.t_end = te.value.get_str();
    } catch (const TEndOverflow& e) {
        s.t_end = "~" + e.estimate_text;
    }
    s.t_end_executed = sc.termination.kind == TerminationPolicy::Kind::PaperBound;

    if (!o.trace_out.empty()) write_file(o.trace_out, format_trace(trace, sc, s));
    if (!o.spread_out.empty()) write_file(o.spread_out, format_spread_table(trace));
    print_summary(s, out);

    bool empirical = sc.termination.kind == TerminationPolicy::Kind::EmpiricalSpread;
    if (!validity.pass || !agreement.pass || (empirical && !trace.converged)) return kFail;
    return kOk;
}

int cmd_simulate(const SimOpts& o, std::ostream& out, std::ostream& err) {
    if (!o.sweep_dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(o.sweep_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".scn")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            err << "error: no .scn files in '" << o.sweep_dir << "'\n";
            return kUsage;
        }
        int worst = kOk;
        for (const auto& file : files) {
            out << "scenario " << file.string() << "\n";
            SimOpts one = o;
            one.sweep_dir.clear();
            one.trace_out = std::filesystem::path(file).replace_extension(".trace").string();
            one.spread_out.clear();
            worst = std::max(worst, simulate_one(file.string(), one, out, err));
        }
        return worst;
    }
    return simulate_one(o.scenario, o, out, err);
}

struct VerifyOpts {
    std::string scenario;
    std::string trace;
    std::string output;
};

int cmd_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
    Scenario sc = parse_scenario(read_file(o.scenario));
    ParsedTrace parsed = parse_trace(read_file(o.trace));

    bool hash_ok = parsed.scenario_hash == scenario_hash(sc);

    bool replay_ok = false;
    try {
        ExecutionTrace replay = run_execution(sc);
        replay_ok = replay.initial_states == parsed.trace.initial_states &&
                    replay.rounds.size() == parsed.trace.rounds.size();
        for (std::size_t t = 0; replay_ok && t < replay.rounds.size(); ++t)
            replay_ok = replay.rounds[t].messages == parsed.trace.rounds[t].messages &&
                        replay.rounds[t].states == parsed.trace.rounds[t].states;
    } catch (const std::exception& e) {
        err << "error: replay failed: " << e.what() << "\n";
    }

    ValidityReport validity = verify_validity(parsed.trace, sc);
    AgreementReport agreement = verify_epsilon_agreement(parsed.trace, sc.epsilon);

    std::ostringstream report;
    report << "hash-match " << (hash_ok ? "pass" : "fail") << "\n";
    report << "replay-match " << (replay_ok ? "pass" : "fail") << "\n";
    report << "validity " << (validity.pass ? "pass" : "fail") << "\n";
    report << "memberships-checked " << validity.memberships_checked << "\n";
    report << "agreement " << (agreement.pass ? "pass" : "fail") << "\n";
    out << report.str();
    if (!o.output.empty()) write_file(o.output, report.str());

    return hash_ok && replay_ok && validity.pass && agreement.pass ? kOk : kFail;
}

struct TverbergOpts {
    std::string points;
    std::string points_file;
    int f = 1;
};

std::vector<Point> parse_point_list(const std::string& s) {
    std::vector<Point> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '(') {
            std::size_t close = s.find(')', i);
            if (close == std::string::npos)
                throw std::invalid_argument("unterminated point literal");
            out.push_back(parse_point(s.substr(i, close - i + 1)));
            i = close + 1;
        } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') {
            ++i;
        } else {
            throw std::invalid_argument(std::string("unexpected character '") + c +
                                        "' in point list");
        }
    }
    return out;
}

int cmd_tverberg(const TverbergOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<Point> points;
    if (!o.points_file.empty()) {
        std::istringstream in(read_file(o.points_file));
        std::string line;
        while (std::getline(in, line)) {
            auto more = parse_point_list(line);
            points.insert(points.end(), more.begin(), more.end());
        }
    } else {
        points = parse_point_list(o.points);
    }

    TverbergResult res;
    try {
        res = tverberg_point(points, o.f);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }
    out << "point " << format_point(res.point) << "\n";
    for (std::size_t k = 0; k < res.part_slots.size(); ++k) {
        out << "part " << k << " slots";
        for (int slot : res.part_slots[k]) out << " " << slot;
        out << "\n";
    }
    return kOk;
}

struct BoundsOpts {
    std::string graph;
    int d = 1;
    int f = 0;
    std::string mu = "0";
    std::string U = "0";
    std::string epsilon = "1";
    std::uint64_t max_bits = 1u << 22;
};

int cmd_bounds(const BoundsOpts& o, std::ostream& out) {
    Digraph g = parse_graph_text(read_file(o.graph));
    Rational mu = parse_rational(o.mu);
    Rational U = parse_rational(o.U);
    Rational epsilon = parse_rational(o.epsilon);

    out << "n " << g.n() << "\n";
    out << "min-in-degree " << g.min_in_degree() << "\n";
    out << "population-bound " << (check_population_bound(g, o.d, o.f) ? "holds" : "fails")
        << "\n";
    out << "degree-bound " << (check_degree_bound(g, o.d, o.f) ? "holds" : "fails") << "\n";
    out << "beta " << format_rational(compute_beta(g.n(), o.d, o.f)) << "\n";
    BigInt r = count_reduced_graphs_max(g, o.d, o.f);
    BigInt block_length = r * g.n();
    out << "r " << r.get_str() << "\n";
    out << "block-length " << block_length.get_str() << "\n";
    try {
        TEndResult te = compute_t_end(g, o.d, o.f, mu, U, epsilon, o.max_bits);
        out << "blocks " << te.blocks.get_str() << "\n";
        out << "t-end " << te.value.get_str() << "\n";
    } catch (const TEndOverflow& e) {
        out << "t-end ~" << e.estimate_text << "\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certify and simulate iterative consensus on incomplete directed graphs",
                 "bvc"};
    app.require_subcommand(1);

    CheckOpts chk;
    auto add_check_options = [&chk](CLI::App* cmd, bool with_route) {
        cmd->add_option("--graph", chk.graph, "graph file")->required();
        cmd->add_option("--d", chk.d, "dimension")->required();
        cmd->add_option("--f", chk.f, "fault bound")->required();
        cmd->add_option("--budget", chk.budget, "sweep size cap (0 = default)");
        cmd->add_option("--output", chk.output, "also write reports to this file");
        if (with_route)
            cmd->add_option("--sc-route", chk.route, "partition|reduced|both")
                ->check(CLI::IsMember({"partition", "reduced", "both"}));
    };
    CLI::App* check = app.add_subcommand("check", "evaluate the graph conditions");
    add_check_options(check, true);
    check->add_option("--which", chk.which, "nc|sc|both")
        ->check(CLI::IsMember({"nc", "sc", "both"}));
    CLI::App* check_nc_cmd = app.add_subcommand("check-nc", "evaluate the iteration condition");
    add_check_options(check_nc_cmd, false);
    CLI::App* check_sc_cmd = app.add_subcommand("check-sc", "evaluate the split condition");
    add_check_options(check_sc_cmd, true);

    SimOpts sim;
    CLI::App* simulate = app.add_subcommand("simulate", "run a scenario to termination");
    simulate->add_option("--scenario", sim.scenario, "scenario file");
    simulate->add_option("--trace", sim.trace_out, "write the full trace here");
    simulate->add_option("--spread-table", sim.spread_out, "write a per-round spread table");
    simulate->add_option("--sweep", sim.sweep_dir, "run every .scn file in this directory");
    simulate->add_flag("--strict-paper", sim.strict_paper,
                       "reject scenarios that do not terminate by the certified bound");

    VerifyOpts ver;
    CLI::App* verify = app.add_subcommand("verify", "re-check a trace against its scenario");
    verify->add_option("--scenario", ver.scenario, "scenario file")->required();
    verify->add_option("--trace", ver.trace, "trace file")->required();
    verify->add_option("--output", ver.output, "also write the report to this file");

    TverbergOpts tvb;
    CLI::App* tverberg = app.add_subcommand("tverberg", "split points into f+1 parts with "
                                                        "intersecting hulls");
    tverberg->add_option("--points", tvb.points, "point list, e.g. \"(0) (1) (2)\"");
    tverberg->add_option("--points-file", tvb.points_file, "file with one point per line");
    tverberg->add_option("--f", tvb.f, "fault bound")->required();

    BoundsOpts bnd;
    CLI::App* bounds = app.add_subcommand("bounds", "print the certified bounds for a graph");
    bounds->add_option("--graph", bnd.graph, "graph file")->required();
    bounds->add_option("--d", bnd.d, "dimension")->required();
    bounds->add_option("--f", bnd.f, "fault bound")->required();
    bounds->add_option("--mu", bnd.mu, "input range lower end");
    bounds->add_option("--U", bnd.U, "input range upper end");
    bounds->add_option("--epsilon", bnd.epsilon, "agreement threshold");
    bounds->add_option("--max-bits", bnd.max_bits, "bit budget for the exact bound");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (check->parsed()) return cmd_check(chk, chk.which, out);
        if (check_nc_cmd->parsed()) return cmd_check(chk, "nc", out);
        if (check_sc_cmd->parsed()) return cmd_check(chk, "sc", out);
        if (simulate->parsed()) {
            if (sim.scenario.empty() == sim.sweep_dir.empty()) {
                err << "error: simulate needs exactly one of --scenario or --sweep\n";
                return kUsage;
            }
            return cmd_simulate(sim, out, err);
        }
        if (verify->parsed()) return cmd_verify(ver, out, err);
        if (tverberg->parsed()) {
            if (tvb.points.empty() == tvb.points_file.empty()) {
                err << "error: tverberg needs exactly one of --points or --points-file\n";
                return kUsage;
            }
            return cmd_tverberg(tvb, out, err);
        }
        if (bounds->parsed()) return cmd_bounds(bnd, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kFail;
    }
    err << "error: no subcommand\n";
    return kUsage;
}

}  // namespace bvc::cli
