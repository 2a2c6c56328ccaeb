#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "bvc/analysis.hpp"
#include "bvc/conditions.hpp"
#include "bvc/graph.hpp"
#include "bvc/protocol.hpp"

namespace bvc {

// Parse errors carry a 1-based line number and a description.
struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

// Graph text: '#' comments, blank lines, and either
//   complete <n>
// or
//   n <count>
//   edge <from> <to> ...
Digraph parse_graph_text(const std::string& text);
std::string format_graph_text(const Digraph& g);

// Scenario text: sections [graph], [params] (d, f, epsilon, mu, U, seed),
// [inputs] ("node <id> = <point>"), [faults]
// ("node <id> strategy <silent|equivocate|fixed-partition|random-in-range|custom> ..."),
// [termination] ("policy paper|empirical|fixed <k>", "cap <k>").
Scenario parse_scenario(const std::string& text);
std::string format_scenario(const Scenario& sc);

// 64-bit FNV-1a over the canonical serialization; ties traces to scenarios.
std::uint64_t scenario_hash(const Scenario& sc);

struct TraceSummary {
    std::uint64_t rounds = 0;
    bool converged = false;
    std::string termination;               // "paper" | "empirical" | "fixed"
    std::vector<Rational> spread;          // final, per coordinate
    bool validity_pass = false;
    bool agreement_pass = false;
    std::string t_end;                     // exact digits or "~..." estimate
    bool t_end_executed = false;
};

// Line-delimited trace: header, one "state" record per (iteration, process),
// one "msg" record per delivered link value, and a final "summary" record.
// Exact rational serialization throughout; output re-parses bit-for-bit.
std::string format_trace(const ExecutionTrace& trace, const Scenario& sc,
                         const TraceSummary& summary);

struct ParsedTrace {
    ExecutionTrace trace;
    TraceSummary summary;
    std::uint64_t scenario_hash = 0;
};

ParsedTrace parse_trace(const std::string& text);

std::string serialize_report(const ConditionReport& report);
ConditionReport parse_report(const std::string& text);

// Flat per-round spread table: "t <t> coord <k> spread <value>" lines.
std::string format_spread_table(const ExecutionTrace& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bvc
