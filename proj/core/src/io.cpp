#include "bvc/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "bvc/point.hpp"

namespace bvc {

namespace {

// Splits a line into tokens; a parenthesized point literal is one token.
// '#' starts a comment.
std::vector<std::string> tokenize(const std::string& line, int lineno) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            ++i;
            continue;
        }
        if (c == '(') {
            std::size_t close = line.find(')', i);
            if (close == std::string::npos) throw ParseError(lineno, "unterminated point literal");
            out.push_back(line.substr(i, close - i + 1));
            i = close + 1;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != ',' && line[j] != '#' && line[j] != '(')
            ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

struct Lines {
    std::vector<std::pair<int, std::vector<std::string>>> rows;  // (lineno, tokens)

    explicit Lines(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto tokens = tokenize(line, lineno);
            if (!tokens.empty()) rows.emplace_back(lineno, std::move(tokens));
        }
    }
};

long long to_int(const std::string& tok, int lineno) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(lineno, "expected an integer, got '" + tok + "'");
    }
}

std::uint64_t to_uint(const std::string& tok, int lineno) {
    long long v = to_int(tok, lineno);
    if (v < 0) throw ParseError(lineno, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

Rational to_rational(const std::string& tok, int lineno) {
    try {
        return parse_rational(tok);
    } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
    }
}

Point to_point(const std::string& tok, int lineno) {
    try {
        return parse_point(tok);
    } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
    }
}

struct GraphAccum {
    std::optional<int> complete_n;
    std::optional<int> n;
    std::vector<std::pair<int, int>> edges;
    bool seen = false;

    void feed(const std::vector<std::string>& t, int lineno) {
        seen = true;
        if (t[0] == "complete" && t.size() == 2) {
            complete_n = static_cast<int>(to_int(t[1], lineno));
        } else if (t[0] == "n" && t.size() == 2) {
            n = static_cast<int>(to_int(t[1], lineno));
        } else if (t[0] == "edge" && t.size() == 3) {
            edges.emplace_back(static_cast<int>(to_int(t[1], lineno)),
                               static_cast<int>(to_int(t[2], lineno)));
        } else {
            throw ParseError(lineno, "unrecognized graph directive '" + t[0] + "'");
        }
    }

    Digraph build(int lineno) const {
        try {
            if (complete_n) {
                if (n || !edges.empty())
                    throw std::invalid_argument("'complete' excludes 'n' and 'edge'");
                return Digraph::complete(*complete_n);
            }
            if (!n) throw std::invalid_argument("missing 'n <count>'");
            return Digraph(*n, edges);
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
};

}  // namespace

Digraph parse_graph_text(const std::string& text) {
    Lines lines(text);
    GraphAccum acc;
    int last = 1;
    for (const auto& [lineno, tokens] : lines.rows) {
        acc.feed(tokens, lineno);
        last = lineno;
    }
    if (!acc.seen) throw ParseError(1, "empty graph description");
    return acc.build(last);
}

std::string format_graph_text(const Digraph& g) {
    std::ostringstream os;
    if (g.edge_count() == g.n() * (g.n() - 1)) {
        os << "complete " << g.n() << "\n";
        return os.str();
    }
    os << "n " << g.n() << "\n";
    for (const auto& [from, to] : g.edges()) os << "edge " << from << " " << to << "\n";
    return os.str();
}

namespace {

AdversarySpec parse_adversary(const std::vector<std::string>& t, std::size_t i, int lineno) {
    AdversarySpec spec;
    if (i >= t.size()) throw ParseError(lineno, "missing strategy name");
    const std::string& name = t[i++];
    if (name == "silent") {
        spec.kind = AdversarySpec::Kind::Silent;
    } else if (name == "equivocate") {
        spec.kind = AdversarySpec::Kind::Equivocate;
        while (i < t.size()) {
            if (t[i] != "to" || i + 2 >= t.size())
                throw ParseError(lineno, "equivocate expects 'to <id> <point>' groups");
            int target = static_cast<int>(to_int(t[i + 1], lineno));
            spec.per_target[target] = to_point(t[i + 2], lineno);
            i += 3;
        }
    } else if (name == "fixed-partition") {
        spec.kind = AdversarySpec::Kind::FixedPartition;
        while (i < t.size()) {
            if (t[i] != "slot" || i + 2 >= t.size() || t[i + 2] != "targets")
                throw ParseError(lineno, "fixed-partition expects 'slot <k> targets <id...>' groups");
            std::size_t k = static_cast<std::size_t>(to_uint(t[i + 1], lineno));
            if (spec.partition_targets.size() <= k) spec.partition_targets.resize(k + 1);
            i += 3;
            while (i < t.size() && t[i] != "slot")
                spec.partition_targets[k].push_back(static_cast<int>(to_int(t[i++], lineno)));
        }
    } else if (name == "random-in-range") {
        spec.kind = AdversarySpec::Kind::RandomInRange;
    } else if (name == "custom") {
        spec.kind = AdversarySpec::Kind::Custom;
        while (i < t.size()) {
            if (t[i] != "at" || i + 4 >= t.size() || t[i + 2] != "to")
                throw ParseError(lineno, "custom expects 'at <t> to <id> <point>' groups");
            std::uint64_t when = to_uint(t[i + 1], lineno);
            int target = static_cast<int>(to_int(t[i + 3], lineno));
            spec.script[{when, target}] = to_point(t[i + 4], lineno);
            i += 5;
        }
    } else {
        throw ParseError(lineno, "unknown strategy '" + name + "'");
    }
    return spec;
}

void format_adversary(std::ostringstream& os, const AdversarySpec& spec) {
    switch (spec.kind) {
        case AdversarySpec::Kind::Silent:
            os << "silent";
            break;
        case AdversarySpec::Kind::Equivocate:
            os << "equivocate";
            for (const auto& [target, p] : spec.per_target)
                os << " to " << target << " " << format_point(p);
            break;
        case AdversarySpec::Kind::FixedPartition:
            os << "fixed-partition";
            for (std::size_t k = 0; k < spec.partition_targets.size(); ++k) {
                os << " slot " << k << " targets";
                for (int target : spec.partition_targets[k]) os << " " << target;
            }
            break;
        case AdversarySpec::Kind::RandomInRange:
            os << "random-in-range";
            break;
        case AdversarySpec::Kind::Custom:
            os << "custom";
            for (const auto& [key, p] : spec.script)
                os << " at " << key.first << " to " << key.second << " " << format_point(p);
            break;
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Lines lines(text);
    Scenario sc;
    GraphAccum graph;
    int graph_line = 1;
    bool have_graph = false;

    std::string section;
    for (const auto& [lineno, t] : lines.rows) {
        if (t.size() == 1 && t[0].size() >= 2 && t[0].front() == '[' && t[0].back() == ']') {
            section = t[0].substr(1, t[0].size() - 2);
            if (section != "graph" && section != "params" && section != "inputs" &&
                section != "faults" && section != "termination")
                throw ParseError(lineno, "unknown section [" + section + "]");
            continue;
        }
        if (section == "graph") {
            graph.feed(t, lineno);
            graph_line = lineno;
            have_graph = true;
        } else if (section == "params") {
            if (t.size() != 2) throw ParseError(lineno, "params lines are '<key> <value>'");
            if (t[0] == "d") sc.d = static_cast<int>(to_int(t[1], lineno));
            else if (t[0] == "f") sc.f = static_cast<int>(to_int(t[1], lineno));
            else if (t[0] == "epsilon") sc.epsilon = to_rational(t[1], lineno);
            else if (t[0] == "mu") sc.mu = to_rational(t[1], lineno);
            else if (t[0] == "U") sc.U = to_rational(t[1], lineno);
            else if (t[0] == "seed") sc.seed = to_uint(t[1], lineno);
            else throw ParseError(lineno, "unknown parameter '" + t[0] + "'");
        } else if (section == "inputs") {
            if (t.size() != 4 || t[0] != "node" || t[2] != "=")
                throw ParseError(lineno, "inputs lines are 'node <id> = <point>'");
            sc.inputs[static_cast<int>(to_int(t[1], lineno))] = to_point(t[3], lineno);
        } else if (section == "faults") {
            if (t.size() < 3 || t[0] != "node" || t[2] != "strategy")
                throw ParseError(lineno, "faults lines are 'node <id> strategy <name> ...'");
            int v = static_cast<int>(to_int(t[1], lineno));
            sc.fault_set.insert(v);
            sc.adversaries[v] = parse_adversary(t, 3, lineno);
        } else if (section == "termination") {
            if (t[0] == "policy" && t.size() >= 2) {
                if (t[1] == "paper" && t.size() == 2)
                    sc.termination.kind = TerminationPolicy::Kind::PaperBound;
                else if (t[1] == "empirical" && t.size() == 2)
                    sc.termination.kind = TerminationPolicy::Kind::EmpiricalSpread;
                else if (t[1] == "fixed" && t.size() == 3) {
                    sc.termination.kind = TerminationPolicy::Kind::FixedRounds;
                    sc.termination.fixed_rounds = to_uint(t[2], lineno);
                } else
                    throw ParseError(lineno, "policy is 'paper', 'empirical', or 'fixed <k>'");
            } else if (t[0] == "cap" && t.size() == 2) {
                sc.termination.cap = to_uint(t[1], lineno);
            } else {
                throw ParseError(lineno, "unknown termination directive '" + t[0] + "'");
            }
        } else {
            throw ParseError(lineno, "content before any section header");
        }
    }
    if (!have_graph) throw ParseError(1, "missing [graph] section");
    sc.graph = graph.build(graph_line);
    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(graph_line, std::string("scenario invalid: ") + e.what());
    }
    return sc;
}

std::string format_scenario(const Scenario& sc) {
    std::ostringstream os;
    os << "[graph]\n" << format_graph_text(sc.graph);
    os << "[params]\n";
    os << "d " << sc.d << "\n";
    os << "f " << sc.f << "\n";
    os << "epsilon " << format_rational(sc.epsilon) << "\n";
    os << "mu " << format_rational(sc.mu) << "\n";
    os << "U " << format_rational(sc.U) << "\n";
    os << "seed " << sc.seed << "\n";
    os << "[inputs]\n";
    for (const auto& [v, p] : sc.inputs)
        os << "node " << v << " = " << format_point(p) << "\n";
    if (!sc.fault_set.empty()) {
        os << "[faults]\n";
        static const AdversarySpec kSilent{};
        for (int v : sc.fault_set) {
            auto it = sc.adversaries.find(v);
            os << "node " << v << " strategy ";
            format_adversary(os, it == sc.adversaries.end() ? kSilent : it->second);
            os << "\n";
        }
    }
    os << "[termination]\n";
    switch (sc.termination.kind) {
        case TerminationPolicy::Kind::PaperBound:
            os << "policy paper\n";
            break;
        case TerminationPolicy::Kind::EmpiricalSpread:
            os << "policy empirical\ncap " << sc.termination.cap << "\n";
            break;
        case TerminationPolicy::Kind::FixedRounds:
            os << "policy fixed " << sc.termination.fixed_rounds << "\n";
            break;
    }
    return os.str();
}

std::uint64_t scenario_hash(const Scenario& sc) {
    std::string s = format_scenario(sc);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

std::string format_spread(const std::vector<Rational>& spread) {
    Point p;
    p.coords = spread;
    return format_point(p);
}

}  // namespace

std::string format_trace(const ExecutionTrace& trace, const Scenario& sc,
                         const TraceSummary& summary) {
    std::ostringstream os;
    os << "trace-format 1\n";
    os << "scenario-hash " << hex64(scenario_hash(sc)) << "\n";
    os << "rounds " << trace.rounds.size() << "\n";
    for (const auto& [v, p] : trace.initial_states)
        os << "state 0 " << v << " " << format_point(p) << "\n";
    for (std::size_t t = 1; t <= trace.rounds.size(); ++t) {
        const RoundRecord& rec = trace.rounds[t - 1];
        for (const auto& [link, p] : rec.messages)
            os << "msg " << t << " " << link.first << " " << link.second << " "
               << format_point(p) << "\n";
        for (const auto& [v, p] : rec.states)
            os << "state " << t << " " << v << " " << format_point(p) << "\n";
    }
    os << "summary rounds " << summary.rounds << "\n";
    os << "summary converged " << (summary.converged ? 1 : 0) << "\n";
    os << "summary termination " << summary.termination << "\n";
    os << "summary spread " << format_spread(summary.spread) << "\n";
    os << "summary validity " << (summary.validity_pass ? "pass" : "fail") << "\n";
    os << "summary agreement " << (summary.agreement_pass ? "pass" : "fail") << "\n";
    if (!summary.t_end.empty()) {
        os << "summary t-end " << summary.t_end << "\n";
        os << "summary t-end-executed " << (summary.t_end_executed ? 1 : 0) << "\n";
    }
    return os.str();
}

ParsedTrace parse_trace(const std::string& text) {
    ParsedTrace out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::uint64_t declared_rounds = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokenize(line, lineno);
        if (t.empty()) continue;
        if (t[0] == "trace-format") {
            if (t.size() != 2 || t[1] != "1") throw ParseError(lineno, "unsupported trace format");
            have_header = true;
        } else if (t[0] == "scenario-hash") {
            if (t.size() != 2) throw ParseError(lineno, "malformed scenario-hash");
            try {
                out.scenario_hash = std::stoull(t[1], nullptr, 16);
            } catch (const std::exception&) {
                throw ParseError(lineno, "malformed scenario-hash");
            }
        } else if (t[0] == "rounds") {
            declared_rounds = to_uint(t[1], lineno);
            out.trace.rounds.resize(declared_rounds);
        } else if (t[0] == "state") {
            if (t.size() != 4) throw ParseError(lineno, "state lines are 'state <t> <node> <point>'");
            std::uint64_t when = to_uint(t[1], lineno);
            int v = static_cast<int>(to_int(t[2], lineno));
            Point p = to_point(t[3], lineno);
            if (when == 0) {
                out.trace.initial_states[v] = p;
            } else {
                if (when > declared_rounds) throw ParseError(lineno, "state beyond declared rounds");
                out.trace.rounds[when - 1].states[v] = p;
            }
        } else if (t[0] == "msg") {
            if (t.size() != 5) throw ParseError(lineno, "msg lines are 'msg <t> <from> <to> <point>'");
            std::uint64_t when = to_uint(t[1], lineno);
            if (when == 0 || when > declared_rounds)
                throw ParseError(lineno, "msg iteration out of range");
            int from = static_cast<int>(to_int(t[2], lineno));
            int to = static_cast<int>(to_int(t[3], lineno));
            out.trace.rounds[when - 1].messages[{from, to}] = to_point(t[4], lineno);
        } else if (t[0] == "summary") {
            if (t.size() < 3) throw ParseError(lineno, "malformed summary line");
            const std::string& key = t[1];
            if (key == "rounds") out.summary.rounds = to_uint(t[2], lineno);
            else if (key == "converged") out.summary.converged = to_uint(t[2], lineno) != 0;
            else if (key == "termination") out.summary.termination = t[2];
            else if (key == "spread") out.summary.spread = to_point(t[2], lineno).coords;
            else if (key == "validity") out.summary.validity_pass = t[2] == "pass";
            else if (key == "agreement") out.summary.agreement_pass = t[2] == "pass";
            else if (key == "t-end") {
                std::ostringstream rest;
                for (std::size_t i = 2; i < t.size(); ++i) {
                    if (i > 2) rest << " ";
                    rest << t[i];
                }
                out.summary.t_end = rest.str();
            } else if (key == "t-end-executed")
                out.summary.t_end_executed = to_uint(t[2], lineno) != 0;
            else
                throw ParseError(lineno, "unknown summary key '" + key + "'");
        } else {
            throw ParseError(lineno, "unknown trace record '" + t[0] + "'");
        }
    }
    if (!have_header) throw ParseError(1, "missing trace-format header");
    out.trace.rounds_executed = declared_rounds;
    out.trace.converged = out.summary.converged;
    return out;
}

std::string serialize_report(const ConditionReport& report) {
    std::ostringstream os;
    os << "condition " << report.condition << "\n";
    os << "verdict ";
    switch (report.verdict) {
        case Verdict::Holds: os << "holds"; break;
        case Verdict::Fails: os << "fails"; break;
        case Verdict::NotEvaluated: os << "not-evaluated"; break;
    }
    os << "\n";
    os << "partitions-checked " << report.partitions_checked << "\n";
    if (!report.note.empty()) os << "note " << report.note << "\n";
    if (report.witness)
        for (const auto& [name, members] : report.witness->parts) {
            os << "part " << name;
            for (int v : members) os << " " << v;
            os << "\n";
        }
    return os.str();
}

ConditionReport parse_report(const std::string& text) {
    ConditionReport report;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto t = tokenize(line, lineno);
        if (t.empty()) continue;
        if (t[0] == "condition" && t.size() == 2) {
            report.condition = t[1];
        } else if (t[0] == "verdict" && t.size() == 2) {
            if (t[1] == "holds") report.verdict = Verdict::Holds;
            else if (t[1] == "fails") report.verdict = Verdict::Fails;
            else if (t[1] == "not-evaluated") report.verdict = Verdict::NotEvaluated;
            else throw ParseError(lineno, "unknown verdict '" + t[1] + "'");
        } else if (t[0] == "partitions-checked" && t.size() == 2) {
            report.partitions_checked = to_uint(t[1], lineno);
        } else if (t[0] == "note") {
            std::size_t start = line.find("note") + 4;
            while (start < line.size() && line[start] == ' ') ++start;
            report.note = start < line.size() ? line.substr(start) : "";
        } else if (t[0] == "part" && t.size() >= 2) {
            if (!report.witness) report.witness.emplace();
            std::vector<int> members;
            for (std::size_t i = 2; i < t.size(); ++i)
                members.push_back(static_cast<int>(to_int(t[i], lineno)));
            report.witness->parts.emplace_back(t[1], std::move(members));
        } else {
            throw ParseError(lineno, "unknown report line '" + t[0] + "'");
        }
    }
    return report;
}

std::string format_spread_table(const ExecutionTrace& trace) {
    std::ostringstream os;
    for (std::uint64_t t = 0; t <= trace.rounds.size(); ++t) {
        auto spread = trace.spread_after(t);
        for (std::size_t k = 0; k < spread.size(); ++k)
            os << "t " << t << " coord " << k + 1 << " spread "
               << format_rational(spread[k]) << "\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace bvc
