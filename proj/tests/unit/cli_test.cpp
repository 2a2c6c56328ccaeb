#include <filesystem>
#include <sstream>

#include "bvc/io.hpp"
#include "cli.hpp"
#include "doctest.h"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = bvc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// A scratch directory populated once with the fixture files the cases share.
const fs::path& fixtures() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "bvc_cli_fixtures";
        fs::create_directories(d);
        bvc::write_file((d / "k4.g").string(), "complete 4\n");
        bvc::write_file((d / "k5.g").string(), "complete 5\n");
        bvc::write_file((d / "bad.g").string(), "n 3\nedge 1 1\n");
        bvc::write_file((d / "silent.scn").string(),
                        "[graph]\ncomplete 4\n[params]\nd 1\nf 1\nepsilon 1/100\nmu 0\nU 2\n"
                        "seed 1\n[inputs]\nnode 1 = (0)\nnode 2 = (1)\nnode 3 = (2)\n"
                        "[faults]\nnode 4 strategy silent\n[termination]\npolicy empirical\n"
                        "cap 1000\n");
        bvc::write_file((d / "paper2.scn").string(),
                        "[graph]\ncomplete 2\n[params]\nd 1\nf 0\nepsilon 1/10\nmu 0\nU 1\n"
                        "seed 1\n[inputs]\nnode 1 = (0)\nnode 2 = (1)\n[termination]\n"
                        "policy paper\n");
        return d;
    }();
    return dir;
}

std::string fix(const std::string& name) { return (fixtures() / name).string(); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("check both conditions on a passing graph") {
    CliResult r = run_cli({"check", "--graph", fix("k4.g"), "--d", "1", "--f", "1",
                           "--which", "both"});
    CHECK(r.code == 0);
    CHECK(r.out.find("condition nc") != std::string::npos);
    CHECK(r.out.find("condition sc") != std::string::npos);
    CHECK(r.out.find("verdict holds") != std::string::npos);
    CHECK(r.out.find("verdict fails") == std::string::npos);
}

TEST_CASE("split-condition failure returns a witness and exit 1") {
    CliResult r = run_cli({"check-sc", "--graph", fix("k5.g"), "--d", "2", "--f", "1"});
    CHECK(r.code == 1);
    CHECK(r.out.find("verdict fails") != std::string::npos);
    CHECK(r.out.find("part L") != std::string::npos);
}

TEST_CASE("dual split-condition routes agree and can be forced") {
    CliResult r = run_cli({"check-sc", "--graph", fix("k4.g"), "--d", "1", "--f", "1",
                           "--sc-route", "both"});
    CHECK(r.code == 0);
    CHECK(r.out.find("condition sc") != std::string::npos);
    CHECK(r.out.find("condition sc-reduced") != std::string::npos);
}

TEST_CASE("reports can be written to a file") {
    fs::path out_path = fixtures() / "nc_report.txt";
    CliResult r = run_cli({"check-nc", "--graph", fix("k4.g"), "--d", "1", "--f", "1",
                           "--output", out_path.string()});
    CHECK(r.code == 0);
    bvc::ConditionReport rep = bvc::parse_report(bvc::read_file(out_path.string()));
    CHECK(rep.condition == "nc");
    CHECK(rep.verdict == bvc::Verdict::Holds);
    CHECK(rep.partitions_checked == 49);
}

TEST_CASE("parse failures exit 2 with a located diagnostic") {
    CliResult r = run_cli({"check", "--graph", fix("bad.g"), "--d", "1", "--f", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({"check", "--graph", fix("k4.g")}).code == 2);        // missing d/f
    CHECK(run_cli({"frobnicate"}).code == 2);                           // no such command
    CHECK(run_cli({}).code == 2);                                       // no subcommand
    CHECK(run_cli({"check", "--graph", fix("k4.g"), "--d", "1", "--f", "1",
                   "--wobble", "3"}).code == 2);                        // unknown flag
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("budget exhaustion exits 3") {
    CliResult r = run_cli({"check-nc", "--graph", fix("k5.g"), "--d", "2", "--f", "1",
                           "--budget", "4"});
    CHECK(r.code == 3);
    CHECK(r.out.find("not-evaluated") != std::string::npos);
}

TEST_CASE("simulate writes a verifiable trace") {
    fs::path trace_path = fixtures() / "silent.trc";
    CliResult r = run_cli({"simulate", "--scenario", fix("silent.scn"),
                           "--trace", trace_path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("summary validity pass") != std::string::npos);
    CHECK(r.out.find("summary agreement pass") != std::string::npos);
    CHECK(r.out.find("summary t-end") != std::string::npos);
    // The certified bound is reported but this run used spread termination.
    CHECK(r.out.find("summary t-end-executed 0") != std::string::npos);

    CliResult v = run_cli({"verify", "--scenario", fix("silent.scn"),
                           "--trace", trace_path.string()});
    CHECK(v.code == 0);
    CHECK(v.out.find("hash-match pass") != std::string::npos);
    CHECK(v.out.find("replay-match pass") != std::string::npos);
    CHECK(v.out.find("validity pass") != std::string::npos);
    CHECK(v.out.find("agreement pass") != std::string::npos);
}

TEST_CASE("verify rejects a tampered trace") {
    fs::path trace_path = fixtures() / "tamper.trc";
    run_cli({"simulate", "--scenario", fix("silent.scn"), "--trace", trace_path.string()});
    std::string text = bvc::read_file(trace_path.string());
    // Flip one delivered message value: the replay must notice.
    auto pos = text.find("msg 1 1 2 (0)");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 13, "msg 1 1 2 (1)");
    bvc::write_file(trace_path.string(), text);
    CliResult v = run_cli({"verify", "--scenario", fix("silent.scn"),
                           "--trace", trace_path.string()});
    CHECK(v.code == 1);
    CHECK(v.out.find("replay-match fail") != std::string::npos);
}

TEST_CASE("verify rejects a trace from a different scenario") {
    fs::path trace_path = fixtures() / "mismatch.trc";
    run_cli({"simulate", "--scenario", fix("silent.scn"), "--trace", trace_path.string()});
    CliResult v = run_cli({"verify", "--scenario", fix("paper2.scn"),
                           "--trace", trace_path.string()});
    CHECK(v.code == 1);
    CHECK(v.out.find("hash-match fail") != std::string::npos);
}

TEST_CASE("strict paper mode") {
    // Spread termination is an artifact extension; strict mode refuses it.
    CliResult r = run_cli({"simulate", "--scenario", fix("silent.scn"),
                           "--strict-paper"});
    CHECK(r.code == 2);
    // A genuinely paper-terminated scenario runs: 22 exact rounds.
    r = run_cli({"simulate", "--scenario", fix("paper2.scn"), "--strict-paper"});
    CHECK(r.code == 0);
    CHECK(r.out.find("summary rounds 22") != std::string::npos);
    CHECK(r.out.find("summary t-end-executed 1") != std::string::npos);
}

TEST_CASE("spread table output") {
    fs::path table_path = fixtures() / "spread.tbl";
    CliResult r = run_cli({"simulate", "--scenario", fix("silent.scn"),
                           "--spread-table", table_path.string()});
    CHECK(r.code == 0);
    std::string table = bvc::read_file(table_path.string());
    CHECK(table.substr(0, 18) == "t 0 coord 1 spread");
}

TEST_CASE("sweep over a directory") {
    fs::path dir = fixtures() / "sweep";
    fs::create_directories(dir);
    fs::copy_file(fix("silent.scn"), dir / "a.scn", fs::copy_options::overwrite_existing);
    fs::copy_file(fix("silent.scn"), dir / "b.scn", fs::copy_options::overwrite_existing);
    CliResult r = run_cli({"simulate", "--sweep", dir.string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "a.trace"));
    CHECK(fs::exists(dir / "b.trace"));
}

TEST_CASE("tverberg query") {
    CliResult r = run_cli({"tverberg", "--points", "(0) (1) (2)", "--f", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("point (1)") != std::string::npos);
    CHECK(r.out.find("part 0 slots 0 2") != std::string::npos);
    CHECK(r.out.find("part 1 slots 1") != std::string::npos);

    // From a file as well; exactly one source must be given.
    fs::path pts = fixtures() / "pts.txt";
    bvc::write_file(pts.string(), "(0, 0)\n(4, 0)\n(0, 4)\n(1, 1)\n");
    r = run_cli({"tverberg", "--points-file", pts.string(), "--f", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("point (1, 1)") != std::string::npos);
    CHECK(run_cli({"tverberg", "--f", "1"}).code == 2);
    CHECK(run_cli({"tverberg", "--points", "(0)", "--points-file", pts.string(),
                   "--f", "1"}).code == 2);  // both sources at once
    // Too few points for the fault bound: usage error.
    CHECK(run_cli({"tverberg", "--points", "(0) (1)", "--f", "1"}).code == 2);
}

TEST_CASE("bounds report") {
    CliResult r = run_cli({"bounds", "--graph", fix("k4.g"), "--d", "1", "--f", "1",
                           "--mu", "0", "--U", "1", "--epsilon", "1/100"});
    CHECK(r.code == 0);
    CHECK(r.out.find("population-bound holds") != std::string::npos);
    CHECK(r.out.find("degree-bound holds") != std::string::npos);
    CHECK(r.out.find("beta 1/80") != std::string::npos);
    CHECK(r.out.find("r 256") != std::string::npos);
    CHECK(r.out.find("block-length 1024") != std::string::npos);
    CHECK(r.out.find("t-end 356434415144") != std::string::npos);

    // Astronomical bounds degrade to a certified estimate, not a failure.
    bvc::write_file(fix("k6.g"), "complete 6\n");
    r = run_cli({"bounds", "--graph", fix("k6.g"), "--d", "2", "--f", "1",
                 "--mu", "0", "--U", "1", "--epsilon", "1/1000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("t-end ~10^") != std::string::npos);
}

}  // TEST_SUITE
