// Microbenchmarks for the hot paths: condition sweeps, reduced-graph
// enumeration, split-point search, one protocol round, a full execution, and
// the certified bound arithmetic.

#include <cstdint>
#include <utility>
#include <vector>

#include <benchmark/benchmark.h>

#include "bvc/analysis.hpp"
#include "bvc/conditions.hpp"
#include "bvc/geometry.hpp"
#include "bvc/graph.hpp"
#include "bvc/io.hpp"
#include "bvc/protocol.hpp"

namespace {

using namespace bvc;

Point pt(const std::string& text) { return parse_point(text); }

Scenario k4_silent_scenario() {
    Scenario sc;
    sc.graph = Digraph::complete(4);
    sc.d = 1;
    sc.f = 1;
    sc.epsilon = Rational(1, 1000);
    sc.mu = 0;
    sc.U = 2;
    sc.inputs = {{1, pt("(0)")}, {2, pt("(1)")}, {3, pt("(2)")}};
    sc.fault_set = {4};
    sc.termination.kind = TerminationPolicy::Kind::EmpiricalSpread;
    sc.termination.cap = 10'000;
    return sc;
}

void bm_check_nc_k5(benchmark::State& state) {
    Digraph g = Digraph::complete(5);
    for (auto _ : state) {
        ConditionReport rep = check_nc(g, 2, 1);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(bm_check_nc_k5);

void bm_check_sc_k6(benchmark::State& state) {
    Digraph g = Digraph::complete(6);
    for (auto _ : state) {
        ConditionReport rep = check_sc(g, 2, 1);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(bm_check_sc_k6);

void bm_check_sc_via_reduced_k4(benchmark::State& state) {
    Digraph g = Digraph::complete(4);
    for (auto _ : state) {
        ConditionReport rep = check_sc_via_reduced(g, 1, 1);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(bm_check_sc_via_reduced_k4);

void bm_reduced_enumeration_k5(benchmark::State& state) {
    Digraph g = Digraph::complete(5);
    for (auto _ : state) {
        long count = 0;
        for (const std::set<int>& faults : fault_sets_up_to(5, 1)) {
            ReducedGraphEnumerator en(g, faults, 1, 1);
            while (auto rg = en.next()) {
                benchmark::DoNotOptimize(*rg);
                ++count;
            }
        }
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(bm_reduced_enumeration_k5);

void bm_hull_membership_3d(benchmark::State& state) {
    std::vector<Point> cube = {pt("(0, 0, 0)"), pt("(1, 0, 0)"), pt("(0, 1, 0)"),
                               pt("(0, 0, 1)"), pt("(1, 1, 0)"), pt("(1, 0, 1)"),
                               pt("(0, 1, 1)"), pt("(1, 1, 1)")};
    Point q = pt("(1/3, 1/2, 2/3)");
    for (auto _ : state) {
        bool inside = hull_membership(q, cube);
        benchmark::DoNotOptimize(inside);
    }
}
BENCHMARK(bm_hull_membership_3d);

void bm_tverberg_direct_split(benchmark::State& state) {
    // f = 1 with d + 2 points in general position: the affine-dependence path.
    std::vector<Point> y = {pt("(0, 0)"), pt("(4, 0)"), pt("(0, 4)"), pt("(3, 3)")};
    for (auto _ : state) {
        TverbergResult tv = tverberg_point(y, 1);
        benchmark::DoNotOptimize(tv);
    }
}
BENCHMARK(bm_tverberg_direct_split);

void bm_tverberg_partition_scan(benchmark::State& state) {
    // f = 2 has no direct split; the canonical partition scan runs.
    std::vector<Point> y = {pt("(0, 0)"),  pt("(6, 0)"), pt("(0, 6)"), pt("(6, 6)"),
                            pt("(3, 1)"),  pt("(1, 3)"), pt("(4, 4)")};
    for (auto _ : state) {
        TverbergResult tv = tverberg_point(y, 2);
        benchmark::DoNotOptimize(tv);
    }
}
BENCHMARK(bm_tverberg_partition_scan);

void bm_update_step(benchmark::State& state) {
    Point previous = pt("(1)");
    std::vector<Point> received = {pt("(0)"), pt("(1)"), pt("(2)"), pt("(10)")};
    for (auto _ : state) {
        Point next = update_step(previous, received, 1, 1);
        benchmark::DoNotOptimize(next);
    }
}
BENCHMARK(bm_update_step);

void bm_run_execution_k4(benchmark::State& state) {
    Scenario sc = k4_silent_scenario();
    for (auto _ : state) {
        ExecutionTrace trace = run_execution(sc);
        benchmark::DoNotOptimize(trace);
    }
}
BENCHMARK(bm_run_execution_k4);

void bm_verify_validity_k4(benchmark::State& state) {
    Scenario sc = k4_silent_scenario();
    ExecutionTrace trace = run_execution(sc);
    for (auto _ : state) {
        ValidityReport rep = verify_validity(trace, sc);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(bm_verify_validity_k4);

void bm_compute_t_end_k4(benchmark::State& state) {
    Digraph g = Digraph::complete(4);
    for (auto _ : state) {
        TEndResult bound = compute_t_end(g, 1, 1, 0, 2, Rational(1, 1000));
        benchmark::DoNotOptimize(bound);
    }
}
BENCHMARK(bm_compute_t_end_k4);

void bm_backward_product(benchmark::State& state) {
    // Five 5x5 row-stochastic factors with denominator 5.
    Matrix factor(5, std::vector<Rational>(5, Rational(1, 5)));
    std::vector<Matrix> factors(5, factor);
    for (auto _ : state) {
        Matrix product = backward_product(factors);
        Rational spread = delta(product);
        Rational overlap = lambda(product);
        benchmark::DoNotOptimize(product);
        benchmark::DoNotOptimize(spread);
        benchmark::DoNotOptimize(overlap);
    }
}
BENCHMARK(bm_backward_product);

}  // namespace

BENCHMARK_MAIN();
