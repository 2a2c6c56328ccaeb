#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bvc/graph.hpp"

namespace bvc {

enum class Verdict { Holds, Fails, NotEvaluated };

// A named partition of the process set, e.g. V0/V1/C/F for the iteration
// condition or F/L/C/R for the split condition. Order of parts is fixed by
// the producing checker.
struct PartitionWitness {
    std::vector<std::pair<std::string, std::vector<int>>> parts;

    const std::vector<int>* find(const std::string& name) const;
    bool operator==(const PartitionWitness& other) const = default;
};

struct ConditionReport {
    std::string condition;  // "nc" | "sc" | "sc-reduced"
    Verdict verdict = Verdict::NotEvaluated;
    std::uint64_t partitions_checked = 0;
    std::optional<PartitionWitness> witness;
    std::string note;
};

// Caps on exhaustive sweeps. Checkers return NotEvaluated instead of running
// past a cap; partition counts grow exponentially around n = 12.
struct SweepBudget {
    std::uint64_t max_partitions = 20'000'000;
    // Reduced-graph sweeps refuse when the closed-form count exceeds this.
    std::uint64_t max_reduced_graphs = 20'000'000;
};

// |in-neighbors of v inside A|.
int link_count_into(const Digraph& g, const std::vector<int>& A, int v);

// A => B at level c: some member of B has at least c+1 in-neighbors in A.
bool implies_level(const Digraph& g, const std::vector<int>& A,
                   const std::vector<int>& B, int c);

// One-partition predicates used by the sweeps; exposed so a witness can be
// re-verified directly.
bool nc_partition_satisfied(const Digraph& g, int f,
                            const std::vector<std::vector<int>>& V,
                            const std::vector<int>& C);
bool sc_partition_satisfied(const Digraph& g, int df,
                            const std::vector<int>& L, const std::vector<int>& R,
                            const std::vector<int>& C);

// Exhaustive partition sweeps. Witnesses are the first violating partition in
// canonical order: vertices assigned in ascending id, labels tried in a fixed
// order, symmetric part labels deduplicated by ascending smallest member (and
// ascending p first for the NC sweep). A returned witness always violates the
// condition when re-checked by the one-partition predicate.
ConditionReport check_nc(const Digraph& g, int d, int f, const SweepBudget& budget = {});
ConditionReport check_sc(const Digraph& g, int d, int f, const SweepBudget& budget = {});

// Equivalent route: SC holds iff every reduced graph over every fault set has
// exactly one source component.
ConditionReport check_sc_via_reduced(const Digraph& g, int d, int f,
                                     const SweepBudget& budget = {});

// min in-degree >= (d+1)f+1 (a necessary consequence of SC when f > 0).
bool check_degree_bound(const Digraph& g, int d, int f);
// n >= (d+2)f+1 (a necessary consequence of NC).
bool check_population_bound(const Digraph& g, int d, int f);

}  // namespace bvc
