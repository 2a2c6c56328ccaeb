#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bvc/rational.hpp"

namespace bvc {

// Directed graph on processes 1..n. No self-loops, n >= 2. A link (j, i)
// means i receives messages from j.
class Digraph {
public:
    // Empty placeholder (n() == 0) for deserialization targets; every usable
    // graph comes from the validating constructor below.
    Digraph() = default;
    Digraph(int n, const std::vector<std::pair<int, int>>& edges);
    static Digraph complete(int n);

    int n() const { return n_; }
    int edge_count() const { return edge_count_; }
    bool has_edge(int from, int to) const;
    // Sorted ascending. v is 1-based.
    const std::vector<int>& in_neighbors(int v) const;
    const std::vector<int>& out_neighbors(int v) const;
    int in_degree(int v) const { return static_cast<int>(in_neighbors(v).size()); }
    int min_in_degree() const;
    // Sorted by (from, to).
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Digraph& other) const = default;

private:
    int n_ = 0;
    int edge_count_ = 0;
    std::vector<std::vector<int>> in_;   // index 0 unused
    std::vector<std::vector<int>> out_;
};

// Strongly connected components plus the acyclic condensation. Components are
// listed in ascending order of their smallest process id; `edges` are
// condensation links between component indices; `sources` are the indices of
// components with no incoming condensation link.
struct Decomposition {
    std::vector<std::vector<int>> components;  // each sorted ascending
    std::vector<std::pair<int, int>> edges;    // sorted, no duplicates
    std::vector<int> sources;                  // sorted ascending
};

Decomposition decompose(const Digraph& g);

// A fault set F removed together with its incident links, then at most d*f
// additional incoming links removed per surviving process.
struct ReducedGraph {
    std::set<int> fault_set;
    std::vector<int> survivors;                    // sorted ascending
    std::vector<std::vector<int>> in_neighbors;    // per survivor slot, sorted
    std::vector<std::vector<int>> removed_links;   // per survivor slot, sorted

    int survivor_slot(int v) const;  // index into survivors; -1 if absent
};

Decomposition decompose(const ReducedGraph& rg);

// True iff some survivor reaches every survivor. Computed both by brute-force
// reachability and as "exactly one source component"; the two computations are
// asserted equal. A single survivor with no links yields true.
bool has_universal_root(const ReducedGraph& rg);
bool has_universal_root(const Digraph& g);

// Closed-form count of reduced graphs for one fault set:
// prod over survivors v of sum_{k=0}^{min(d*f, indeg(v))} C(indeg(v), k),
// where indeg counts surviving in-neighbors only.
BigInt count_reduced_graphs(const Digraph& g, const std::set<int>& faults, int d, int f);

// max over all F with |F| <= min(f, n-1) of count_reduced_graphs(g, F, d, f).
BigInt count_reduced_graphs_max(const Digraph& g, int d, int f);

// All fault sets with |F| <= min(f, n-1), ordered by size then lexicographic.
std::vector<std::set<int>> fault_sets_up_to(int n, int f);

// Streams every reduced graph for a fixed fault set, ordered lexicographically
// by the per-survivor removal lists (ascending survivor id, each removal list
// ascending; the empty removal comes first). Single consumer.
class ReducedGraphEnumerator {
public:
    ReducedGraphEnumerator(const Digraph& g, const std::set<int>& faults, int d, int f);

    std::optional<ReducedGraph> next();
    const BigInt& total() const { return total_; }

private:
    std::vector<int> survivors_;
    std::vector<std::vector<int>> surviving_in_;          // per survivor slot
    std::vector<std::vector<std::vector<int>>> choices_;  // removal options per slot
    std::vector<std::size_t> odometer_;
    std::set<int> faults_;
    BigInt total_;
    bool done_ = false;
};

}  // namespace bvc
