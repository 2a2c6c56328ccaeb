#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bvc/conditions.hpp"
#include "bvc/geometry.hpp"
#include "bvc/graph.hpp"

namespace bvc {

struct TerminationPolicy {
    enum class Kind { PaperBound, EmpiricalSpread, FixedRounds };
    Kind kind = Kind::EmpiricalSpread;
    std::uint64_t fixed_rounds = 0;   // FixedRounds only
    std::uint64_t cap = 10'000;       // EmpiricalSpread round cap
};

// Faulty sender behaviours. Missing information always degrades to e_0 (the
// origin), matching the receiver-side default for an omitted message.
struct AdversarySpec {
    enum class Kind { Silent, Equivocate, FixedPartition, RandomInRange, Custom };
    Kind kind = Kind::Silent;
    // Equivocate: fixed per-target point, every iteration.
    std::map<int, Point> per_target;
    // FixedPartition: slot k holds the targets receiving e_k.
    std::vector<std::vector<int>> partition_targets;
    // Custom: (iteration, target) -> point.
    std::map<std::pair<std::uint64_t, int>, Point> script;
};

struct Scenario {
    Digraph graph;
    int d = 1;
    int f = 0;
    Rational epsilon;
    Rational mu;
    Rational U;
    std::uint64_t seed = 0;
    std::map<int, Point> inputs;              // exactly the fault-free processes
    std::set<int> fault_set;                  // |fault_set| <= f
    std::map<int, AdversarySpec> adversaries; // per faulty process; default Silent
    TerminationPolicy termination;

    // Throws std::invalid_argument on any structural violation: dimension
    // mismatches, inputs outside [mu, U], inputs missing or on faulty
    // processes, fault set too large or out of range, epsilon <= 0.
    void validate() const;

    std::vector<int> fault_free() const;      // sorted ascending
};

struct RoundRecord {
    // Delivered value per link (from, to); omissions appear as e_0.
    std::map<std::pair<int, int>, Point> messages;
    // Post-update states of the fault-free processes.
    std::map<int, Point> states;
};

struct ExecutionTrace {
    std::map<int, Point> initial_states;      // fault-free inputs (iteration 0)
    std::vector<RoundRecord> rounds;
    bool converged = false;                   // EmpiricalSpread reached its target
    std::uint64_t rounds_executed = 0;

    const std::map<int, Point>& states_after(std::uint64_t t) const;
    // Elementwise max pairwise distance of fault-free states after t rounds.
    std::vector<Rational> spread_after(std::uint64_t t) const;
};

// e_0 = origin; e_k (1 <= k <= d) has 2*eps in coordinate k, zero elsewhere.
Point e_vector(int d, int k, const Rational& eps);

// Delivered value for every link (j, i) at iteration t >= 1. Fault-free
// senders send their current state; faulty senders follow their spec.
std::map<std::pair<int, int>, Point> build_round_messages(
    const Scenario& sc, const std::map<int, Point>& states, std::uint64_t t);

// One iteration of a fault-free process: one Tverberg point per
// ((d+1)f+1)-subset of the received multiset (subsets in lexicographic slot
// order), then the equal-weight average with the previous state. Fewer than
// (d+1)f+1 received values leave the state unchanged.
Point update_step(const Point& v_prev, const std::vector<Point>& received, int d, int f);

// Runs the scenario to its termination policy. Deterministic: identical
// scenarios produce identical traces.
ExecutionTrace run_execution(const Scenario& sc);

// Mixing-weight lower bound: 1/n for f = 0, otherwise
// 1 / (n^2 (1 + C(n, (d+1)f+1))).
Rational compute_beta(int n, int d, int f);

struct TEndResult {
    BigInt value;         // rn * blocks
    BigInt blocks;        // smallest k with (1 - beta^(rn))^k < rhs
    BigInt block_length;  // rn
    Rational beta;
    BigInt r;
};

// Raised when the exact round bound cannot be materialized within the bit
// budget; carries a certified order-of-magnitude estimate (log10 of the
// bound, rounded up).
struct TEndOverflow : std::runtime_error {
    TEndOverflow(const std::string& estimate, double log10_bound)
        : std::runtime_error("round bound exceeds the exact materialization budget; "
                             "approximately " + estimate),
          estimate_text(estimate),
          log10_bound(log10_bound) {}
    std::string estimate_text;
    double log10_bound = 0;
};

// Smallest k >= 0 with q^k < rhs, for exact 0 < q < 1 and rhs > 0. Verified
// integer search: certified directed-rounding enclosures pin floor of
// log(rhs)/log(q), with an exact tie test at the boundary; never iterates k.
BigInt smallest_block_count(const Rational& q, const Rational& rhs);

// Smallest positive t with (1 - beta^(rn))^floor(t/(rn)) < eps/(n*max(|U|,|mu|)),
// where r = count_reduced_graphs_max(g, d, f). Returns 1 when mu = U = 0.
// Throws TEndOverflow when the exact value exceeds max_bits.
TEndResult compute_t_end(const Digraph& g, int d, int f, const Rational& mu,
                         const Rational& U, const Rational& epsilon,
                         std::uint64_t max_bits = (1u << 22));

// Scenario that freezes every fault-free state when `witness` violates the
// iteration condition: members of V_i start at (and keep) e_i, members of C
// start at e_0, faulty processes replay e_i into V_i forever.
Scenario scenario_from_nc_witness(const Digraph& g, int d, int f,
                                  const PartitionWitness& witness,
                                  const Rational& epsilon, std::uint64_t rounds);

}  // namespace bvc
