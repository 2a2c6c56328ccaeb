#include "bvc/graph.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace bvc {

Digraph::Digraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 2) throw std::invalid_argument("a graph needs at least 2 processes");
    in_.assign(n + 1, {});
    out_.assign(n + 1, {});
    for (auto [from, to] : edges) {
        if (from < 1 || from > n || to < 1 || to > n)
            throw std::invalid_argument("link endpoint out of range");
        if (from == to) throw std::invalid_argument("self-loops are not allowed");
        in_[to].push_back(from);
        out_[from].push_back(to);
    }
    for (int v = 1; v <= n; ++v) {
        auto dedupe = [](std::vector<int>& xs) {
            std::sort(xs.begin(), xs.end());
            xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        };
        dedupe(in_[v]);
        dedupe(out_[v]);
        edge_count_ += static_cast<int>(in_[v].size());
    }
}

Digraph Digraph::complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) edges.emplace_back(i, j);
    return Digraph(n, edges);
}

bool Digraph::has_edge(int from, int to) const {
    const auto& ins = in_neighbors(to);
    return std::binary_search(ins.begin(), ins.end(), from);
}

const std::vector<int>& Digraph::in_neighbors(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("process id out of range");
    return in_[v];
}

const std::vector<int>& Digraph::out_neighbors(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("process id out of range");
    return out_[v];
}

int Digraph::min_in_degree() const {
    int best = static_cast<int>(in_[1].size());
    for (int v = 2; v <= n_; ++v) best = std::min(best, static_cast<int>(in_[v].size()));
    return best;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int from = 1; from <= n_; ++from)
        for (int to : out_[from]) out.emplace_back(from, to);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Iterative Tarjan over a 0-based adjacency list; components come out in
// reverse topological order and are re-sorted by smallest original id below.
std::vector<std::vector<int>> tarjan_scc(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::vector<int>> comps;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    for (int start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> frames{{start, 0}};
        index[start] = low[start] = counter++;
        stack.push_back(start);
        on_stack[start] = 1;
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child < adj[v].size()) {
                int w = adj[v][child++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp.push_back(w);
                    } while (w != v);
                    comps.push_back(std::move(comp));
                }
                int finished = v;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
            }
        }
    }
    return comps;
}

// Shared condensation builder. `ids` maps 0-based slots to process ids;
// `adj` is out-adjacency over slots.
Decomposition decompose_slots(const std::vector<int>& ids,
                              const std::vector<std::vector<int>>& adj) {
    Decomposition out;
    auto comps = tarjan_scc(adj);
    for (auto& comp : comps) {
        std::vector<int> named;
        named.reserve(comp.size());
        for (int slot : comp) named.push_back(ids[slot]);
        std::sort(named.begin(), named.end());
        out.components.push_back(std::move(named));
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::map<int, int> comp_of;  // process id -> component index
    for (std::size_t c = 0; c < out.components.size(); ++c)
        for (int v : out.components[c]) comp_of[v] = static_cast<int>(c);

    for (std::size_t slot = 0; slot < adj.size(); ++slot)
        for (int to_slot : adj[slot]) {
            int a = comp_of[ids[slot]], b = comp_of[ids[to_slot]];
            if (a != b) out.edges.emplace_back(a, b);
        }
    std::sort(out.edges.begin(), out.edges.end());
    out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());

    std::vector<char> has_in(out.components.size(), 0);
    for (auto [a, b] : out.edges) has_in[b] = 1;
    for (std::size_t c = 0; c < out.components.size(); ++c)
        if (!has_in[c]) out.sources.push_back(static_cast<int>(c));
    return out;
}

bool universal_root_by_reachability(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    for (int start = 0; start < n; ++start) {
        std::vector<char> seen(n, 0);
        std::vector<int> queue{start};
        seen[start] = 1;
        int reached = 1;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    queue.push_back(w);
                }
        }
        if (reached == n) return true;
    }
    return false;
}

bool universal_root_slots(const std::vector<int>& ids,
                          const std::vector<std::vector<int>>& adj) {
    bool by_reach = universal_root_by_reachability(adj);
    bool by_sources = decompose_slots(ids, adj).sources.size() == 1;
    assert(by_reach == by_sources);
    return by_reach && by_sources;
}

std::vector<std::vector<int>> digraph_out_slots(const Digraph& g) {
    std::vector<std::vector<int>> adj(g.n());
    for (int v = 1; v <= g.n(); ++v)
        for (int w : g.out_neighbors(v)) adj[v - 1].push_back(w - 1);
    return adj;
}

std::vector<int> digraph_ids(const Digraph& g) {
    std::vector<int> ids(g.n());
    for (int v = 1; v <= g.n(); ++v) ids[v - 1] = v;
    return ids;
}

std::vector<std::vector<int>> reduced_out_slots(const ReducedGraph& rg) {
    std::vector<std::vector<int>> adj(rg.survivors.size());
    for (std::size_t slot = 0; slot < rg.survivors.size(); ++slot)
        for (int from : rg.in_neighbors[slot]) {
            int from_slot = rg.survivor_slot(from);
            assert(from_slot >= 0);
            adj[from_slot].push_back(static_cast<int>(slot));
        }
    for (auto& xs : adj) std::sort(xs.begin(), xs.end());
    return adj;
}

}  // namespace

Decomposition decompose(const Digraph& g) {
    return decompose_slots(digraph_ids(g), digraph_out_slots(g));
}

int ReducedGraph::survivor_slot(int v) const {
    auto it = std::lower_bound(survivors.begin(), survivors.end(), v);
    if (it == survivors.end() || *it != v) return -1;
    return static_cast<int>(it - survivors.begin());
}

Decomposition decompose(const ReducedGraph& rg) {
    return decompose_slots(rg.survivors, reduced_out_slots(rg));
}

bool has_universal_root(const ReducedGraph& rg) {
    return universal_root_slots(rg.survivors, reduced_out_slots(rg));
}

bool has_universal_root(const Digraph& g) {
    return universal_root_slots(digraph_ids(g), digraph_out_slots(g));
}

namespace {

std::vector<int> surviving_in_neighbors(const Digraph& g, const std::set<int>& faults, int v) {
    std::vector<int> out;
    for (int w : g.in_neighbors(v))
        if (!faults.count(w)) out.push_back(w);
    return out;
}

BigInt removal_choice_count(int indeg, int df) {
    BigInt total = 0;
    for (int k = 0; k <= std::min(df, indeg); ++k) total += binomial(indeg, k);
    return total;
}

void check_fault_set(const Digraph& g, const std::set<int>& faults, int d, int f) {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    if (f < 0) throw std::invalid_argument("f must be non-negative");
    if (static_cast<int>(faults.size()) > f)
        throw std::invalid_argument("fault set larger than f");
    if (static_cast<int>(faults.size()) >= g.n())
        throw std::invalid_argument("fault set leaves no survivors");
    for (int v : faults)
        if (v < 1 || v > g.n()) throw std::invalid_argument("fault id out of range");
}

// Subsets of `items` of size <= limit, in lexicographic list order
// ([] < [a] < [a,b] < ... assuming items sorted ascending).
std::vector<std::vector<int>> bounded_subsets(const std::vector<int>& items, int limit) {
    std::vector<std::vector<int>> out{{}};  // the empty removal always comes first
    std::vector<int> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<int>(cur.size()) == limit) return;
        for (std::size_t i = start; i < items.size(); ++i) {
            cur.push_back(items[i]);
            out.push_back(cur);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    if (limit > 0) rec(rec, 0);
    return out;
}

}  // namespace

BigInt count_reduced_graphs(const Digraph& g, const std::set<int>& faults, int d, int f) {
    check_fault_set(g, faults, d, f);
    BigInt total = 1;
    for (int v = 1; v <= g.n(); ++v) {
        if (faults.count(v)) continue;
        int indeg = static_cast<int>(surviving_in_neighbors(g, faults, v).size());
        total *= removal_choice_count(indeg, d * f);
    }
    return total;
}

BigInt count_reduced_graphs_max(const Digraph& g, int d, int f) {
    BigInt best = 0;
    for (const auto& faults : fault_sets_up_to(g.n(), f)) {
        BigInt c = count_reduced_graphs(g, faults, d, f);
        if (c > best) best = c;
    }
    return best;
}

std::vector<std::set<int>> fault_sets_up_to(int n, int f) {
    std::vector<std::set<int>> out;
    int cap = std::min(f, n - 1);
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start, int want) -> void {
        if (static_cast<int>(cur.size()) == want) {
            out.emplace_back(cur.begin(), cur.end());
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            self(self, v + 1, want);
            cur.pop_back();
        }
    };
    for (int size = 0; size <= cap; ++size) rec(rec, 1, size);
    return out;
}

ReducedGraphEnumerator::ReducedGraphEnumerator(const Digraph& g, const std::set<int>& faults,
                                               int d, int f)
    : faults_(faults) {
    check_fault_set(g, faults, d, f);
    for (int v = 1; v <= g.n(); ++v)
        if (!faults.count(v)) {
            survivors_.push_back(v);
            surviving_in_.push_back(surviving_in_neighbors(g, faults, v));
        }
    total_ = 1;
    for (const auto& ins : surviving_in_) {
        choices_.push_back(bounded_subsets(ins, d * f));
        total_ *= static_cast<unsigned long>(choices_.back().size());
    }
    odometer_.assign(survivors_.size(), 0);
}

std::optional<ReducedGraph> ReducedGraphEnumerator::next() {
    if (done_) return std::nullopt;
    ReducedGraph rg;
    rg.fault_set = faults_;
    rg.survivors = survivors_;
    rg.in_neighbors.resize(survivors_.size());
    rg.removed_links.resize(survivors_.size());
    for (std::size_t slot = 0; slot < survivors_.size(); ++slot) {
        const auto& removed = choices_[slot][odometer_[slot]];
        rg.removed_links[slot] = removed;
        for (int w : surviving_in_[slot])
            if (!std::binary_search(removed.begin(), removed.end(), w))
                rg.in_neighbors[slot].push_back(w);
    }
    // advance odometer; last survivor cycles fastest
    done_ = true;
    for (std::size_t i = survivors_.size(); i-- > 0;) {
        if (++odometer_[i] < choices_[i].size()) {
            done_ = false;
            break;
        }
        odometer_[i] = 0;
    }
    if (survivors_.empty()) done_ = true;
    return rg;
}

}  // namespace bvc
