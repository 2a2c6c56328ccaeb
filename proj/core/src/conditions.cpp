#include "bvc/conditions.hpp"

#include <algorithm>
#include <stdexcept>

namespace bvc {

const std::vector<int>* PartitionWitness::find(const std::string& name) const {
    for (const auto& [part_name, members] : parts)
        if (part_name == name) return &members;
    return nullptr;
}

int link_count_into(const Digraph& g, const std::vector<int>& A, int v) {
    int count = 0;
    const auto& ins = g.in_neighbors(v);
    for (int w : A) {
        if (w == v) throw std::invalid_argument("link count source set contains the target");
        if (std::binary_search(ins.begin(), ins.end(), w)) ++count;
    }
    return count;
}

bool implies_level(const Digraph& g, const std::vector<int>& A,
                   const std::vector<int>& B, int c) {
    for (int v : B)
        if (link_count_into(g, A, v) >= c + 1) return true;
    return false;
}

bool nc_partition_satisfied(const Digraph& g, int f,
                            const std::vector<std::vector<int>>& V,
                            const std::vector<int>& C) {
    for (std::size_t i = 0; i < V.size(); ++i) {
        std::vector<int> side = V[i];
        side.insert(side.end(), C.begin(), C.end());
        for (std::size_t j = 0; j < V.size(); ++j) {
            if (i == j) continue;
            if (implies_level(g, side, V[j], f)) return true;
        }
    }
    return false;
}

bool sc_partition_satisfied(const Digraph& g, int df,
                            const std::vector<int>& L, const std::vector<int>& R,
                            const std::vector<int>& C) {
    std::vector<int> lc = L, rc = R;
    lc.insert(lc.end(), C.begin(), C.end());
    rc.insert(rc.end(), C.begin(), C.end());
    return implies_level(g, rc, L, df) || implies_level(g, lc, R, df);
}

namespace {

void validate_params(const Digraph& g, int d, int f) {
    if (d < 1) throw std::invalid_argument("d must be at least 1");
    if (f < 0) throw std::invalid_argument("f must be non-negative");
    if (f >= g.n()) throw std::invalid_argument("f must leave at least one fault-free process");
}

ConditionReport budget_exhausted(std::string condition, std::uint64_t checked) {
    ConditionReport report;
    report.condition = std::move(condition);
    report.verdict = Verdict::NotEvaluated;
    report.partitions_checked = checked;
    report.note = "partition budget exhausted";
    return report;
}

std::vector<int> sorted_labels(const std::vector<int>& assignment, int label, int n) {
    std::vector<int> out;
    for (int v = 1; v <= n; ++v)
        if (assignment[v] == label) out.push_back(v);
    return out;
}

}  // namespace

// Labels 0..p are V_0..V_p, label p+1 is C, label p+2 is F. Vertices are
// assigned in ascending id with labels tried in that order, so witnesses come
// out in a fixed lexicographic order. A vertex may only open V_k when V_{k-1}
// is already non-empty, which canonicalizes the interchangeable V labels by
// ascending smallest member.
ConditionReport check_nc(const Digraph& g, int d, int f, const SweepBudget& budget) {
    validate_params(g, d, f);
    ConditionReport report;
    report.condition = "nc";
    const int n = g.n();

    std::vector<int> assignment(n + 1, -1);
    for (int p = 1; p <= d; ++p) {
        const int label_c = p + 1, label_f = p + 2;
        std::vector<int> sizes(p + 3, 0);
        bool exhausted = false;

        auto rec = [&](auto&& self, int v) -> bool {  // true when a witness was found
            if (exhausted) return false;
            if (v > n) {
                for (int k = 0; k <= p; ++k)
                    if (sizes[k] == 0) return false;
                if (report.partitions_checked >= budget.max_partitions) {
                    exhausted = true;
                    return false;
                }
                ++report.partitions_checked;
                std::vector<std::vector<int>> V(p + 1);
                for (int k = 0; k <= p; ++k) V[k] = sorted_labels(assignment, k, n);
                std::vector<int> C = sorted_labels(assignment, label_c, n);
                if (nc_partition_satisfied(g, f, V, C)) return false;
                report.verdict = Verdict::Fails;
                report.witness = PartitionWitness{};
                for (int k = 0; k <= p; ++k)
                    report.witness->parts.emplace_back("V" + std::to_string(k), V[k]);
                report.witness->parts.emplace_back("C", C);
                report.witness->parts.emplace_back("F", sorted_labels(assignment, label_f, n));
                return true;
            }
            int opened = 0;
            while (opened <= p && sizes[opened] > 0) ++opened;
            for (int label = 0; label <= label_f; ++label) {
                if (label <= p && label > opened) continue;  // V labels open in order
                if (label == label_f && sizes[label_f] >= f) continue;
                assignment[v] = label;
                ++sizes[label];
                if (self(self, v + 1)) return true;
                --sizes[label];
                assignment[v] = -1;
                if (exhausted) return false;
            }
            return false;
        };
        if (rec(rec, 1)) return report;
        if (exhausted) return budget_exhausted("nc", report.partitions_checked);
    }
    report.verdict = Verdict::Holds;
    return report;
}

// Labels: 0 = L, 1 = R, 2 = C, 3 = F. R may only open once L is non-empty,
// canonicalizing the symmetric L/R pair by ascending smallest member.
ConditionReport check_sc(const Digraph& g, int d, int f, const SweepBudget& budget) {
    validate_params(g, d, f);
    ConditionReport report;
    report.condition = "sc";
    const int n = g.n();
    const int df = d * f;

    std::vector<int> assignment(n + 1, -1);
    int size_l = 0, size_r = 0, size_f = 0;
    bool exhausted = false;

    auto rec = [&](auto&& self, int v) -> bool {
        if (exhausted) return false;
        if (v > n) {
            if (size_l == 0 || size_r == 0) return false;
            if (report.partitions_checked >= budget.max_partitions) {
                exhausted = true;
                return false;
            }
            ++report.partitions_checked;
            std::vector<int> L = sorted_labels(assignment, 0, n);
            std::vector<int> R = sorted_labels(assignment, 1, n);
            std::vector<int> C = sorted_labels(assignment, 2, n);
            if (sc_partition_satisfied(g, df, L, R, C)) return false;
            report.verdict = Verdict::Fails;
            report.witness = PartitionWitness{};
            report.witness->parts.emplace_back("F", sorted_labels(assignment, 3, n));
            report.witness->parts.emplace_back("L", L);
            report.witness->parts.emplace_back("C", C);
            report.witness->parts.emplace_back("R", R);
            return true;
        }
        for (int label = 0; label <= 3; ++label) {
            if (label == 1 && size_l == 0) continue;
            if (label == 3 && size_f >= f) continue;
            assignment[v] = label;
            if (label == 0) ++size_l;
            if (label == 1) ++size_r;
            if (label == 3) ++size_f;
            if (self(self, v + 1)) return true;
            if (label == 0) --size_l;
            if (label == 1) --size_r;
            if (label == 3) --size_f;
            assignment[v] = -1;
            if (exhausted) return false;
        }
        return false;
    };
    if (rec(rec, 1)) return report;
    if (exhausted) return budget_exhausted("sc", report.partitions_checked);
    report.verdict = Verdict::Holds;
    return report;
}

ConditionReport check_sc_via_reduced(const Digraph& g, int d, int f, const SweepBudget& budget) {
    validate_params(g, d, f);
    ConditionReport report;
    report.condition = "sc-reduced";

    BigInt total = 0;
    for (const auto& faults : fault_sets_up_to(g.n(), f))
        total += count_reduced_graphs(g, faults, d, f);
    if (total > BigInt(static_cast<unsigned long>(budget.max_reduced_graphs))) {
        report.verdict = Verdict::NotEvaluated;
        report.note = "reduced-graph budget exhausted: " + total.get_str() + " graphs";
        return report;
    }

    for (const auto& faults : fault_sets_up_to(g.n(), f)) {
        ReducedGraphEnumerator stream(g, faults, d, f);
        while (auto rg = stream.next()) {
            ++report.partitions_checked;
            auto decomposition = decompose(*rg);
            if (decomposition.sources.size() == 1) continue;
            report.verdict = Verdict::Fails;
            report.witness = PartitionWitness{};
            report.witness->parts.emplace_back(
                "F", std::vector<int>(faults.begin(), faults.end()));
            for (std::size_t s = 0; s < decomposition.sources.size(); ++s)
                report.witness->parts.emplace_back(
                    "S" + std::to_string(s),
                    decomposition.components[decomposition.sources[s]]);
            std::string removed;
            for (std::size_t slot = 0; slot < rg->survivors.size(); ++slot)
                for (int w : rg->removed_links[slot])
                    removed += " " + std::to_string(w) + "->" +
                               std::to_string(rg->survivors[slot]);
            report.note = "removed links:" + (removed.empty() ? " none" : removed);
            return report;
        }
    }
    report.verdict = Verdict::Holds;
    return report;
}

bool check_degree_bound(const Digraph& g, int d, int f) {
    if (f == 0) return true;  // the bound is a consequence of faults existing
    return g.min_in_degree() >= (d + 1) * f + 1;
}

bool check_population_bound(const Digraph& g, int d, int f) {
    return g.n() >= (d + 2) * f + 1;
}

}  // namespace bvc
