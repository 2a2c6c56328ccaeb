#include "bvc/geometry.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "bvc/linprog.hpp"

namespace bvc {

namespace {

std::size_t common_dim(const std::vector<Point>& pts) {
    if (pts.empty()) throw std::invalid_argument("empty point set");
    std::size_t d = pts.front().dim();
    if (d == 0) throw std::invalid_argument("zero-dimensional point");
    for (const auto& p : pts)
        if (p.dim() != d) throw std::invalid_argument("point dimension mismatch");
    return d;
}

// Constraint block for "q is a convex combination of S": d coordinate rows
// plus one weight-sum row over |S| weight variables.
void append_membership_rows(lp::Tableau& A, lp::Row& b, const std::vector<Point>& S,
                            const Point& q, std::size_t var_offset, std::size_t total_vars) {
    const std::size_t d = q.dim();
    for (std::size_t l = 0; l < d; ++l) {
        lp::Row row(total_vars, Rational(0));
        for (std::size_t i = 0; i < S.size(); ++i) row[var_offset + i] = S[i][l];
        A.push_back(std::move(row));
        b.push_back(q[l]);
    }
    lp::Row sum(total_vars, Rational(0));
    for (std::size_t i = 0; i < S.size(); ++i) sum[var_offset + i] = 1;
    A.push_back(std::move(sum));
    b.push_back(Rational(1));
}

}  // namespace

bool hull_membership(const Point& q, const std::vector<Point>& S) {
    common_dim(S);
    if (q.dim() != S.front().dim()) throw std::invalid_argument("query dimension mismatch");
    lp::Tableau A;
    lp::Row b;
    append_membership_rows(A, b, S, q, 0, S.size());
    return lp::feasible_point(A, b).has_value();
}

std::optional<std::vector<Rational>> convex_weights(const Point& q, const std::vector<Point>& S) {
    common_dim(S);
    if (q.dim() != S.front().dim()) throw std::invalid_argument("query dimension mismatch");
    lp::Tableau A;
    lp::Row b;
    append_membership_rows(A, b, S, q, 0, S.size());
    if (!lp::feasible_point(A, b)) return std::nullopt;

    // Slot-by-slot minimization pins the lexicographically minimal weights.
    std::vector<Rational> weights(S.size());
    for (std::size_t j = 0; j < S.size(); ++j) {
        lp::Row c(S.size(), Rational(0));
        c[j] = 1;
        auto r = lp::solve_min(A, b, c);
        if (r.status != lp::Status::Optimal)
            throw std::logic_error("weight minimization must stay feasible");
        weights[j] = r.objective;
        lp::Row fix(S.size(), Rational(0));
        fix[j] = 1;
        A.push_back(std::move(fix));
        b.push_back(weights[j]);
    }
    return weights;
}

std::optional<Point> hulls_common_point(const std::vector<std::vector<Point>>& parts) {
    if (parts.empty()) throw std::invalid_argument("no parts given");
    const std::size_t d = common_dim(parts.front());
    std::size_t total_vars = 2 * d;  // x split into u - w, appended after the weights
    for (const auto& part : parts) {
        if (common_dim(part) != d) throw std::invalid_argument("part dimension mismatch");
        total_vars += part.size();
    }
    const std::size_t base_u = total_vars - 2 * d;
    const std::size_t base_w = total_vars - d;

    lp::Tableau A;
    lp::Row b;
    std::size_t offset = 0;
    for (const auto& part : parts) {
        // sum of weights = 1; per coordinate: sum(weight * point) - u + w = 0
        lp::Row sum(total_vars, Rational(0));
        for (std::size_t i = 0; i < part.size(); ++i) sum[offset + i] = 1;
        A.push_back(std::move(sum));
        b.push_back(Rational(1));
        for (std::size_t l = 0; l < d; ++l) {
            lp::Row row(total_vars, Rational(0));
            for (std::size_t i = 0; i < part.size(); ++i) row[offset + i] = part[i][l];
            row[base_u + l] = -1;
            row[base_w + l] = 1;
            A.push_back(std::move(row));
            b.push_back(Rational(0));
        }
        offset += part.size();
    }
    if (!lp::feasible_point(A, b)) return std::nullopt;

    Point out = zero_point(d);
    for (std::size_t l = 0; l < d; ++l) {
        lp::Row c(total_vars, Rational(0));
        c[base_u + l] = 1;
        c[base_w + l] = -1;
        auto r = lp::solve_min(A, b, c);
        if (r.status != lp::Status::Optimal)
            throw std::logic_error("coordinate minimization must stay feasible and bounded");
        out[l] = r.objective;
        lp::Row fix(total_vars, Rational(0));
        fix[base_u + l] = 1;
        fix[base_w + l] = -1;
        A.push_back(std::move(fix));
        b.push_back(out[l]);
    }
    return out;
}

namespace {

// Restricted-growth strings over exactly `p` blocks, lexicographic. Calls
// visit(assignment); stops early when visit returns true.
bool scan_partitions(std::size_t m, int p, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> a(m, 0);
    auto rec = [&](auto&& self, std::size_t i, int used) -> bool {
        if (i == m) return used == p && visit(a);
        for (int v = 0; v <= std::min(used, p - 1); ++v) {
            a[i] = v;
            if (self(self, i + 1, std::max(used, v + 1))) return true;
        }
        return false;
    };
    return rec(rec, 1, 1);  // slot 0 is pinned to block 0
}

std::vector<std::vector<int>> slots_of(const std::vector<int>& assignment, int p) {
    std::vector<std::vector<int>> slots(p);
    for (std::size_t i = 0; i < assignment.size(); ++i)
        slots[assignment[i]].push_back(static_cast<int>(i));
    return slots;
}

// Unique affine dependence for d+2 points in general position; nullopt on any
// rank drop or zero coefficient.
std::optional<std::vector<Rational>> affine_dependence(const std::vector<Point>& Y) {
    const std::size_t d = Y.front().dim();
    const std::size_t m = Y.size();  // d + 2
    // rows: d coordinate equations + the weight-sum equation, columns: lambda
    std::vector<std::vector<Rational>> M(d + 1, std::vector<Rational>(m));
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t i = 0; i < m; ++i) M[l][i] = Y[i][l];
    for (std::size_t i = 0; i < m; ++i) M[d][i] = 1;

    std::vector<int> pivot_col(d + 1, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < d + 1; ++col) {
        std::size_t sel = row;
        while (sel < d + 1 && M[sel][col] == 0) ++sel;
        if (sel == d + 1) continue;
        std::swap(M[sel], M[row]);
        const Rational inv = M[row][col];
        for (auto& v : M[row]) v /= inv;
        for (std::size_t i = 0; i < d + 1; ++i) {
            if (i == row || M[i][col] == 0) continue;
            const Rational factor = M[i][col];
            for (std::size_t j = 0; j < m; ++j)
                if (M[row][j] != 0) M[i][j] -= factor * M[row][j];
        }
        pivot_col[row] = static_cast<int>(col);
        ++row;
    }
    if (row != d + 1) return std::nullopt;  // rank drop: nullspace dimension >= 2

    int free_col = -1;
    for (std::size_t col = 0, r = 0; col < m; ++col) {
        if (r < d + 1 && pivot_col[r] == static_cast<int>(col)) {
            ++r;
        } else {
            free_col = static_cast<int>(col);
        }
    }
    std::vector<Rational> lambda(m, Rational(0));
    lambda[free_col] = 1;
    for (std::size_t r = 0; r < d + 1; ++r) lambda[pivot_col[r]] = -M[r][free_col];
    for (const auto& v : lambda)
        if (v == 0) return std::nullopt;  // a d+1 subset is affinely dependent
    return lambda;
}

std::optional<TverbergResult> radon_fast_path(const std::vector<Point>& Y) {
    auto lambda = affine_dependence(Y);
    if (!lambda) return std::nullopt;
    if ((*lambda)[0] < 0)
        for (auto& v : *lambda) v = -v;  // slot 0 on the positive side

    TverbergResult out;
    out.part_slots.assign(2, {});
    Rational scale = 0;
    Point sum = zero_point(Y.front().dim());
    for (std::size_t i = 0; i < Y.size(); ++i) {
        if ((*lambda)[i] > 0) {
            out.part_slots[0].push_back(static_cast<int>(i));
            scale += (*lambda)[i];
            sum += (*lambda)[i] * Y[i];
        } else {
            out.part_slots[1].push_back(static_cast<int>(i));
        }
    }
    out.point = Rational(1) / scale * sum;
    out.parts.assign(2, {});
    for (int side = 0; side < 2; ++side)
        for (int slot : out.part_slots[side]) out.parts[side].push_back(Y[slot]);
    return out;
}

}  // namespace

TverbergResult tverberg_point(const std::vector<Point>& Y, int f) {
    const std::size_t d = common_dim(Y);
    if (f < 0) throw std::invalid_argument("f must be non-negative");
    const std::size_t need = (d + 1) * static_cast<std::size_t>(f) + 1;
    if (Y.size() < need)
        throw std::invalid_argument("need at least (d+1)f+1 points for a certified split");

    if (f == 0) {
        auto p = hulls_common_point({Y});
        TverbergResult out;
        out.point = *p;  // hull of a non-empty set is non-empty
        out.part_slots.assign(1, {});
        for (std::size_t i = 0; i < Y.size(); ++i)
            out.part_slots[0].push_back(static_cast<int>(i));
        out.parts = {Y};
        return out;
    }

    if (f == 1 && Y.size() == d + 2) {
        if (auto fast = radon_fast_path(Y)) return *fast;
    }

    TverbergResult out;
    bool found = scan_partitions(Y.size(), f + 1, [&](const std::vector<int>& assignment) {
        auto slots = slots_of(assignment, f + 1);
        std::vector<std::vector<Point>> parts(slots.size());
        for (std::size_t k = 0; k < slots.size(); ++k)
            for (int slot : slots[k]) parts[k].push_back(Y[slot]);
        auto p = hulls_common_point(parts);
        if (!p) return false;
        out.point = *p;
        out.part_slots = std::move(slots);
        out.parts = std::move(parts);
        return true;
    });
    if (!found)
        throw std::runtime_error("no valid split found despite |Y| >= (d+1)f+1");
    return out;
}

}  // namespace bvc
