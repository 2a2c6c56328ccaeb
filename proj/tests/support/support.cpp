#include "support.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace bvc::testing {

int rand_int(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng);
}

Rational rand_rational(Rng& rng, int num_range, int den_range) {
    Rational q(rand_int(rng, -num_range, num_range), rand_int(rng, 1, den_range));
    q.canonicalize();
    return q;
}

Point rand_point(Rng& rng, int d, int num_range, int den_range) {
    std::vector<Rational> coords;
    coords.reserve(d);
    for (int k = 0; k < d; ++k) coords.push_back(rand_rational(rng, num_range, den_range));
    return Point(std::move(coords));
}

Digraph rand_digraph(Rng& rng, int n, int percent) {
    std::vector<std::pair<int, int>> edges;
    for (int from = 1; from <= n; ++from)
        for (int to = 1; to <= n; ++to)
            if (from != to && rand_int(rng, 1, 100) <= percent) edges.push_back({from, to});
    return Digraph(n, edges);
}

namespace {

// Ordered non-diagonal pairs in a fixed order; bit b of a mask encodes
// pair_list[b] being an edge.
std::vector<std::pair<int, int>> ordered_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int from = 1; from <= n; ++from)
        for (int to = 1; to <= n; ++to)
            if (from != to) pairs.push_back({from, to});
    return pairs;
}

}  // namespace

std::vector<Digraph> nonisomorphic_digraphs(int n) {
    if (n < 2 || n > 5) throw std::invalid_argument("nonisomorphic_digraphs expects 2 <= n <= 5");
    const auto pairs = ordered_pairs(n);
    const int m = static_cast<int>(pairs.size());

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::vector<int>> bit_maps;  // per permutation: bit -> permuted bit
    do {
        std::vector<int> map(m);
        for (int b = 0; b < m; ++b) {
            std::pair<int, int> moved{perm[pairs[b].first - 1], perm[pairs[b].second - 1]};
            map[b] = static_cast<int>(std::find(pairs.begin(), pairs.end(), moved) - pairs.begin());
        }
        bit_maps.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<Digraph> out;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        bool canonical = true;
        for (const auto& map : bit_maps) {
            std::uint32_t permuted = 0;
            for (std::uint32_t rest = mask; rest;) {
                int b = std::countr_zero(rest);
                rest &= rest - 1;
                permuted |= 1u << map[b];
            }
            if (permuted < mask) {
                canonical = false;
                break;
            }
        }
        if (!canonical) continue;
        std::vector<std::pair<int, int>> edges;
        for (int b = 0; b < m; ++b)
            if (mask & (1u << b)) edges.push_back(pairs[b]);
        out.push_back(Digraph(n, edges));
    }
    return out;
}

std::vector<std::vector<bool>> reach_closure(const Digraph& g) {
    int n = g.n();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int v = 1; v <= n; ++v) {
        reach[v - 1][v - 1] = true;
        for (int u : g.in_neighbors(v)) reach[u - 1][v - 1] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

namespace {

// Unique barycentric weights of q over an affinely independent subset, or
// nullopt when the subset is dependent or the system is inconsistent.
std::optional<std::vector<Rational>> barycentric(const Point& q, const std::vector<Point>& subset) {
    std::size_t d = q.dim();
    std::size_t m = subset.size();
    // Rows: d coordinate equations plus the weight-sum row; columns: m weights
    // and the right-hand side.
    std::vector<std::vector<Rational>> a(d + 1, std::vector<Rational>(m + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = subset[j][i];
        a[i][m] = q[i];
    }
    for (std::size_t j = 0; j < m; ++j) a[d][j] = 1;
    a[d][m] = 1;

    std::size_t row = 0;
    std::vector<std::size_t> pivot_of_col(m, SIZE_MAX);
    for (std::size_t col = 0; col < m && row <= d; ++col) {
        std::size_t sel = SIZE_MAX;
        for (std::size_t r = row; r <= d; ++r)
            if (a[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel == SIZE_MAX) return std::nullopt;  // dependent columns
        std::swap(a[row], a[sel]);
        Rational inv = a[row][col];
        for (std::size_t c = col; c <= m; ++c) a[row][c] /= inv;
        for (std::size_t r = 0; r <= d; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational factor = a[r][col];
            for (std::size_t c = col; c <= m; ++c) a[r][c] -= factor * a[row][c];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    for (std::size_t r = row; r <= d; ++r)
        if (a[r][m] != 0) return std::nullopt;  // inconsistent
    std::vector<Rational> alpha(m);
    for (std::size_t col = 0; col < m; ++col) alpha[col] = a[pivot_of_col[col]][m];
    return alpha;
}

}  // namespace

bool hull_membership_oracle(const Point& q, const std::vector<Point>& S) {
    std::size_t d = q.dim();
    std::size_t n = S.size();
    std::size_t max_size = std::min(n, d + 1);
    for (std::size_t size = 1; size <= max_size; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            std::vector<Point> subset;
            for (std::size_t i : idx) subset.push_back(S[i]);
            if (auto alpha = barycentric(q, subset)) {
                bool ok = true;
                for (const Rational& w : *alpha)
                    if (w < 0) {
                        ok = false;
                        break;
                    }
                if (ok) return true;
            }
            // next combination
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

std::vector<std::vector<std::vector<int>>> partitions_into(int count, int parts) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> rgs(count, 0);
    auto emit = [&] {
        int used = *std::max_element(rgs.begin(), rgs.end()) + 1;
        if (used != parts) return;
        std::vector<std::vector<int>> split(parts);
        for (int i = 0; i < count; ++i) split[rgs[i]].push_back(i);
        out.push_back(std::move(split));
    };
    // Restricted growth strings: rgs[0] = 0, rgs[i] <= max(rgs[0..i-1]) + 1.
    auto rec = [&](auto&& self, int i, int max_used) -> void {
        if (i == count) {
            emit();
            return;
        }
        for (int label = 0; label <= std::min(max_used + 1, parts - 1); ++label) {
            rgs[i] = label;
            self(self, i + 1, std::max(max_used, label));
        }
    };
    rec(rec, 1, 0);
    return out;
}

MedianOracle tverberg_1d_oracle(const std::vector<Rational>& values, int f) {
    if (static_cast<int>(values.size()) != 2 * f + 1)
        throw std::invalid_argument("oracle expects exactly 2f+1 values");
    std::vector<Rational> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    MedianOracle res;
    res.median = sorted[f];
    res.median_in_every_hit = true;
    for (const auto& split : partitions_into(2 * f + 1, f + 1)) {
        Rational lo = values[split[0][0]], hi = lo;
        bool first = true;
        for (const auto& part : split) {
            Rational pmin = values[part[0]], pmax = pmin;
            for (int slot : part) {
                pmin = std::min(pmin, values[slot]);
                pmax = std::max(pmax, values[slot]);
            }
            if (first) {
                lo = pmin;
                hi = pmax;
                first = false;
            } else {
                lo = std::max(lo, pmin);
                hi = std::min(hi, pmax);
            }
        }
        if (lo <= hi) {
            res.some_partition_works = true;
            if (!(lo <= res.median && res.median <= hi)) res.median_in_every_hit = false;
        }
    }
    return res;
}

Matrix rand_stochastic(Rng& rng, int size, int den_range) {
    Matrix m(size, std::vector<Rational>(size));
    for (int i = 0; i < size; ++i) {
        long sum = 0;
        std::vector<long> raw(size);
        while (sum == 0) {
            sum = 0;
            for (int j = 0; j < size; ++j) {
                raw[j] = rand_int(rng, 0, den_range);
                sum += raw[j];
            }
        }
        for (int j = 0; j < size; ++j) {
            Rational q(raw[j], sum);
            q.canonicalize();
            m[i][j] = q;
        }
    }
    return m;
}

Matrix rand_patterned_stochastic(Rng& rng, const BoolMatrix& pattern, const Rational& beta) {
    int size = static_cast<int>(pattern.size());
    Matrix m(size, std::vector<Rational>(size, Rational(0)));
    for (int i = 0; i < size; ++i) {
        std::vector<int> cols;
        for (int j = 0; j < size; ++j)
            if (pattern[i][j]) cols.push_back(j);
        if (cols.empty()) throw std::invalid_argument("pattern row has no ones");
        Rational slack = 1 - beta * Rational(static_cast<long>(cols.size()));
        if (slack < 0) throw std::invalid_argument("beta too large for pattern row");
        long sum = 0;
        std::vector<long> raw(cols.size());
        while (sum == 0) {
            sum = 0;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                raw[k] = rand_int(rng, 0, 12);
                sum += raw[k];
            }
        }
        for (std::size_t k = 0; k < cols.size(); ++k) {
            Rational extra(raw[k], sum);
            extra.canonicalize();
            m[i][cols[k]] = beta + slack * extra;
        }
    }
    return m;
}

BigInt naive_block_count(const Rational& q, const Rational& rhs, unsigned long limit) {
    BigInt k = 0;
    Rational cur = 1;
    while (!(cur < rhs)) {
        cur *= q;
        ++k;
        if (k > limit) throw std::runtime_error("naive_block_count limit exceeded");
    }
    return k;
}

}  // namespace bvc::testing
