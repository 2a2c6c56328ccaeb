#include "bvc/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "bvc/geometry.hpp"

namespace bvc {

namespace {

void require_square(const Matrix& m) {
    if (m.empty()) throw std::invalid_argument("matrix must be non-empty");
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("matrix must be square");
}

}  // namespace

void validate_row_stochastic(const Matrix& m) {
    require_square(m);
    for (const auto& row : m) {
        Rational sum(0);
        for (const Rational& x : row) {
            if (x < 0) throw std::invalid_argument("negative matrix entry");
            sum += x;
        }
        if (sum != 1) throw std::invalid_argument("row does not sum to 1");
    }
}

Rational delta(const Matrix& m) {
    require_square(m);
    Rational out(0);
    for (std::size_t j = 0; j < m.size(); ++j) {
        Rational lo = m[0][j];
        Rational hi = lo;
        for (std::size_t i = 1; i < m.size(); ++i) {
            lo = std::min(lo, m[i][j]);
            hi = std::max(hi, m[i][j]);
        }
        Rational gap = hi - lo;
        out = std::max(out, gap);
    }
    return out;
}

Rational lambda(const Matrix& m) {
    require_square(m);
    Rational min_overlap(1);
    bool first = true;
    for (std::size_t i1 = 0; i1 < m.size(); ++i1)
        for (std::size_t i2 = i1 + 1; i2 < m.size(); ++i2) {
            Rational overlap(0);
            for (std::size_t j = 0; j < m.size(); ++j)
                overlap += std::min(m[i1][j], m[i2][j]);
            if (first || overlap < min_overlap) {
                min_overlap = overlap;
                first = false;
            }
        }
    if (first) return Rational(0);  // single row: no pair to contract
    return 1 - min_overlap;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require_square(a);
    require_square(b);
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    std::size_t n = a.size();
    Matrix out(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Matrix backward_product(const std::vector<Matrix>& factors) {
    if (factors.empty()) throw std::invalid_argument("empty product");
    Matrix out = factors.front();
    for (std::size_t t = 1; t < factors.size(); ++t)
        out = mat_mul(factors[t], out);
    return out;
}

BoolMatrix connectivity_matrix(const ReducedGraph& rg) {
    std::size_t m = rg.survivors.size();
    BoolMatrix h(m, std::vector<std::uint8_t>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        h[i][i] = 1;
        for (int from : rg.in_neighbors[i]) {
            int slot = rg.survivor_slot(from);
            if (slot >= 0) h[i][slot] = 1;
        }
    }
    return h;
}

BoolMatrix bool_mat_mul(const BoolMatrix& a, const BoolMatrix& b) {
    std::size_t n = a.size();
    BoolMatrix out(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (b[k][j]) out[i][j] = 1;
        }
    return out;
}

BoolMatrix bool_mat_pow(const BoolMatrix& m, std::uint64_t k) {
    std::size_t n = m.size();
    BoolMatrix out(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    BoolMatrix base = m;
    while (k > 0) {
        if (k & 1) out = bool_mat_mul(out, base);
        k >>= 1;
        if (k > 0) base = bool_mat_mul(base, base);
    }
    return out;
}

std::optional<int> nonzero_column_power(const BoolMatrix& m, std::uint64_t k) {
    BoolMatrix p = bool_mat_pow(m, k);
    for (std::size_t j = 0; j < p.size(); ++j) {
        bool all = true;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (!p[i][j]) {
                all = false;
                break;
            }
        if (all) return static_cast<int>(j);
    }
    return std::nullopt;
}

ValidityReport verify_validity(const ExecutionTrace& trace, const Scenario& sc) {
    std::vector<Point> hull;
    for (const auto& [v, p] : trace.initial_states) hull.push_back(p);

    ValidityReport report;
    for (std::uint64_t t = 0; t <= trace.rounds.size(); ++t) {
        for (const auto& [v, p] : trace.states_after(t)) {
            ++report.memberships_checked;
            if (!hull_membership(p, hull)) {
                report.pass = false;
                report.violations.push_back({t, v});
            }
        }
    }
    return report;
}

AgreementReport verify_epsilon_agreement(const ExecutionTrace& trace, const Rational& epsilon) {
    AgreementReport report;
    report.final_spread = trace.spread_after(trace.rounds.size());
    for (const Rational& s : report.final_spread)
        if (s >= epsilon) report.pass = false;
    return report;
}

}  // namespace bvc
