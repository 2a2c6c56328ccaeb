#include "bvc/linprog.hpp"

#include <stdexcept>

namespace bvc::lp {

namespace {

struct Program {
    std::vector<Row> T;      // m rows of length ncols + 1 (rhs last)
    Row z;                   // reduced-cost row, same length
    std::vector<int> basis;  // basic column per row
    int n = 0;               // original variable count
    int ncols = 0;

    int rows() const { return static_cast<int>(T.size()); }

    void pivot(int row, int col) {
        Row& pr = T[row];
        Rational inv = pr[col];
        for (auto& v : pr) v /= inv;
        auto eliminate = [&](Row& r) {
            const Rational factor = r[col];
            if (factor == 0) return;
            for (int j = 0; j <= ncols; ++j)
                if (pr[j] != 0) r[j] -= factor * pr[j];
        };
        for (int i = 0; i < rows(); ++i)
            if (i != row) eliminate(T[i]);
        eliminate(z);
        basis[row] = col;
    }

    // Bland's rule: entering = smallest improving column below `col_limit`,
    // leaving = min ratio, ties by smallest basic column. Returns false on
    // unboundedness.
    bool iterate(int col_limit) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < col_limit; ++j)
                if (z[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < rows(); ++i) {
                if (T[i][enter] <= 0) continue;
                Rational ratio = T[i][ncols] / T[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    Rational objective() const { return -z[ncols]; }
};

}  // namespace

Result solve_min(const Tableau& A, const Row& b, const Row& c) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("rhs size does not match constraint count");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("constraint row size does not match variable count");

    Program p;
    p.n = n;
    p.ncols = n + m;
    p.T.assign(m, Row(p.ncols + 1, Rational(0)));
    p.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const bool neg = b[i] < 0;
        for (int j = 0; j < n; ++j) p.T[i][j] = neg ? Rational(-A[i][j]) : A[i][j];
        p.T[i][n + i] = 1;
        p.T[i][p.ncols] = neg ? Rational(-b[i]) : b[i];
        p.basis[i] = n + i;
    }

    // Phase 1: minimize the artificial sum. Price out the artificial basis.
    p.z.assign(p.ncols + 1, Rational(0));
    for (int j = 0; j <= p.ncols; ++j) {
        if (j >= n && j < p.ncols) continue;  // artificial reduced costs start at 0
        Rational s = 0;
        for (int i = 0; i < m; ++i) s += p.T[i][j];
        p.z[j] = -s;
    }
    p.iterate(p.ncols);  // cannot be unbounded: objective >= 0
    if (p.objective() != 0) return {Status::Infeasible, Rational(0), {}};

    // Drive leftover artificials out of the basis; drop redundant rows.
    for (int i = 0; i < p.rows();) {
        if (p.basis[i] < n) {
            ++i;
            continue;
        }
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (p.T[i][j] != 0) {
                col = j;
                break;
            }
        if (col >= 0) {
            p.pivot(i, col);  // degenerate pivot: the row's rhs is 0 here
            ++i;
        } else {
            p.T.erase(p.T.begin() + i);
            p.basis.erase(p.basis.begin() + i);
        }
    }

    // Phase 2 with the real costs.
    p.z.assign(p.ncols + 1, Rational(0));
    for (int j = 0; j < n; ++j) p.z[j] = c[j];
    for (int i = 0; i < p.rows(); ++i) {
        const Rational cb = c[p.basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j <= p.ncols; ++j)
            if (p.T[i][j] != 0) p.z[j] -= cb * p.T[i][j];
    }
    if (!p.iterate(n)) return {Status::Unbounded, Rational(0), {}};

    Result out;
    out.status = Status::Optimal;
    out.objective = p.objective();
    out.x.assign(n, Rational(0));
    for (int i = 0; i < p.rows(); ++i)
        if (p.basis[i] < n) out.x[p.basis[i]] = p.T[i][p.ncols];
    return out;
}

std::optional<std::vector<Rational>> feasible_point(const Tableau& A, const Row& b) {
    Row c(A.empty() ? 0 : A.front().size(), Rational(0));
    Result r = solve_min(A, b, c);
    if (r.status != Status::Optimal) return std::nullopt;
    return r.x;
}

}  // namespace bvc::lp
