#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bvc/graph.hpp"
#include "bvc/protocol.hpp"
#include "bvc/rational.hpp"

namespace bvc {

using Matrix = std::vector<std::vector<Rational>>;

// Throws std::invalid_argument unless every row is non-negative and sums to 1.
void validate_row_stochastic(const Matrix& m);

// Max over columns of (column max - column min).
Rational delta(const Matrix& m);

// 1 - min over row pairs of sum_j min(m[i1][j], m[i2][j]).
Rational lambda(const Matrix& m);

Matrix mat_mul(const Matrix& a, const Matrix& b);

// factors[0] is the earliest iteration; the result is
// factors.back() * ... * factors[0] (states evolve by left multiplication).
Matrix backward_product(const std::vector<Matrix>& factors);

using BoolMatrix = std::vector<std::vector<std::uint8_t>>;

// Square 0/1 matrix over the survivors of a reduced graph, in survivor order:
// entry (i, j) is 1 iff i == j or the reduced graph keeps the link
// (survivor j -> survivor i). The diagonal is always 1.
BoolMatrix connectivity_matrix(const ReducedGraph& rg);

BoolMatrix bool_mat_mul(const BoolMatrix& a, const BoolMatrix& b);
BoolMatrix bool_mat_pow(const BoolMatrix& m, std::uint64_t k);

// Smallest index of a column of m^k with no zero entry, or nullopt.
std::optional<int> nonzero_column_power(const BoolMatrix& m, std::uint64_t k);

struct ValidityViolation {
    std::uint64_t t = 0;
    int node = 0;
};

struct ValidityReport {
    bool pass = true;
    std::vector<ValidityViolation> violations;
    std::uint64_t memberships_checked = 0;
};

// Exact hull-membership check of every fault-free state at every iteration
// against the multiset of fault-free inputs.
ValidityReport verify_validity(const ExecutionTrace& trace, const Scenario& sc);

struct AgreementReport {
    bool pass = true;
    std::vector<Rational> final_spread;  // per coordinate
};

// Strict elementwise comparison of the final fault-free spread against eps.
AgreementReport verify_epsilon_agreement(const ExecutionTrace& trace, const Rational& epsilon);

}  // namespace bvc
