#pragma once

#include <optional>
#include <vector>

#include "bvc/rational.hpp"

namespace bvc::lp {

using Row = std::vector<Rational>;
using Tableau = std::vector<Row>;

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rational objective;
    std::vector<Rational> x;
};

// Minimizes c.x subject to A x = b, x >= 0, with exact rational arithmetic.
// Two-phase simplex with Bland's rule: deterministic and cycle-free. Intended
// for the small systems produced by convex-hull queries.
Result solve_min(const Tableau& A, const Row& b, const Row& c);

// Feasibility only (c = 0). Returns a basic feasible point or nullopt.
std::optional<std::vector<Rational>> feasible_point(const Tableau& A, const Row& b);

}  // namespace bvc::lp
