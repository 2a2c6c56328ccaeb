#include "bvc/linprog.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bvc;
using namespace bvc::lp;

TEST_SUITE("linprog") {

TEST_CASE("minimize over a segment") {
    // min x1 s.t. x1 + x2 = 1, x >= 0.
    Result r = solve_min({{1, 1}}, {1}, {1, 0});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == 0);
    CHECK(r.x[0] == 0);
    CHECK(r.x[1] == 1);
}

TEST_CASE("infeasible system") {
    // x1 = -1 has no solution with x1 >= 0.
    Result r = solve_min({{1}}, {-1}, {0});
    CHECK(r.status == Status::Infeasible);
    CHECK_FALSE(feasible_point({{1}}, {-1}).has_value());
}

TEST_CASE("unbounded objective") {
    // min -x1 s.t. x1 - x2 = 0: increase both forever.
    Result r = solve_min({{1, -1}}, {0}, {-1, 0});
    CHECK(r.status == Status::Unbounded);
}

TEST_CASE("redundant equality rows") {
    Result r = solve_min({{1, 1}, {2, 2}}, {1, 2}, {0, 1});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == 0);
    CHECK(r.x[0] == 1);
}

TEST_CASE("exact rational optimum") {
    // min x1 + x2 s.t. 2x1 + 3x2 = 1: put all weight on the cheaper column.
    Result r = solve_min({{2, 3}}, {1}, {1, 1});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == Rational(1, 3));
    CHECK(r.x[1] == Rational(1, 3));
}

TEST_CASE("feasible point satisfies the system") {
    bvc::testing::Rng rng(23);
    int found = 0;
    for (int it = 0; it < 60; ++it) {
        int rows = bvc::testing::rand_int(rng, 1, 3);
        int cols = bvc::testing::rand_int(rng, 1, 5);
        Tableau a(rows, Row(cols));
        for (auto& row : a)
            for (auto& entry : row) entry = bvc::testing::rand_int(rng, -3, 3);
        // Right-hand side from a known non-negative solution, so the system
        // is feasible by construction.
        Row x0(cols);
        for (auto& v : x0) v = bvc::testing::rand_int(rng, 0, 3);
        Row b(rows, Rational(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) b[i] += a[i][j] * x0[j];
        auto x = feasible_point(a, b);
        REQUIRE(x.has_value());
        ++found;
        for (int i = 0; i < rows; ++i) {
            Rational lhs = 0;
            for (int j = 0; j < cols; ++j) {
                CHECK((*x)[j] >= 0);
                lhs += a[i][j] * (*x)[j];
            }
            CHECK(lhs == b[i]);
        }
    }
    CHECK(found == 60);
}

TEST_CASE("determinism") {
    Tableau a = {{1, 2, 1, 0}, {3, 1, 0, 1}};
    Row b = {4, 5};
    Row c = {1, 1, 0, 0};
    Result r1 = solve_min(a, b, c);
    Result r2 = solve_min(a, b, c);
    REQUIRE(r1.status == Status::Optimal);
    CHECK(r1.objective == r2.objective);
    CHECK(r1.x == r2.x);
}

}  // TEST_SUITE
