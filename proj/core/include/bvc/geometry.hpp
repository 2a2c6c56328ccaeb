#pragma once

#include <optional>
#include <vector>

#include "bvc/point.hpp"

namespace bvc {

// All queries are exact; sets are multisets (duplicates allowed and
// meaningful). Every point of one call must share the same dimension.

// True iff q lies in the convex hull of S. Membership of a point of S itself
// always holds.
bool hull_membership(const Point& q, const std::vector<Point>& S);

// One exact convex-combination weight vector representing q over S, or
// nullopt when q is outside the hull. Deterministic: the weight vector is the
// lexicographically minimal one (weights minimized slot by slot).
std::optional<std::vector<Rational>> convex_weights(const Point& q, const std::vector<Point>& S);

// A common point of the convex hulls of all parts, or nullopt when the
// intersection is empty. Deterministic: returns the lexicographically minimal
// coordinate vector of the intersection, found by sequential coordinate
// minimization.
std::optional<Point> hulls_common_point(const std::vector<std::vector<Point>>& parts);

struct TverbergResult {
    Point point;
    std::vector<std::vector<int>> part_slots;    // slot indices into Y, each sorted
    std::vector<std::vector<Point>> parts;       // the corresponding multisets
};

// Splits the multiset Y (|Y| >= (d+1)f+1 required) into f+1 non-empty parts
// whose hulls share a point, and returns that point. Partitions are scanned in
// canonical order (restricted-growth strings, lexicographic; equivalently
// parts ordered by smallest contained slot) and the first valid one is
// returned, with the common point from hulls_common_point. For f = 1 and
// |Y| = d+2 in general position the unique split is found directly from the
// affine dependence of the points; any degeneracy falls back to the canonical
// scan, which returns the identical result.
TverbergResult tverberg_point(const std::vector<Point>& Y, int f);

}  // namespace bvc
