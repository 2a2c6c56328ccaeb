#pragma once

#include <random>
#include <vector>

#include "bvc/analysis.hpp"
#include "bvc/graph.hpp"
#include "bvc/point.hpp"
#include "bvc/rational.hpp"

// Test-side helpers and independent oracles. Everything here is written
// against the definitions directly (brute force, small scale) so library
// results can be checked without reusing library code paths.
namespace bvc::testing {

using Rng = std::mt19937_64;

int rand_int(Rng& rng, int lo, int hi);

// Numerator uniform in [-num_range, num_range], denominator in [1, den_range].
Rational rand_rational(Rng& rng, int num_range, int den_range);

Point rand_point(Rng& rng, int d, int num_range, int den_range);

// Each ordered pair is an edge independently with probability percent/100.
Digraph rand_digraph(Rng& rng, int n, int percent);

// One representative per isomorphism class of simple digraphs on n vertices:
// the lexicographically minimal edge bitmask over all vertex relabelings.
// Class counts for n = 2..5 are 3, 16, 218, 9608.
std::vector<Digraph> nonisomorphic_digraphs(int n);

// reach[i-1][j-1] is true iff a directed path i -> j exists (i reaches
// itself vacuously). Brute-force transitive closure.
std::vector<std::vector<bool>> reach_closure(const Digraph& g);

// Caratheodory oracle: q lies in hull(S) iff some affinely independent
// subset of size <= d+1 yields non-negative barycentric weights for q,
// decided per subset by exact Gaussian elimination.
bool hull_membership_oracle(const Point& q, const std::vector<Point>& S);

// All partitions of slots {0..count-1} into exactly `parts` non-empty parts,
// in restricted-growth-string order; each part sorted, parts ordered by
// smallest member.
std::vector<std::vector<std::vector<int>>> partitions_into(int count, int parts);

struct MedianOracle {
    bool some_partition_works = false;   // some split's intervals intersect
    bool median_in_every_hit = false;    // every intersecting split contains it
    Rational median;                     // the (f+1)-th smallest value
};

// d = 1 oracle: scan every split of 2f+1 values into f+1 non-empty parts and
// intersect the parts' intervals.
MedianOracle tverberg_1d_oracle(const std::vector<Rational>& values, int f);

// Random row-stochastic matrix; row entries are k/sum with k <= den_range.
Matrix rand_stochastic(Rng& rng, int size, int den_range);

// Row-stochastic matrix with entry >= beta wherever pattern[i][j] == 1 and
// exactly 0 elsewhere. Every pattern row must be non-empty and satisfy
// beta * (row ones) <= 1.
Matrix rand_patterned_stochastic(Rng& rng, const BoolMatrix& pattern, const Rational& beta);

// Loop oracle for the certified block-count search: smallest k >= 0 with
// q^k < rhs, by direct exact exponentiation. Throws if k would exceed limit.
BigInt naive_block_count(const Rational& q, const Rational& rhs, unsigned long limit);

}  // namespace bvc::testing
