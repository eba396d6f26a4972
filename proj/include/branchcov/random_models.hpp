#pragma once

#include "covers.hpp"
#include "continuation.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace branchcov {

using Rng = std::mt19937_64;

/// Grid point with coordinates in multiples of 1/8 inside [-extent, extent]^2,
/// exact in binary so that shared branch points compare equal.
Complex random_grid_point(Rng &rng, double extent);
std::vector<Complex> random_distinct_points(Rng &rng, std::size_t count, double extent);

Permutation random_permutation(Rng &rng, std::size_t n);
Permutation random_nonidentity_permutation(Rng &rng, std::size_t n);
/// Permutation whose cycle lengths are all multiples of `factor` (factor | n).
Permutation random_permutation_with_cycle_factor(Rng &rng, std::size_t n, std::size_t factor);

/// Connected cover of the given degree over `points` (canonical order);
/// degree 1 yields the trivial cover with no branch points.
BranchedCoverSpec random_connected_cover(Rng &rng, std::size_t degree,
                                         const std::vector<Complex> &points);

/// Two connected covers of degree <= max_degree over subsets of a shared
/// pool of at most max_points points.
std::pair<BranchedCoverSpec, BranchedCoverSpec>
random_cover_pair(Rng &rng, std::size_t max_degree, std::size_t max_points);

/// A pair where the second branch set lies inside the first and every
/// fiber-product point over it is singular.
std::pair<BranchedCoverSpec, BranchedCoverSpec>
random_singular_pair(Rng &rng, std::size_t max_degree, std::size_t max_points);

/// Points on {z2^2 = f(z1), z3^2 = g(z1)}; roughly one in five lies over a zero of g.
std::vector<TriplePoint> random_triples(Rng &rng, const CurvePair &pair, std::size_t count,
                                        double extent);

} // namespace branchcov
