#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "delo/geometry.hpp"

namespace delo::detail {

using Simplex = std::vector<std::uint32_t>;

inline constexpr std::uint64_t kDefaultHullSeed = 0x44454C4FULL;

/// Greedy maximal affinely independent subset of `points`, scanned in `order`,
/// computed in exact arithmetic. With `lifted`, points are taken as
/// (x, |x|^2) in R^{k+1}. Stops once `limit` points have been collected.
std::vector<std::size_t> affine_basis(const PointSet& points,
                                      std::span<const std::uint32_t> order, bool lifted,
                                      std::size_t limit);

/// Delaunay simplices (sorted vertex tuples, sorted list) of a point set with
/// n >= k+2, from the lower facets of the convex hull of the lifted points.
/// The hull is built by randomized incremental insertion with conflict lists;
/// `seed` fixes the insertion order, which does not affect the result.
/// Throws GeneralPositionError when a degeneracy is detected.
std::vector<Simplex> lower_hull_simplices(const PointSet& points, std::uint64_t seed);

/// Classifies the degeneracy of k+2 points whose lifted images are
/// co-hyperplanar: cospherical if they span R^k, cohyperplanar otherwise.
Degeneracy classify_lifted_degeneracy(const PointSet& points,
                                      std::span<const std::size_t> subset);

}  // namespace delo::detail
