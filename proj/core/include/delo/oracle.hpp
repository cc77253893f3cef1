#pragma once

// Slow reference computations of Delaunay adjacency, independent of the
// lifted-hull construction: exhaustive empty-circumsphere enumeration, and a
// per-pair linear feasibility problem on the perpendicular bisector.

#include <cstddef>
#include <optional>
#include <vector>

#include "delo/geometry.hpp"
#include "delo/triangulation.hpp"

namespace delo::oracle {

inline constexpr std::size_t kBruteforceLimit = 40;
inline constexpr std::size_t kWitnessLimit = 200;
/// Relative tolerance (times the point-set diameter) for witness checks.
inline constexpr double kWitnessTolerance = 1e-9;

/// Every (k+1)-subset whose circumsphere contains no other point strictly
/// inside, returned as a graph (with its simplices). Affinely dependent
/// subsets are skipped. Requires k+1 <= n <= 40; throws GeneralPositionError
/// (cospherical) on an in-sphere ZERO.
DelaunayGraph delaunay_bruteforce(const PointSet& points);

struct WitnessResult {
  bool adjacent = false;
  /// Point on the bisector of (i, j) no closer to any third point; present
  /// when adjacent.
  std::optional<Point> witness;
  /// Largest distance (in units of the diameter) by which the witness clears
  /// every other bisector constraint; negative when not adjacent. Capped at 1.
  double margin = 0.0;
};

/// Decides whether the Voronoi cells of points i and j meet by solving a
/// linear program over their bisector hyperplane. Requires n <= 200.
WitnessResult adjacent_witness(const PointSet& points, std::size_t i, std::size_t j);

/// True when p is equidistant from x_i and x_j and no other point is closer to
/// p than x_i, all within kWitnessTolerance times the diameter.
bool verify_witness(const PointSet& points, std::size_t i, std::size_t j, Coords p);

/// All pairs accepted by adjacent_witness, sorted, with their lengths.
std::vector<Edge> witness_edges(const PointSet& points);

/// Center of the circumsphere of k+1 affinely independent points in R^k.
/// Throws GeneralPositionError(dependent_simplex) for a degenerate simplex and
/// GeometryError when the solve fails its residual check.
Point circumcenter(std::span<const Coords> simplex);
Point circumcenter(std::initializer_list<Coords> simplex);

/// With a the midpoint of x and y: d(x,p)^2 == d(x,a)^2 + d(a,p)^2 within
/// 1e-9 relative. Throws InputError unless p is equidistant from x and y.
bool bisector_pythagoras_check(Coords x, Coords y, Coords p);

}  // namespace delo::oracle
