#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "delo/error.hpp"
#include "delo/predicates.hpp"

namespace delo {

using Coords = std::span<const double>;

/// Highest dimension accepted by PointSet. Hull complexity in the lifted space
/// grows as n^ceil((k+1)/2).
inline constexpr std::size_t kMaxDimension = 6;

/// A point in R^k with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  Coords coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  operator Coords() const noexcept { return coords_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// n >= 1 pairwise distinct points of a common dimension 1 <= k <= 6, stored
/// row-major. Indices 0..n-1 are stable for the lifetime of the set.
class PointSet {
 public:
  /// Validates finiteness, dimension bounds and distinctness; throws
  /// InputError or DuplicatePointError.
  PointSet(std::size_t dim, std::vector<double> coords);
  explicit PointSet(std::span<const Point> points);
  PointSet(std::initializer_list<Point> points);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  Coords operator[](std::size_t i) const noexcept { return Coords(coords_).subspan(i * dim_, dim_); }
  Coords at(std::size_t i) const;
  std::span<const double> data() const noexcept { return coords_; }

  /// Largest pairwise distance (O(n^2)).
  double diameter() const;
  /// Euclidean length of the bounding-box diagonal.
  double bounding_box_diameter() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Sign of det(x_1 - x_0, ..., x_k - x_0) for k+1 points in R^k; ZERO iff the
/// points are affinely dependent.
Sign orient(std::span<const Coords> simplex);
Sign orient(std::initializer_list<Coords> simplex);

/// POSITIVE iff `query` lies strictly inside the circumsphere of the simplex,
/// ZERO on it, NEGATIVE outside. Independent of simplex vertex order. Throws
/// GeneralPositionError(dependent_simplex) for a degenerate simplex.
Sign in_sphere(std::span<const Coords> simplex, Coords query);
Sign in_sphere(std::initializer_list<Coords> simplex, Coords query);

/// (p_1, ..., p_k, sum p_i^2). Throws InputError if the squared norm overflows.
Point lift(Coords p);

double distance(Coords x, Coords y);
double squared_distance(Coords x, Coords y);

struct GeneralPositionReport {
  bool spans = false;          // the points are not contained in a (k-1)-flat
  bool no_cospherical = false; // no k+2 points on a common sphere or hyperplane
  bool exhaustive = false;     // every subset was enumerated
  std::optional<Degeneracy> violation;
  std::vector<std::size_t> violating_subset;

  bool ok() const noexcept { return spans && no_cospherical; }
};

enum class GeneralPositionMode {
  /// Builds the triangulation and reports the first degeneracy it meets.
  lazy,
  /// Enumerates all (k+1)- and (k+2)-subsets; limited to n <= 20.
  exhaustive
};

inline constexpr std::size_t kExhaustiveCheckLimit = 20;

GeneralPositionReport check_general_position(const PointSet& points,
                                             GeneralPositionMode mode = GeneralPositionMode::lazy);

/// Returns `coords` (row-major, dimension `dim`) with every coordinate shifted
/// by an independent uniform offset in [-m, m], m = 1e-9 times the bounding box
/// diameter. Deterministic in `seed`.
std::vector<double> jitter(std::size_t dim, std::span<const double> coords, std::uint64_t seed);

inline constexpr double kJitterScale = 1e-9;

}  // namespace delo
