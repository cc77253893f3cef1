#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "delo/geometry.hpp"

namespace delo {

/// Undirected edge {i, j} with i < j and its Euclidean length.
struct Edge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double length = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::uint32_t index = 0;
  double length = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Delaunay triangulation of a point set as an undirected graph with cached
/// edge lengths. Immutable once built.
///
/// Adjacency is stored in compressed rows: neighbors(i) is sorted by index.
/// simplices() holds the Delaunay cells as sorted (k+1)-tuples; it is empty
/// when the graph was rebuilt from an edge list or when n < k+1.
class DelaunayGraph {
 public:
  /// Graph spanned by the 1-faces of `simplices`, lengths measured on `points`.
  static DelaunayGraph from_simplices(const PointSet& points,
                                      std::vector<std::vector<std::uint32_t>> simplices);
  /// Complete graph on all points.
  static DelaunayGraph complete(const PointSet& points);
  /// Graph from an explicit edge list (e.g. a previously exported
  /// triangulation). Rejects self-loops, out-of-range indices, repeated edges
  /// and non-positive lengths.
  static DelaunayGraph from_edges(std::size_t n, std::size_t dim, std::vector<Edge> edges);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const Neighbor> neighbors(std::size_t i) const noexcept {
    return std::span(adjacency_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const std::vector<std::vector<std::uint32_t>>& simplices() const noexcept { return simplices_; }

  bool adjacent(std::size_t i, std::size_t j) const noexcept;
  std::optional<double> edge_length(std::size_t i, std::size_t j) const noexcept;

 private:
  DelaunayGraph(std::size_t n, std::size_t dim, std::vector<Edge> edges,
                std::vector<std::vector<std::uint32_t>> simplices);

  std::size_t dim_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::vector<std::vector<std::uint32_t>> simplices_;
};

struct TriangulationOptions {
  /// Fixes the randomized insertion order. The triangulation is unique for
  /// points in general position, so the seed only affects running time.
  std::uint64_t insertion_seed = 0x44454C4FULL;
};

/// Delaunay triangulation of n >= 2 points. For n <= k+1 the points must be
/// affinely independent and the result is the complete graph. Throws
/// InputError for n < 2 and GeneralPositionError for degenerate input.
DelaunayGraph delaunay(const PointSet& points, const TriangulationOptions& options = {});

/// E(x_i): neighbors of point i with the cached edge lengths.
std::vector<Neighbor> incident_edges(const DelaunayGraph& graph, std::size_t i);

/// Longest edge of the graph; requires n >= 2.
double max_edge_length(const DelaunayGraph& graph);

}  // namespace delo
