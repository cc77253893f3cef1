#include "delo/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lifted_hull.hpp"

namespace delo {

DelaunayGraph::DelaunayGraph(std::size_t n, std::size_t dim, std::vector<Edge> edges,
                             std::vector<std::vector<std::uint32_t>> simplices)
    : dim_(dim), edges_(std::move(edges)), simplices_(std::move(simplices)) {
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[e.i];
    ++degree[e.j];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (i, j), so each row is filled in ascending order:
  // smaller neighbors arrive via e.j == row first, larger via e.i == row.
  for (const Edge& e : edges_) adjacency_[fill[e.j]++] = {e.i, e.length};
  for (const Edge& e : edges_) adjacency_[fill[e.i]++] = {e.j, e.length};
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
  }
}

DelaunayGraph DelaunayGraph::from_simplices(const PointSet& points,
                                            std::vector<std::vector<std::uint32_t>> simplices) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& s : simplices) {
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        pairs.emplace_back(std::min(s[a], s[b]), std::max(s[a], s[b]));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) edges.push_back({i, j, distance(points[i], points[j])});
  return DelaunayGraph(points.size(), points.dim(), std::move(edges), std::move(simplices));
}

DelaunayGraph DelaunayGraph::complete(const PointSet& points) {
  std::vector<Edge> edges;
  const auto n = static_cast<std::uint32_t>(points.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({i, j, distance(points[i], points[j])});
  }
  std::vector<std::vector<std::uint32_t>> simplices;
  if (points.size() == points.dim() + 1) {
    simplices.emplace_back(points.size());
    std::iota(simplices.back().begin(), simplices.back().end(), 0U);
  }
  return DelaunayGraph(points.size(), points.dim(), std::move(edges), std::move(simplices));
}

DelaunayGraph DelaunayGraph::from_edges(std::size_t n, std::size_t dim, std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.i == e.j) throw InputError("edge list: self-loop at " + std::to_string(e.i));
    if (e.i >= n || e.j >= n) throw InputError("edge list: index out of range");
    if (!(std::isfinite(e.length) && e.length > 0.0)) {
      throw InputError("edge list: lengths must be finite and positive");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t t = 1; t < edges.size(); ++t) {
    if (edges[t].i == edges[t - 1].i && edges[t].j == edges[t - 1].j) {
      throw InputError("edge list: repeated edge " + std::to_string(edges[t].i) + "," +
                       std::to_string(edges[t].j));
    }
  }
  return DelaunayGraph(n, dim, std::move(edges), {});
}

bool DelaunayGraph::adjacent(std::size_t i, std::size_t j) const noexcept {
  return edge_length(i, j).has_value();
}

std::optional<double> DelaunayGraph::edge_length(std::size_t i, std::size_t j) const noexcept {
  if (i >= size() || j >= size()) return std::nullopt;
  const auto row = neighbors(i);
  const auto it = std::lower_bound(row.begin(), row.end(), j,
                                   [](const Neighbor& nb, std::size_t v) { return nb.index < v; });
  if (it == row.end() || it->index != j) return std::nullopt;
  return it->length;
}

DelaunayGraph delaunay(const PointSet& points, const TriangulationOptions& options) {
  const std::size_t n = points.size();
  const std::size_t k = points.dim();
  if (n < 2) throw InputError("triangulation needs at least 2 points");
  if (n <= k + 1) {
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    const auto basis = detail::affine_basis(points, order, false, n);
    if (basis.size() < n) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), std::size_t{0});
      throw GeneralPositionError(Degeneracy::not_spanning, all);
    }
    return DelaunayGraph::complete(points);
  }
  return DelaunayGraph::from_simplices(points,
                                       detail::lower_hull_simplices(points, options.insertion_seed));
}

std::vector<Neighbor> incident_edges(const DelaunayGraph& graph, std::size_t i) {
  if (i >= graph.size()) {
    throw InputError("point index " + std::to_string(i) + " out of range [0, " +
                     std::to_string(graph.size()) + ")");
  }
  const auto row = graph.neighbors(i);
  return {row.begin(), row.end()};
}

double max_edge_length(const DelaunayGraph& graph) {
  if (graph.size() < 2) throw InputError("max_edge_length needs at least 2 points");
  double best = 0.0;
  for (const Edge& e : graph.edges()) best = std::max(best, e.length);
  return best;
}

}  // namespace delo
