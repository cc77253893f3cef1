#include "lifted_hull.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>

#include "delo/predicates.hpp"
#include "delo/random.hpp"

namespace delo::detail {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
constexpr std::size_t kMaxVertices = kMaxDimension + 1;

// Exact echelon basis of difference vectors, used to grow affine bases.
class ExactSpan {
 public:
  explicit ExactSpan(std::size_t width) : width_(width) {}

  // Reduces v against the basis; keeps it and returns true if independent.
  bool try_add(std::vector<mpq_class> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = pivots_[r];
      if (sgn(v[c]) == 0) continue;
      const mpq_class factor = v[c] / rows_[r][c];
      for (std::size_t j = 0; j < width_; ++j) v[j] -= factor * rows_[r][j];
    }
    for (std::size_t c = 0; c < width_; ++c) {
      if (sgn(v[c]) != 0) {
        pivots_.push_back(c);
        rows_.push_back(std::move(v));
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t width_;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<mpq_class> exact_point(Coords p, bool lifted) {
  std::vector<mpq_class> v;
  v.reserve(p.size() + 1);
  mpq_class norm = 0;
  for (double x : p) {
    v.emplace_back(x);
    norm += v.back() * v.back();
  }
  if (lifted) v.push_back(norm);
  return v;
}

struct Facet {
  std::array<std::uint32_t, kMaxVertices> vertex{};
  std::array<std::uint32_t, kMaxVertices> neighbor{};
  predicates::Hyperplane plane;
  std::vector<std::uint32_t> conflicts;
  std::uint32_t visible_stamp = 0;
  bool alive = true;
};

struct RidgeEntry {
  std::array<std::uint32_t, kMaxVertices> key{};
  std::uint32_t facet;
  std::uint32_t slot;
};

class LiftedHull {
 public:
  LiftedHull(const PointSet& points, std::uint64_t seed)
      : points_(points),
        dim_(points.dim()),
        rank_(points.dim() + 1),
        lift_(points.size()),
        point_conflicts_(points.size()),
        candidate_stamp_(points.size(), 0) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      double s = 0.0;
      for (double x : points[i]) s += x * x;
      lift_[i] = s;
    }
    build(seed);
  }

  std::vector<Simplex> lower_simplices() const {
    std::vector<Simplex> out;
    std::array<predicates::Row, kMaxVertices> rows{};
    for (const Facet& f : facets_) {
      if (!f.alive) continue;
      for (std::size_t i = 0; i < rank_; ++i) rows[i] = points_[f.vertex[i]];
      // The lifted-column cofactor is minus the projected orientation, so a
      // downward outer normal means a positive projected orientation.
      if (predicates::orientation(std::span(rows.data(), rank_), false) != Sign::positive) continue;
      Simplex s(f.vertex.begin(), f.vertex.begin() + rank_);
      std::sort(s.begin(), s.end());
      out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  // Orientation of (facet vertices, q) in the lifted space; POSITIVE means q
  // lies beyond the facet.
  Sign side(const Facet& f, std::uint32_t q) const {
    if (auto s = f.plane.filtered_side(points_[q], lift_[q])) return *s;
    std::array<predicates::Row, kMaxVertices + 1> rows{};
    for (std::size_t i = 0; i < rank_; ++i) rows[i] = points_[f.vertex[i]];
    rows[rank_] = points_[q];
    return predicates::orientation_exact(std::span(rows.data(), rank_ + 1), true);
  }

  void make_plane(Facet& f) const {
    std::array<predicates::Row, kMaxVertices> rows{};
    for (std::size_t i = 0; i < rank_; ++i) rows[i] = points_[f.vertex[i]];
    f.plane = predicates::Hyperplane(std::span(rows.data(), rank_), true);
  }

  [[noreturn]] void degenerate(const Facet& f, std::uint32_t q) const {
    std::vector<std::size_t> subset(f.vertex.begin(), f.vertex.begin() + rank_);
    subset.push_back(q);
    std::sort(subset.begin(), subset.end());
    throw GeneralPositionError(classify_lifted_degeneracy(points_, subset), subset);
  }

  void add_conflict(std::uint32_t facet, std::uint32_t q) {
    facets_[facet].conflicts.push_back(q);
    point_conflicts_[q].push_back(facet);
  }

  void build(std::uint64_t seed) {
    const auto n = static_cast<std::uint32_t>(points_.size());
    const std::vector<std::uint32_t> order = random_permutation(n, seed);

    const std::vector<std::size_t> basis = affine_basis(points_, order, true, rank_ + 1);
    if (basis.size() < rank_ + 1) {
      const std::vector<std::size_t> flat = affine_basis(points_, order, false, dim_ + 1);
      if (flat.size() < dim_ + 1) {
        std::vector<std::size_t> subset = flat;
        std::sort(subset.begin(), subset.end());
        throw GeneralPositionError(Degeneracy::not_spanning, subset);
      }
      // Every point lies on the sphere through the lifted basis.
      std::vector<std::size_t> subset = basis;
      for (std::uint32_t p : order) {
        if (std::find(basis.begin(), basis.end(), p) == basis.end()) {
          subset.push_back(p);
          break;
        }
      }
      std::sort(subset.begin(), subset.end());
      throw GeneralPositionError(classify_lifted_degeneracy(points_, subset), subset);
    }

    create_initial_simplex(basis);

    std::vector<char> inserted(n, 0);
    for (std::size_t b : basis) inserted[b] = 1;
    for (std::uint32_t q : order) {
      if (inserted[q]) continue;
      for (std::uint32_t fi = 0; fi < facets_.size(); ++fi) {
        const Sign s = side(facets_[fi], q);
        if (s == Sign::zero) degenerate(facets_[fi], q);
        if (s == Sign::positive) add_conflict(fi, q);
      }
    }
    for (std::uint32_t p : order) {
      if (inserted[p]) continue;
      insert(p);
      inserted[p] = 1;
    }
    verify_local_convexity();
  }

  void create_initial_simplex(const std::vector<std::size_t>& basis) {
    const std::size_t count = rank_ + 1;
    for (std::size_t omit = 0; omit < count; ++omit) {
      Facet f;
      std::array<std::size_t, kMaxVertices> source{};
      std::size_t slot = 0;
      for (std::size_t i = 0; i < count; ++i) {
        if (i == omit) continue;
        source[slot] = i;
        f.vertex[slot] = static_cast<std::uint32_t>(basis[i]);
        ++slot;
      }
      std::array<predicates::Row, kMaxVertices + 1> rows{};
      for (std::size_t i = 0; i < rank_; ++i) rows[i] = points_[f.vertex[i]];
      rows[rank_] = points_[basis[omit]];
      const Sign s = predicates::orientation(std::span(rows.data(), rank_ + 1), true);
      if (s == Sign::zero) throw std::logic_error("lifted hull: dependent initial simplex");
      if (s == Sign::positive) {
        std::swap(f.vertex[0], f.vertex[1]);
        std::swap(source[0], source[1]);
      }
      // Across the ridge opposite vertex basis[source[j]] lies the facet that
      // omits that vertex.
      for (std::size_t j = 0; j < rank_; ++j) f.neighbor[j] = static_cast<std::uint32_t>(source[j]);
      make_plane(f);
      facets_.push_back(std::move(f));
    }
  }

  void insert(std::uint32_t p) {
    const std::uint32_t stamp = ++visible_stamp_;
    std::vector<std::uint32_t> visible;
    for (std::uint32_t fi : point_conflicts_[p]) {
      if (facets_[fi].alive && facets_[fi].visible_stamp != stamp) {
        facets_[fi].visible_stamp = stamp;
        visible.push_back(fi);
      }
    }
    std::vector<std::uint32_t>().swap(point_conflicts_[p]);
    if (visible.empty()) throw std::logic_error("lifted hull: inserted point is not extreme");

    const std::size_t first_new = facets_.size();
    for (std::uint32_t vi : visible) {
      for (std::size_t slot = 0; slot < rank_; ++slot) {
        const std::uint32_t gi = facets_[vi].neighbor[slot];
        if (facets_[gi].visible_stamp == stamp) continue;
        // Horizon ridge: facet gi stays on the hull.
        const Sign horizon = side(facets_[gi], p);
        if (horizon == Sign::zero) degenerate(facets_[gi], p);
        if (horizon == Sign::positive) throw std::logic_error("lifted hull: inconsistent visibility");

        Facet h;
        h.vertex = facets_[vi].vertex;
        h.vertex[slot] = p;
        h.neighbor.fill(kNone);
        h.neighbor[slot] = gi;
        make_plane(h);
        const auto hi = static_cast<std::uint32_t>(facets_.size());
        facets_.push_back(std::move(h));

        Facet& g = facets_[gi];
        for (std::size_t s = 0; s < rank_; ++s) {
          if (g.neighbor[s] == vi) {
            g.neighbor[s] = hi;
            break;
          }
        }

        ++candidate_round_;
        const auto scan = [&](std::uint32_t source) {
          for (const std::uint32_t q : facets_[source].conflicts) {
            if (q == p || candidate_stamp_[q] == candidate_round_) continue;
            candidate_stamp_[q] = candidate_round_;
            const Sign s = side(facets_[hi], q);
            if (s == Sign::zero) degenerate(facets_[hi], q);
            if (s == Sign::positive) add_conflict(hi, q);
          }
        };
        scan(vi);
        scan(gi);
      }
    }

    link_new_facets(first_new, p);

    for (std::uint32_t vi : visible) {
      facets_[vi].alive = false;
      std::vector<std::uint32_t>().swap(facets_[vi].conflicts);
    }
  }

  // New facets all contain p; two of them share a ridge iff their vertex sets
  // minus one non-p vertex each coincide.
  void link_new_facets(std::size_t first_new, std::uint32_t p) {
    ridges_.clear();
    for (std::size_t fi = first_new; fi < facets_.size(); ++fi) {
      const Facet& f = facets_[fi];
      for (std::size_t slot = 0; slot < rank_; ++slot) {
        if (f.vertex[slot] == p) continue;
        RidgeEntry e;
        e.key.fill(kNone);
        std::size_t k = 0;
        for (std::size_t j = 0; j < rank_; ++j) {
          if (j != slot) e.key[k++] = f.vertex[j];
        }
        std::sort(e.key.begin(), e.key.begin() + k);
        e.facet = static_cast<std::uint32_t>(fi);
        e.slot = static_cast<std::uint32_t>(slot);
        ridges_.push_back(e);
      }
    }
    std::sort(ridges_.begin(), ridges_.end(),
              [](const RidgeEntry& a, const RidgeEntry& b) { return a.key < b.key; });
    for (std::size_t i = 0; i < ridges_.size(); i += 2) {
      if (i + 1 >= ridges_.size() || ridges_[i].key != ridges_[i + 1].key) {
        throw std::logic_error("lifted hull: unmatched ridge among new facets");
      }
      const RidgeEntry& a = ridges_[i];
      const RidgeEntry& b = ridges_[i + 1];
      facets_[a.facet].neighbor[a.slot] = b.facet;
      facets_[b.facet].neighbor[b.slot] = a.facet;
    }
  }

  // Every pair of adjacent facets must bend strictly outward. A zero here is a
  // non-simplicial hull face, i.e. k+2 cospherical input points.
  void verify_local_convexity() const {
    for (std::uint32_t fi = 0; fi < facets_.size(); ++fi) {
      const Facet& f = facets_[fi];
      if (!f.alive) continue;
      for (std::size_t slot = 0; slot < rank_; ++slot) {
        const std::uint32_t gi = f.neighbor[slot];
        if (gi < fi) continue;
        const Facet& g = facets_[gi];
        std::uint32_t opposite = kNone;
        for (std::size_t s = 0; s < rank_; ++s) {
          if (g.neighbor[s] == fi) opposite = g.vertex[s];
        }
        if (opposite == kNone) throw std::logic_error("lifted hull: asymmetric adjacency");
        const Sign s = side(f, opposite);
        if (s == Sign::zero) degenerate(f, opposite);
        if (s == Sign::positive) throw std::logic_error("lifted hull: reflex ridge");
      }
    }
  }

  const PointSet& points_;
  std::size_t dim_;
  std::size_t rank_;  // vertices per facet
  std::vector<double> lift_;
  std::vector<Facet> facets_;
  std::vector<std::vector<std::uint32_t>> point_conflicts_;
  std::vector<std::uint32_t> candidate_stamp_;
  std::vector<RidgeEntry> ridges_;
  std::uint32_t candidate_round_ = 0;
  std::uint32_t visible_stamp_ = 0;
};

}  // namespace

std::vector<std::size_t> affine_basis(const PointSet& points,
                                      std::span<const std::uint32_t> order, bool lifted,
                                      std::size_t limit) {
  std::vector<std::size_t> basis;
  if (order.empty() || limit == 0) return basis;
  const std::vector<mpq_class> origin = exact_point(points[order[0]], lifted);
  basis.push_back(order[0]);
  ExactSpan span(origin.size());
  for (std::size_t t = 1; t < order.size() && basis.size() < limit; ++t) {
    std::vector<mpq_class> v = exact_point(points[order[t]], lifted);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= origin[j];
    if (span.try_add(std::move(v))) basis.push_back(order[t]);
  }
  return basis;
}

Degeneracy classify_lifted_degeneracy(const PointSet& points,
                                      std::span<const std::size_t> subset) {
  std::vector<std::uint32_t> order(subset.begin(), subset.end());
  const std::size_t rank = affine_basis(points, order, false, points.dim() + 1).size();
  return rank == points.dim() + 1 ? Degeneracy::cospherical : Degeneracy::cohyperplanar;
}

std::vector<Simplex> lower_hull_simplices(const PointSet& points, std::uint64_t seed) {
  if (points.size() < points.dim() + 2) {
    throw InputError("lower hull requires at least k+2 points");
  }
  if (points.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw InputError("too many points");
  }
  return LiftedHull(points, seed).lower_simplices();
}

}  // namespace delo::detail
