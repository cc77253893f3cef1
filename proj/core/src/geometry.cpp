#include "delo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "combinations.hpp"
#include "delo/random.hpp"
#include "lifted_hull.hpp"

namespace delo {
namespace {

void require_finite(Coords c, const char* what) {
  for (double x : c) {
    if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite coordinate");
  }
}

std::vector<predicates::Row> as_rows(std::span<const Coords> simplex) {
  return {simplex.begin(), simplex.end()};
}

void check_simplex_shape(std::span<const Coords> simplex, const char* what) {
  if (simplex.empty()) throw InputError(std::string(what) + ": empty simplex");
  const std::size_t k = simplex.front().size();
  if (k == 0 || k > kMaxDimension) throw InputError(std::string(what) + ": unsupported dimension");
  if (simplex.size() != k + 1) {
    throw InputError(std::string(what) + ": expected " + std::to_string(k + 1) + " points in R^" +
                     std::to_string(k));
  }
  for (Coords c : simplex) {
    if (c.size() != k) throw InputError(std::string(what) + ": dimension mismatch");
    require_finite(c, what);
  }
}

// The homogeneous determinant det[x_i, 1] equals (-1)^k det[x_i - x_0].
Sign raw_orientation(std::span<const Coords> simplex) {
  const std::vector<predicates::Row> rows = as_rows(simplex);
  return predicates::orientation(rows, false);
}

Sign parity(std::size_t k) { return k % 2 == 0 ? Sign::positive : Sign::negative; }

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  require_finite(coords_, "point");
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 || dim_ > kMaxDimension) {
    throw InputError("point set dimension must be in [1, " + std::to_string(kMaxDimension) +
                     "], got " + std::to_string(dim_));
  }
  if (coords_.empty() || coords_.size() % dim_ != 0) {
    throw InputError("point set needs a positive whole number of points");
  }
  require_finite(coords_, "point set");

  const std::size_t n = size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto less = [this](std::size_t a, std::size_t b) {
    const Coords pa = (*this)[a];
    const Coords pb = (*this)[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::stable_sort(idx.begin(), idx.end(), less);
  // Report the duplicate pair whose later member comes first in input order.
  std::size_t best_first = n;
  std::size_t best_second = n;
  for (std::size_t t = 1; t < n; ++t) {
    const Coords pa = (*this)[idx[t - 1]];
    const Coords pb = (*this)[idx[t]];
    if (!std::equal(pa.begin(), pa.end(), pb.begin())) continue;
    std::size_t s = t;
    while (s > 0 && std::equal(pb.begin(), pb.end(), (*this)[idx[s - 1]].begin())) --s;
    const std::size_t first = idx[s];
    if (idx[t] < best_second) {
      best_first = first;
      best_second = idx[t];
    }
  }
  if (best_second < n) throw DuplicatePointError(best_first, best_second);
}

namespace {
std::vector<double> flatten(std::span<const Point> points) {
  if (points.empty()) throw InputError("point set must not be empty");
  const std::size_t dim = points.front().dim();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const Point& p : points) {
    if (p.dim() != dim) throw InputError("point set: dimension mismatch");
    flat.insert(flat.end(), p.coords().begin(), p.coords().end());
  }
  return flat;
}
}  // namespace

PointSet::PointSet(std::span<const Point> points)
    : PointSet(points.empty() ? 0 : points.front().dim(), flatten(points)) {}

PointSet::PointSet(std::initializer_list<Point> points)
    : PointSet(std::span<const Point>(points.begin(), points.size())) {}

Coords PointSet::at(std::size_t i) const {
  if (i >= size()) {
    throw InputError("point index " + std::to_string(i) + " out of range [0, " +
                     std::to_string(size()) + ")");
  }
  return (*this)[i];
}

double PointSet::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) best = std::max(best, distance((*this)[i], (*this)[j]));
  }
  return best;
}

double PointSet::bounding_box_diameter() const {
  double sum = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) {
    double lo = coords_[c];
    double hi = coords_[c];
    for (std::size_t i = 1; i < size(); ++i) {
      lo = std::min(lo, coords_[i * dim_ + c]);
      hi = std::max(hi, coords_[i * dim_ + c]);
    }
    sum += (hi - lo) * (hi - lo);
  }
  return std::sqrt(sum);
}

Sign orient(std::span<const Coords> simplex) {
  check_simplex_shape(simplex, "orient");
  return raw_orientation(simplex) * parity(simplex.front().size());
}

Sign orient(std::initializer_list<Coords> simplex) {
  return orient(std::span<const Coords>(simplex.begin(), simplex.size()));
}

Sign in_sphere(std::span<const Coords> simplex, Coords query) {
  check_simplex_shape(simplex, "in_sphere");
  if (query.size() != simplex.front().size()) throw InputError("in_sphere: dimension mismatch");
  require_finite(query, "in_sphere");
  const Sign base = raw_orientation(simplex);
  if (base == Sign::zero) {
    std::vector<std::size_t> positions(simplex.size());
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    throw GeneralPositionError(Degeneracy::dependent_simplex, positions);
  }
  std::vector<predicates::Row> rows = as_rows(simplex);
  rows.push_back(query);
  // With the lifted column, det > 0 for a point inside the sphere exactly when
  // the simplex itself has positive homogeneous orientation.
  return predicates::orientation(rows, true) * base;
}

Sign in_sphere(std::initializer_list<Coords> simplex, Coords query) {
  return in_sphere(std::span<const Coords>(simplex.begin(), simplex.size()), query);
}

Point lift(Coords p) {
  require_finite(p, "lift");
  std::vector<double> out(p.begin(), p.end());
  double s = 0.0;
  for (double x : p) s += x * x;
  if (!std::isfinite(s)) throw InputError("lift: squared norm overflows");
  out.push_back(s);
  return Point(std::move(out));
}

double squared_distance(Coords x, Coords y) {
  if (x.size() != y.size()) throw InputError("distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double distance(Coords x, Coords y) {
  if (x.size() != y.size()) throw InputError("distance: dimension mismatch");
  // hypot-style scaling keeps large coordinates from overflowing the sum.
  double scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) scale = std::max(scale, std::fabs(x[i] - y[i]));
  if (scale == 0.0) return 0.0;
  if (scale > 1e150 || scale < 1e-150) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = (x[i] - y[i]) / scale;
      s += d * d;
    }
    return scale * std::sqrt(s);
  }
  return std::sqrt(squared_distance(x, y));
}

GeneralPositionReport check_general_position(const PointSet& points, GeneralPositionMode mode) {
  GeneralPositionReport report;
  const std::size_t n = points.size();
  const std::size_t k = points.dim();

  if (mode == GeneralPositionMode::exhaustive) {
    if (n > kExhaustiveCheckLimit) {
      throw InputError("exhaustive general-position check is limited to n <= " +
                       std::to_string(kExhaustiveCheckLimit));
    }
    report.exhaustive = true;
    std::vector<Coords> simplex(k + 1);
    report.spans = !detail::for_each_combination(n, k + 1, [&](const auto& idx) {
      for (std::size_t t = 0; t <= k; ++t) simplex[t] = points[idx[t]];
      return raw_orientation(simplex) == Sign::zero;
    });
    if (!report.spans) {
      report.violation = Degeneracy::not_spanning;
      report.violating_subset.resize(n);
      std::iota(report.violating_subset.begin(), report.violating_subset.end(), std::size_t{0});
    }
    std::vector<predicates::Row> rows(k + 2);
    std::vector<std::size_t> found;
    detail::for_each_combination(n, k + 2, [&](const auto& idx) {
      for (std::size_t t = 0; t < k + 2; ++t) rows[t] = points[idx[t]];
      if (predicates::orientation(rows, true) == Sign::zero) {
        found = idx;
        return false;
      }
      return true;
    });
    report.no_cospherical = found.empty();
    if (!found.empty() && report.spans) {
      report.violation = detail::classify_lifted_degeneracy(points, found);
      report.violating_subset = found;
    }
    return report;
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  const std::vector<std::size_t> basis = detail::affine_basis(points, order, false, k + 1);
  report.spans = basis.size() == k + 1;
  if (!report.spans) {
    report.violation = Degeneracy::not_spanning;
    report.violating_subset = basis;
    report.no_cospherical = true;
    return report;
  }
  report.no_cospherical = true;
  if (n >= k + 2) {
    try {
      (void)detail::lower_hull_simplices(points, detail::kDefaultHullSeed);
    } catch (const GeneralPositionError& e) {
      report.no_cospherical = e.kind() != Degeneracy::cospherical &&
                              e.kind() != Degeneracy::cohyperplanar;
      report.spans = e.kind() != Degeneracy::not_spanning;
      report.violation = e.kind();
      report.violating_subset = e.indices();
    }
  }
  return report;
}

std::vector<double> jitter(std::size_t dim, std::span<const double> coords, std::uint64_t seed) {
  if (dim == 0 || coords.size() % dim != 0) throw InputError("jitter: malformed coordinates");
  require_finite(coords, "jitter");
  const std::size_t n = coords.size() / dim;
  double diag = 0.0;
  double max_abs = 0.0;
  for (std::size_t c = 0; c < dim && n > 0; ++c) {
    double lo = coords[c];
    double hi = coords[c];
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, coords[i * dim + c]);
      hi = std::max(hi, coords[i * dim + c]);
      max_abs = std::max(max_abs, std::fabs(coords[i * dim + c]));
    }
    diag += (hi - lo) * (hi - lo);
  }
  diag = std::sqrt(diag);
  const double magnitude = kJitterScale * (diag > 0.0 ? diag : std::max(1.0, max_abs));
  KeyedStream rng(seed, 0x4A4954544552ULL);
  std::vector<double> out(coords.begin(), coords.end());
  for (double& x : out) x += rng.uniform(-magnitude, magnitude);
  return out;
}

}  // namespace delo
