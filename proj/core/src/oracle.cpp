#include "delo/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "combinations.hpp"
#include "delo/lp.hpp"

namespace delo::oracle {
namespace {

// LP optimum (in diameter units) above which a pair is declared adjacent.
// General position keeps true margins away from zero.
constexpr double kMarginThreshold = 1e-10;

double squared_norm(Coords x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

Sign in_sphere_cached(const predicates::Hyperplane& plane, Sign base,
                      std::span<const Coords> simplex, Coords q) {
  if (const auto s = plane.filtered_side(q, squared_norm(q))) return *s * base;
  return in_sphere(simplex, q);
}

WitnessResult one_dimensional_witness(const PointSet& points, std::size_t i, std::size_t j,
                                      double diameter) {
  const double a = points[i][0];
  const double b = points[j][0];
  const double mid = 0.5 * (a + b);
  const double r = std::fabs(a - mid);
  double margin = 1.0;
  for (std::size_t z = 0; z < points.size(); ++z) {
    if (z == i || z == j) continue;
    margin = std::min(margin, (std::fabs(points[z][0] - mid) - r) / diameter);
  }
  WitnessResult out;
  out.margin = margin;
  out.adjacent = margin > kMarginThreshold;
  if (out.adjacent) out.witness = Point{mid};
  return out;
}

WitnessResult witness_impl(const PointSet& points, std::size_t i, std::size_t j, double diameter) {
  const std::size_t k = points.dim();
  const std::size_t n = points.size();
  if (k == 1) return one_dimensional_witness(points, i, j, diameter);

  // Work in coordinates centred at the midpoint and scaled by the diameter;
  // the bisector is then the linear subspace orthogonal to y_i - y_j.
  Eigen::VectorXd mid(k);
  for (std::size_t c = 0; c < k; ++c) mid[c] = 0.5 * (points[i][c] + points[j][c]);
  const auto normalized = [&](std::size_t z) {
    Eigen::VectorXd y(k);
    for (std::size_t c = 0; c < k; ++c) y[c] = (points[z][c] - mid[c]) / diameter;
    return y;
  };
  const Eigen::VectorXd yi = normalized(i);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(yi)};
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
  const Eigen::MatrixXd basis = q.rightCols(k - 1);
  const double ri = yi.squaredNorm();

  // Variables (u, t): p = B u, maximize t subject to, for every other z,
  // <a_z, u> + t |a_z| <= b_z with a_z = 2 B^T (y_z - y_i), b_z = |y_z|^2 - |y_i|^2,
  // and t <= 1. The optimum is the depth of the deepest point of the shared
  // Voronoi facet.
  const std::size_t m = k - 1;
  const std::size_t cols = m + 1;
  std::vector<double> G;
  std::vector<double> h;
  G.reserve((n - 1) * cols);
  for (std::size_t z = 0; z < n; ++z) {
    if (z == i || z == j) continue;
    const Eigen::VectorXd yz = normalized(z);
    const Eigen::VectorXd a = 2.0 * basis.transpose() * (yz - yi);
    const double b = yz.squaredNorm() - ri;
    const double norm = a.norm();
    if (norm < 1e-14) {
      // z lies on the line through x_i and x_j: the constraint is 0 <= b.
      for (std::size_t c = 0; c < m; ++c) G.push_back(0.0);
      G.push_back(1.0);
      h.push_back(b);
      continue;
    }
    for (std::size_t c = 0; c < m; ++c) G.push_back(a[static_cast<Eigen::Index>(c)] / norm);
    G.push_back(1.0);
    h.push_back(b / norm);
  }
  for (std::size_t c = 0; c < m; ++c) G.push_back(0.0);
  G.push_back(1.0);
  h.push_back(1.0);

  // Substitute t = s + shift with shift = min h, so every right-hand side is
  // non-negative and the slack basis is feasible from the start.
  const double shift = *std::min_element(h.begin(), h.end());
  for (double& v : h) v -= shift;

  std::vector<double> cost(cols, 0.0);
  cost[m] = 1.0;
  lp::Solution sol = lp::maximize(cost, G, h);
  if (sol.status == lp::Status::optimal) sol.x[m] += shift;
  WitnessResult out;
  if (sol.status != lp::Status::optimal) {
    throw std::runtime_error(std::string("adjacent_witness: margin program did not reach an optimum (") +
                             (sol.status == lp::Status::infeasible ? "infeasible" : "unbounded") + ")");
  }
  out.margin = sol.x[m];
  out.adjacent = out.margin > kMarginThreshold;
  if (out.adjacent) {
    Eigen::VectorXd u(m);
    for (std::size_t c = 0; c < m; ++c) u[static_cast<Eigen::Index>(c)] = sol.x[c];
    const Eigen::VectorXd p = mid + diameter * (basis * u);
    out.witness = Point(std::vector<double>(p.data(), p.data() + k));
  }
  return out;
}

void check_pair(const PointSet& points, std::size_t i, std::size_t j) {
  if (points.size() > kWitnessLimit) {
    throw InputError("adjacent_witness is limited to n <= " + std::to_string(kWitnessLimit));
  }
  if (i >= points.size() || j >= points.size()) throw InputError("adjacent_witness: index out of range");
  if (i == j) throw InputError("adjacent_witness: i and j must differ");
}

}  // namespace

DelaunayGraph delaunay_bruteforce(const PointSet& points) {
  const std::size_t n = points.size();
  const std::size_t k = points.dim();
  if (n < k + 1 || n > kBruteforceLimit) {
    throw InputError("delaunay_bruteforce needs k+1 <= n <= " + std::to_string(kBruteforceLimit));
  }
  std::vector<std::vector<std::uint32_t>> simplices;
  std::vector<Coords> simplex(k + 1);
  detail::for_each_combination(n, k + 1, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t t = 0; t <= k; ++t) simplex[t] = points[idx[t]];
    const Sign base = predicates::orientation(simplex, false);
    if (base == Sign::zero) return true;
    const predicates::Hyperplane plane(simplex, true);
    std::size_t next = 0;
    for (std::size_t z = 0; z < n; ++z) {
      if (next < idx.size() && idx[next] == z) {
        ++next;
        continue;
      }
      const Sign s = in_sphere_cached(plane, base, simplex, points[z]);
      if (s == Sign::zero) {
        std::vector<std::size_t> subset(idx.begin(), idx.end());
        subset.push_back(z);
        std::sort(subset.begin(), subset.end());
        throw GeneralPositionError(Degeneracy::cospherical, subset);
      }
      if (s == Sign::positive) return true;
    }
    simplices.emplace_back(idx.begin(), idx.end());
    return true;
  });
  if (simplices.empty()) {
    std::vector<std::size_t> all(n);
    for (std::size_t t = 0; t < n; ++t) all[t] = t;
    throw GeneralPositionError(Degeneracy::not_spanning, all);
  }
  return DelaunayGraph::from_simplices(points, std::move(simplices));
}

WitnessResult adjacent_witness(const PointSet& points, std::size_t i, std::size_t j) {
  check_pair(points, i, j);
  return witness_impl(points, i, j, points.diameter());
}

bool verify_witness(const PointSet& points, std::size_t i, std::size_t j, Coords p) {
  if (i >= points.size() || j >= points.size() || i == j) {
    throw InputError("verify_witness: invalid pair");
  }
  if (p.size() != points.dim()) throw InputError("verify_witness: dimension mismatch");
  const double tol = kWitnessTolerance * points.diameter();
  const double di = distance(p, points[i]);
  if (std::fabs(di - distance(p, points[j])) > tol) return false;
  for (std::size_t z = 0; z < points.size(); ++z) {
    if (z != i && z != j && distance(p, points[z]) < di - tol) return false;
  }
  return true;
}

std::vector<Edge> witness_edges(const PointSet& points) {
  if (points.size() > kWitnessLimit) {
    throw InputError("witness_edges is limited to n <= " + std::to_string(kWitnessLimit));
  }
  const double diameter = points.diameter();
  std::vector<Edge> edges;
  const auto n = static_cast<std::uint32_t>(points.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (witness_impl(points, i, j, diameter).adjacent) {
        edges.push_back({i, j, distance(points[i], points[j])});
      }
    }
  }
  return edges;
}

Point circumcenter(std::span<const Coords> simplex) {
  if (orient(simplex) == Sign::zero) {
    std::vector<std::size_t> positions(simplex.size());
    for (std::size_t t = 0; t < positions.size(); ++t) positions[t] = t;
    throw GeneralPositionError(Degeneracy::dependent_simplex, positions);
  }
  const std::size_t k = simplex.front().size();
  const auto K = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd M(K, K);
  Eigen::VectorXd rhs(K);
  double diam = 0.0;
  for (std::size_t t = 1; t <= k; ++t) {
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double d = simplex[t][c] - simplex[0][c];
      M(static_cast<Eigen::Index>(t - 1), static_cast<Eigen::Index>(c)) = 2.0 * d;
      s += d * d;
    }
    rhs[static_cast<Eigen::Index>(t - 1)] = s;
  }
  for (std::size_t a = 0; a <= k; ++a) {
    for (std::size_t b = a + 1; b <= k; ++b) diam = std::max(diam, distance(simplex[a], simplex[b]));
  }
  const Eigen::VectorXd offset = M.colPivHouseholderQr().solve(rhs);
  std::vector<double> c(k);
  for (std::size_t t = 0; t < k; ++t) c[t] = simplex[0][t] + offset[static_cast<Eigen::Index>(t)];
  const double r0 = distance(c, simplex[0]);
  for (std::size_t t = 1; t <= k; ++t) {
    if (!(std::fabs(distance(c, simplex[t]) - r0) <= 1e-9 * diam)) {
      std::vector<std::size_t> positions(k + 1);
      for (std::size_t s = 0; s <= k; ++s) positions[s] = s;
      throw GeometryError("circumcenter: ill-conditioned simplex", positions);
    }
  }
  return Point(std::move(c));
}

Point circumcenter(std::initializer_list<Coords> simplex) {
  return circumcenter(std::span<const Coords>(simplex.begin(), simplex.size()));
}

bool bisector_pythagoras_check(Coords x, Coords y, Coords p) {
  if (x.size() != y.size() || x.size() != p.size()) {
    throw InputError("bisector_pythagoras_check: dimension mismatch");
  }
  const double dx = distance(x, p);
  const double dy = distance(y, p);
  const double scale = std::max({distance(x, y), dx, dy});
  if (std::fabs(dx - dy) > 1e-9 * scale) {
    throw InputError("bisector_pythagoras_check: p is not equidistant from x and y");
  }
  std::vector<double> a(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) a[c] = 0.5 * (x[c] + y[c]);
  const double lhs = dx * dx;
  const double xa = distance(x, a);
  const double ap = distance(a, p);
  const double rhs = xa * xa + ap * ap;
  return std::fabs(lhs - rhs) <= 1e-9 * std::max(lhs, rhs);
}

}  // namespace delo::oracle
