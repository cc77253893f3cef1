#include "delo/predicates.hpp"

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "delo/error.hpp"

namespace delo {

const char* to_string(Sign s) noexcept {
  switch (s) {
    case Sign::negative:
      return "NEGATIVE";
    case Sign::zero:
      return "ZERO";
    case Sign::positive:
      return "POSITIVE";
  }
  return "?";
}

namespace predicates {
namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
// Keeps every product of up to kMaxOrder entries (one of them a lifted square
// norm) clear of overflow and of the subnormal range.
const double kFilterMin = std::ldexp(1.0, -100);
const double kFilterMax = std::ldexp(1.0, 100);

using Mask = std::uint32_t;

// masks[order][p] lists the subsets of {0..order-1} with p elements.
struct MaskTable {
  std::array<std::array<std::vector<Mask>, kMaxOrder + 1>, kMaxOrder + 1> masks;
  MaskTable() {
    for (std::size_t order = 1; order <= kMaxOrder; ++order) {
      for (Mask m = 1; m < (Mask{1} << order); ++m) {
        masks[order][std::popcount(m)].push_back(m);
      }
    }
  }
};

const MaskTable& mask_table() {
  static const MaskTable table;
  return table;
}

std::size_t check_shape(std::span<const Row> rows, bool lifted) {
  if (rows.empty()) throw InputError("orientation: no rows");
  const std::size_t coords = rows.front().size();
  const std::size_t order = coords + (lifted ? 1 : 0) + 1;
  if (rows.size() != order) {
    throw InputError("orientation: expected " + std::to_string(order) + " rows of dimension " +
                     std::to_string(coords) + ", got " + std::to_string(rows.size()));
  }
  if (order > kMaxOrder) throw InputError("orientation: matrix order exceeds supported maximum");
  for (const Row& r : rows) {
    if (r.size() != coords) throw InputError("orientation: dimension mismatch");
    for (double x : r) {
      if (!std::isfinite(x)) throw InputError("orientation: non-finite coordinate");
    }
  }
  return order;
}

double squared_norm(Row r) noexcept {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

// Entry (row, col) of the homogeneous matrix.
double entry(Row r, double lift, std::size_t col, bool lifted) noexcept {
  const std::size_t c = r.size();
  if (col < c) return r[col];
  if (lifted && col == c) return lift;
  return 1.0;
}

int sign_of_determinant(std::vector<mpq_class>& a, std::size_t n) {
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot * n + col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      sign = -sign;
    }
    const mpq_class& p = a[col * n + col];
    if (sgn(p) < 0) sign = -sign;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(a[i * n + col]) == 0) continue;
      const mpq_class factor = a[i * n + col] / p;
      for (std::size_t j = col + 1; j < n; ++j) a[i * n + j] -= factor * a[col * n + j];
    }
  }
  return sign;
}

}  // namespace

bool in_filter_range(double x) noexcept {
  const double a = std::fabs(x);
  return a == 0.0 || (a >= kFilterMin && a <= kFilterMax);
}

Hyperplane::Hyperplane(std::span<const Row> rows, bool lifted) : lifted_(lifted) {
  if (rows.empty()) throw InputError("hyperplane: no rows");
  const std::size_t coords = rows.front().size();
  const std::size_t order = coords + (lifted ? 1 : 0) + 1;
  if (rows.size() + 1 != order || order > kMaxOrder) {
    throw InputError("hyperplane: row count does not match dimension");
  }
  order_ = static_cast<std::uint8_t>(order);

  usable_ = true;
  std::array<double, kMaxOrder> lift{};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != coords) throw InputError("hyperplane: dimension mismatch");
    for (double x : rows[r]) usable_ = usable_ && in_filter_range(x);
    lift[r] = lifted ? squared_norm(rows[r]) : 0.0;
  }

  // det[S] is the signed minor on rows 0..|S|-1 and column set S, built by
  // Laplace expansion along the newest row; perm[S] is the same recursion on
  // absolute values and bounds the rounding error of det[S].
  std::array<double, std::size_t{1} << kMaxOrder> det{};
  std::array<double, std::size_t{1} << kMaxOrder> perm{};
  const auto& masks = mask_table().masks[order];
  for (std::size_t col = 0; col < order; ++col) {
    const double a = entry(rows[0], lift[0], col, lifted);
    det[Mask{1} << col] = a;
    perm[Mask{1} << col] = std::fabs(a);
  }
  for (std::size_t r = 1; r + 1 < order; ++r) {
    for (Mask s : masks[r + 1]) {
      double d = 0.0;
      double p = 0.0;
      std::size_t t = 0;
      for (std::size_t col = 0; col < order; ++col) {
        if (!(s & (Mask{1} << col))) continue;
        const double a = entry(rows[r], lift[r], col, lifted);
        const Mask rest = s & ~(Mask{1} << col);
        const double term = a * det[rest];
        d = ((r + t) % 2 == 0) ? d + term : d - term;
        p += std::fabs(a) * perm[rest];
        ++t;
      }
      det[s] = d;
      perm[s] = p;
    }
  }
  const Mask full = (Mask{1} << order) - 1;
  for (std::size_t col = 0; col < order; ++col) {
    const Mask rest = full & ~(Mask{1} << col);
    const double minor = order == 1 ? 1.0 : det[rest];
    cofactor_[col] = ((order - 1 + col) % 2 == 0) ? minor : -minor;
    magnitude_[col] = order == 1 ? 1.0 : perm[rest];
  }
  const std::size_t rounding_steps =
      order * (order + 1) / 2 - 1 + (lifted ? coords : 0);
  error_coefficient_ = 2.0 * static_cast<double>(rounding_steps + 2) * kUnitRoundoff;
}

std::optional<Sign> Hyperplane::filtered_side(Row q, double q_lift) const noexcept {
  if (!usable_) return std::nullopt;
  double d = 0.0;
  double p = 0.0;
  const std::size_t coords = q.size();
  for (std::size_t col = 0; col < coords; ++col) {
    const double a = q[col];
    if (!in_filter_range(a)) return std::nullopt;
    d += cofactor_[col] * a;
    p += magnitude_[col] * std::fabs(a);
  }
  if (lifted_) {
    d += cofactor_[coords] * q_lift;
    p += magnitude_[coords] * q_lift;
  }
  d += cofactor_[order_ - 1];
  p += magnitude_[order_ - 1];
  const double bound = error_coefficient_ * p;
  if (d > bound) return Sign::positive;
  if (d < -bound) return Sign::negative;
  return std::nullopt;
}

std::optional<Sign> orientation_filtered(std::span<const Row> rows, bool lifted) {
  check_shape(rows, lifted);
  const Hyperplane plane(rows.first(rows.size() - 1), lifted);
  const Row q = rows.back();
  return plane.filtered_side(q, lifted ? squared_norm(q) : 0.0);
}

Sign orientation_exact(std::span<const Row> rows, bool lifted) {
  const std::size_t n = check_shape(rows, lifted);
  const std::size_t coords = rows.front().size();
  std::vector<mpq_class> a(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    mpq_class norm = 0;
    for (std::size_t c = 0; c < coords; ++c) {
      a[r * n + c] = mpq_class(rows[r][c]);
      if (lifted) norm += a[r * n + c] * a[r * n + c];
    }
    if (lifted) a[r * n + coords] = norm;
    a[r * n + n - 1] = 1;
  }
  return static_cast<Sign>(sign_of_determinant(a, n));
}

Sign orientation(std::span<const Row> rows, bool lifted) {
  if (auto s = orientation_filtered(rows, lifted)) return *s;
  return orientation_exact(rows, lifted);
}

}  // namespace predicates
}  // namespace delo
