#pragma once

// Exact-sign determinant kernel shared by the geometry, triangulation and
// oracle modules.
//
// All predicates reduce to the sign of a homogeneous orientation determinant
// whose rows are
//
//     (x_1, ..., x_c, [x_1^2 + ... + x_c^2], 1)
//
// where the bracketed column is present for "lifted" (paraboloid) rows. The
// determinant is first evaluated in double precision together with a forward
// error bound; if the bound cannot certify the sign, it is recomputed exactly
// over the rationals represented by the input doubles.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace delo {

enum class Sign : std::int8_t { negative = -1, zero = 0, positive = 1 };

constexpr Sign operator-(Sign s) noexcept { return static_cast<Sign>(-static_cast<int>(s)); }
constexpr Sign operator*(Sign a, Sign b) noexcept {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
const char* to_string(Sign s) noexcept;

namespace predicates {

/// Largest supported matrix order: lifted rows of 6-dimensional points.
inline constexpr std::size_t kMaxOrder = 8;

using Row = std::span<const double>;

/// Sign of the orientation determinant of `rows`. Every row must hold the same
/// number c of coordinates and rows.size() must equal c + lifted + 1.
Sign orientation(std::span<const Row> rows, bool lifted);

/// Same determinant, always evaluated in exact rational arithmetic.
Sign orientation_exact(std::span<const Row> rows, bool lifted);

/// Double-precision evaluation; nullopt when the error bound does not certify
/// the sign.
std::optional<Sign> orientation_filtered(std::span<const Row> rows, bool lifted);

/// Cached cofactor expansion of an orientation determinant whose first
/// order-1 rows are fixed. Evaluating the sign for a new last row costs O(order).
class Hyperplane {
 public:
  Hyperplane() = default;
  Hyperplane(std::span<const Row> rows, bool lifted);

  /// Filtered sign of the determinant with `q` appended as the last row.
  /// `q_lift` must be the double-precision squared norm of q when lifted.
  std::optional<Sign> filtered_side(Row q, double q_lift) const noexcept;

  std::size_t order() const noexcept { return order_; }
  /// Signed cofactor multiplying column `col` of the appended row.
  double cofactor(std::size_t col) const noexcept { return cofactor_[col]; }

 private:
  std::array<double, kMaxOrder> cofactor_{};
  std::array<double, kMaxOrder> magnitude_{};
  double error_coefficient_ = 0.0;
  std::uint8_t order_ = 0;
  bool lifted_ = false;
  bool usable_ = false;
};

/// True when the double-precision filter may be applied to a coordinate.
bool in_filter_range(double x) noexcept;

}  // namespace predicates
}  // namespace delo
