#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace delo::lp {

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> x;  // present when status == optimal
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// maximize c.x subject to G x <= h, x free in R^m.
///
/// Dense two-phase tableau simplex with Bland's rule (no cycling). Free
/// variables are split as x = x+ - x-. Intended for small systems (a few
/// hundred rows, a handful of columns); `G` is row-major with c.size() columns.
Solution maximize(std::span<const double> c, std::span<const double> G, std::span<const double> h,
                  double tolerance = 1e-11);

/// Any x with G x <= h + tolerance, from phase 1 alone.
Solution find_feasible_point(std::span<const double> G, std::span<const double> h,
                             std::size_t columns, double tolerance = 1e-11);

}  // namespace delo::lp
