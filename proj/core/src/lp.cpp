#include "delo/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "delo/error.hpp"

namespace delo::lp {
namespace {

constexpr double kPivotEps = 1e-12;
// Phase-2 reduced costs below this are round-off; entries of order 1e2 leave
// residue near 1e-12 after a few dozen pivots.
constexpr double kOptimalityEps = 1e-9;
constexpr std::size_t kMaxPivots = 100000;

class Tableau {
 public:
  Tableau(std::span<const double> G, std::span<const double> h, std::size_t m)
      : rows_(h.size()), m_(m) {
    if (G.size() != rows_ * m_) throw InputError("lp: constraint matrix has the wrong shape");
    for (double v : G) {
      if (!std::isfinite(v)) throw InputError("lp: non-finite constraint coefficient");
    }
    for (double v : h) {
      if (!std::isfinite(v)) throw InputError("lp: non-finite right-hand side");
    }
    std::size_t artificial = 0;
    for (double v : h) artificial += v < 0.0 ? 1 : 0;
    first_artificial_ = 2 * m_ + rows_;
    cols_ = first_artificial_ + artificial;
    t_.assign((rows_ + 1) * (cols_ + 1), 0.0);
    basis_.resize(rows_);

    std::size_t next_artificial = first_artificial_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double s = h[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < m_; ++j) {
        at(i, j) = s * G[i * m_ + j];
        at(i, m_ + j) = -s * G[i * m_ + j];
      }
      at(i, 2 * m_ + i) = s;
      rhs(i) = s * h[i];
      if (h[i] < 0.0) {
        at(i, next_artificial) = 1.0;
        basis_[i] = next_artificial++;
      } else {
        basis_[i] = 2 * m_ + i;
      }
    }
  }

  bool has_artificials() const noexcept { return cols_ > first_artificial_; }

  /// Maximizes `cost` (one entry per tableau column). Returns false when
  /// unbounded.
  bool optimize(const std::vector<double>& cost, bool allow_artificial, double eps, std::size_t& pivots) {
    for (std::size_t j = 0; j <= cols_; ++j) obj(j) = j < cols_ ? cost[j] : 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) obj(j) -= cb * at(i, j);
    }
    const std::size_t limit = allow_artificial ? cols_ : first_artificial_;
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj(j) > eps) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;

      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        if (ratio < best - kPivotEps ||
            (ratio <= best + kPivotEps && leave < rows_ && basis_[i] < basis_[leave])) {
          if (ratio < best) best = ratio;
          leave = i;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
      if (++pivots > kMaxPivots) throw std::runtime_error("lp: pivot limit exceeded");
    }
  }

  /// Pivots basic artificial variables out where possible; rows where that is
  /// impossible are redundant and keep a zero-valued artificial.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (std::fabs(at(i, j)) > 1e-9) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double objective_value() const { return -t_[rows_ * (cols_ + 1) + cols_]; }

  std::vector<double> solution() const {
    std::vector<double> x(m_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::size_t b = basis_[i];
      if (b < m_) x[b] += rhs(i);
      else if (b < 2 * m_) x[b - m_] -= rhs(i);
    }
    return x;
  }

  std::size_t columns() const noexcept { return cols_; }
  std::size_t first_artificial() const noexcept { return first_artificial_; }
  std::size_t m() const noexcept { return m_; }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * (cols_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, cols_); }
  double rhs(std::size_t i) const { return at(i, cols_); }
  double& obj(std::size_t j) { return t_[rows_ * (cols_ + 1) + j]; }

  void pivot(std::size_t p, std::size_t q) {
    const std::size_t w = cols_ + 1;
    double* prow = &t_[p * w];
    const double inv = 1.0 / prow[q];
    for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == p) continue;
      double* row = &t_[i * w];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
    basis_[p] = q;
  }

  std::size_t rows_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::size_t first_artificial_ = 0;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

// Phase 1: maximize minus the sum of artificials. Returns false if infeasible.
bool phase_one(Tableau& tab, double tolerance, std::size_t& pivots) {
  if (!tab.has_artificials()) return true;
  std::vector<double> cost(tab.columns(), 0.0);
  for (std::size_t j = tab.first_artificial(); j < tab.columns(); ++j) cost[j] = -1.0;
  tab.optimize(cost, true, kPivotEps, pivots);
  if (tab.objective_value() < -tolerance) return false;
  tab.expel_artificials();
  return true;
}

}  // namespace

Solution maximize(std::span<const double> c, std::span<const double> G, std::span<const double> h,
                  double tolerance) {
  Tableau tab(G, h, c.size());
  Solution out;
  if (!phase_one(tab, tolerance, out.pivots)) {
    out.status = Status::infeasible;
    return out;
  }
  std::vector<double> cost(tab.columns(), 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    cost[j] = c[j];
    cost[c.size() + j] = -c[j];
  }
  if (!tab.optimize(cost, false, kOptimalityEps, out.pivots)) {
    out.status = Status::unbounded;
    return out;
  }
  out.status = Status::optimal;
  out.x = tab.solution();
  out.objective = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) out.objective += c[j] * out.x[j];
  return out;
}

Solution find_feasible_point(std::span<const double> G, std::span<const double> h,
                             std::size_t columns, double tolerance) {
  Tableau tab(G, h, columns);
  Solution out;
  if (!phase_one(tab, tolerance, out.pivots)) {
    out.status = Status::infeasible;
    return out;
  }
  out.status = Status::optimal;
  out.x = tab.solution();
  return out;
}

}  // namespace delo::lp
