#include "delo/outlyingness.hpp"

#include <cmath>
#include <string>

#include "delo/error.hpp"

namespace delo {

ScoreTable score(const DelaunayGraph& graph) {
  const std::size_t n = graph.size();
  if (n < 2) throw InputError("score needs at least 2 points");
  ScoreTable table;
  table.n = n;
  table.dim = graph.dim();
  table.log_scores.resize(n);
  table.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = graph.neighbors(i);
    if (row.empty()) throw InputError("point " + std::to_string(i) + " has no incident edge");
    double sum = 0.0;
    for (const Neighbor& nb : row) sum += std::log(nb.length);
    table.log_scores[i] = sum / static_cast<double>(row.size());
    table.scores[i] = std::exp(table.log_scores[i]);
  }
  return table;
}

std::vector<double> relative_outlyingness(const ScoreTable& table, std::size_t ref) {
  if (ref >= table.n) throw InputError("reference index " + std::to_string(ref) + " out of range");
  const double base = table.log_scores[ref];
  if (!std::isfinite(base)) throw InputError("reference score is zero or not finite");
  std::vector<double> ratio(table.n);
  for (std::size_t i = 0; i < table.n; ++i) ratio[i] = std::exp(table.log_scores[i] - base);
  ratio[ref] = 1.0;
  return ratio;
}

FlagReport flag(const ScoreTable& table, double alpha) {
  if (!(alpha >= 0.0)) throw InputError("alpha must be a nonnegative number");
  FlagReport report;
  report.threshold = alpha;
  for (std::size_t i = 0; i < table.n; ++i) {
    if (table.scores[i] >= alpha) report.flagged.push_back(i);
  }
  return report;
}

}  // namespace delo
