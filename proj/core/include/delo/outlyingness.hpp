#pragma once

#include <cstddef>
#include <vector>

#include "delo/triangulation.hpp"

namespace delo {

/// Delaunay outlyingness of every point: the geometric mean of the lengths of
/// its incident Delaunay edges. log_scores is authoritative; scores is its
/// exponential (which may underflow to 0 for extreme inputs).
struct ScoreTable {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> log_scores;
  std::vector<double> scores;
};

/// Requires n >= 2. Throws InputError for an isolated point.
ScoreTable score(const DelaunayGraph& graph);

/// ratio[i] = f(x_i) / f(x_ref), computed as exp(log_i - log_ref); the
/// reference entry is exactly 1.
std::vector<double> relative_outlyingness(const ScoreTable& table, std::size_t ref);

struct FlagReport {
  double threshold = 0.0;
  std::vector<std::size_t> flagged;  // ascending
};

/// Flags every point whose score is at least alpha (alpha >= 0).
FlagReport flag(const ScoreTable& table, double alpha);

}  // namespace delo
