#pragma once

// Seeded samplers and replicated experiments: relative outlyingness of a
// planted outlier inside a spherical shell of inliers, and the separation of
// outlier and inlier scores for samples from a ball as n grows.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "delo/geometry.hpp"

namespace delo {

struct SimulationConfig {
  std::size_t dim = 4;
  std::size_t n_inliers = 299;
  std::size_t replicates = 200;
  double r_lo = 0.7;
  double r_hi = 1.1;
  /// Planted outliers; empty means the single point at the origin.
  std::vector<Point> outliers;
  std::uint64_t seed = 7;
  std::vector<double> thresholds{0.9, 1.0};
  std::size_t histogram_bins = 50;
  /// Keep every replicate's ratio list in the report.
  bool keep_ratios = false;
  /// Worker threads; 0 picks a default (see resolve_threads).
  std::size_t threads = 0;
};

/// Throws InputError describing the first invalid field.
void validate(const SimulationConfig& cfg);

/// Outliers of `cfg` with the empty-list default resolved.
std::vector<Point> resolved_outliers(const SimulationConfig& cfg);

/// n_inliers draws R * Theta, R ~ U[r_lo, r_hi], Theta uniform on the unit
/// sphere (a normalized Gaussian vector), followed by the outliers. The stream
/// is keyed by (seed, replicate), so each replicate is reproducible on its own.
PointSet sample_shell(const SimulationConfig& cfg, std::uint64_t replicate);

/// n uniform draws from the closed ball of `radius` around `center` (empty
/// center = origin) by rejection from the bounding cube. If `proposals` is
/// given it receives the number of cube draws consumed.
PointSet sample_ball(std::size_t dim, std::size_t n, double radius, std::span<const double> center,
                     std::uint64_t seed, std::uint64_t* proposals = nullptr);

struct ThresholdCount {
  double cutoff = 0.0;
  std::uint64_t at_least = 0;  // ratios >= cutoff
  std::uint64_t above = 0;     // ratios > cutoff
};

struct Histogram {
  std::vector<double> edges;  // bins + 1 ascending edges; the last bin is closed
  std::vector<std::uint64_t> counts;
};

struct ExperimentReport {
  SimulationConfig config;
  std::uint64_t total_ratios = 0;
  std::uint64_t failed_replicates = 0;
  std::string first_failure;
  std::vector<ThresholdCount> thresholds;
  Histogram histogram;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
  /// Per replicate, in replicate order; empty for failed replicates. Only
  /// filled when config.keep_ratios is set.
  std::vector<std::vector<double>> ratios;
  double runtime_seconds = 0.0;
};

/// For every replicate: triangulate the shell sample with its single outlier,
/// and record f(x) / f(outlier) for each inlier x. A replicate whose
/// triangulation throws counts as failed and contributes no ratios.
ExperimentReport run_relative_outlyingness_experiment(const SimulationConfig& cfg);

struct ConsistencyConfig {
  std::size_t dim = 2;
  double radius = 1.0;
  std::vector<double> center;  // empty = origin
  std::vector<Point> outliers{Point{3.0, 0.0}};
  std::vector<std::size_t> schedule{50, 100, 200, 400};
  std::size_t replicates = 50;
  std::uint64_t seed = 7;
  std::size_t threads = 0;
};

void validate(const ConsistencyConfig& cfg);

struct ConsistencyLevel {
  std::size_t n = 0;
  /// Per replicate, in replicate order.
  std::vector<double> max_inlier_edge;       // longest inlier-inlier edge of DT(U_n + F)
  std::vector<double> max_edge_inliers_only; // longest edge of DT(U_n)
  std::vector<double> min_outlier_score;
  std::vector<double> max_inlier_score;
  double median_max_inlier_edge = 0.0;
  double median_max_edge_inliers_only = 0.0;
  double median_min_outlier_score = 0.0;
  double median_max_inlier_score = 0.0;
  std::uint64_t violations = 0;  // replicates with an outlier score below delta
  std::uint64_t failed_replicates = 0;
};

struct ConsistencyReport {
  ConsistencyConfig config;
  /// min over outliers of the distance to the ball.
  double distance_to_support = 0.0;
  /// min pairwise distance within the outliers; absent for a single outlier.
  std::optional<double> outlier_separation;
  double delta = 0.0;
  std::vector<ConsistencyLevel> levels;
  std::uint64_t violations = 0;
  bool max_inlier_edge_decreasing = false;
  bool max_edge_inliers_only_decreasing = false;
  bool max_inlier_score_decreasing = false;
  double runtime_seconds = 0.0;
};

ConsistencyReport run_consistency_experiment(const ConsistencyConfig& cfg);

/// Worker count for `requested` (0 = hardware concurrency), capped by the
/// DELO_THREADS environment variable when it holds a positive integer.
std::size_t resolve_threads(std::size_t requested);

/// Runs fn(0) .. fn(count-1) on up to `threads` threads. The first exception
/// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace delo
