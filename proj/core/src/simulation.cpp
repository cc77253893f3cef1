#include "delo/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "delo/outlyingness.hpp"
#include "delo/random.hpp"
#include "delo/triangulation.hpp"

namespace delo {
namespace {

constexpr std::uint64_t kShellStream = 0x5348454C4CULL;
constexpr std::uint64_t kBallStream = 0x42414C4CULL;

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t t = 1; t < v.size(); ++t) {
    if (!(v[t] < v[t - 1])) return false;
  }
  return !v.empty();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

}  // namespace

std::size_t resolve_threads(std::size_t requested) {
  std::size_t threads = requested;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DELO_THREADS")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) threads = std::min<std::size_t>(threads, cap);
  }
  return threads;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::min(std::max<std::size_t>(threads, 1), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < count && !stop; i = next++) {
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Point> resolved_outliers(const SimulationConfig& cfg) {
  if (!cfg.outliers.empty()) return cfg.outliers;
  return {Point(std::vector<double>(cfg.dim, 0.0))};
}

void validate(const SimulationConfig& cfg) {
  require(cfg.dim >= 1 && cfg.dim <= kMaxDimension,
          "dim must be in [1, " + std::to_string(kMaxDimension) + "]");
  require(std::isfinite(cfg.r_lo) && std::isfinite(cfg.r_hi), "radii must be finite");
  require(cfg.r_lo >= 0.0 && cfg.r_lo < cfg.r_hi, "radii must satisfy 0 <= r_lo < r_hi");
  require(cfg.replicates >= 1, "replicates must be at least 1");
  require(cfg.n_inliers >= cfg.dim + 1, "n must be at least dim + 1");
  for (const Point& p : cfg.outliers) require(p.dim() == cfg.dim, "outlier dimension mismatch");
  for (double t : cfg.thresholds) require(std::isfinite(t), "thresholds must be finite");
  require(cfg.histogram_bins >= 1, "histogram needs at least one bin");
}

PointSet sample_shell(const SimulationConfig& cfg, std::uint64_t replicate) {
  validate(cfg);
  const std::size_t k = cfg.dim;
  const std::vector<Point> outliers = resolved_outliers(cfg);
  KeyedStream rng(derive_key(cfg.seed, replicate), kShellStream);
  std::vector<double> coords;
  coords.reserve((cfg.n_inliers + outliers.size()) * k);
  std::vector<double> theta(k);
  for (std::size_t i = 0; i < cfg.n_inliers; ++i) {
    const double r = rng.uniform(cfg.r_lo, cfg.r_hi);
    double norm = 0.0;
    while (norm == 0.0) {
      for (double& v : theta) v = rng.normal();
      norm = 0.0;
      for (double v : theta) norm += v * v;
      norm = std::sqrt(norm);
    }
    for (double v : theta) coords.push_back(r * v / norm);
  }
  for (const Point& p : outliers) coords.insert(coords.end(), p.coords().begin(), p.coords().end());
  return PointSet(k, std::move(coords));
}

PointSet sample_ball(std::size_t dim, std::size_t n, double radius, std::span<const double> center,
                     std::uint64_t seed, std::uint64_t* proposals) {
  require(dim >= 1 && dim <= kMaxDimension, "dim must be in [1, " + std::to_string(kMaxDimension) + "]");
  require(std::isfinite(radius) && radius > 0.0, "radius must be positive and finite");
  require(n >= 1, "n must be at least 1");
  require(center.empty() || center.size() == dim, "center dimension mismatch");
  KeyedStream rng(seed, kBallStream);
  std::vector<double> coords;
  coords.reserve(n * dim);
  std::vector<double> x(dim);
  std::uint64_t drawn = 0;
  for (std::size_t i = 0; i < n;) {
    double s = 0.0;
    for (double& v : x) {
      v = rng.uniform(-1.0, 1.0);
      s += v * v;
    }
    ++drawn;
    if (s > 1.0) continue;
    for (std::size_t c = 0; c < dim; ++c) coords.push_back((center.empty() ? 0.0 : center[c]) + radius * x[c]);
    ++i;
  }
  if (proposals) *proposals = drawn;
  return PointSet(dim, std::move(coords));
}

ExperimentReport run_relative_outlyingness_experiment(const SimulationConfig& cfg) {
  validate(cfg);
  const std::vector<Point> outliers = resolved_outliers(cfg);
  require(outliers.size() == 1, "the relative outlyingness experiment needs exactly one outlier");
  const auto start = std::chrono::steady_clock::now();

  const std::size_t reps = cfg.replicates;
  std::vector<std::vector<double>> per_replicate(reps);
  std::vector<std::string> failures(reps);
  parallel_for(reps, resolve_threads(cfg.threads), [&](std::size_t r) {
    try {
      const PointSet points = sample_shell(cfg, r);
      const ScoreTable table = score(delaunay(points));
      std::vector<double> ratio = relative_outlyingness(table, cfg.n_inliers);
      ratio.resize(cfg.n_inliers);
      per_replicate[r] = std::move(ratio);
    } catch (const GeometryError& e) {
      failures[r] = e.what();
    }
  });

  ExperimentReport report;
  report.config = cfg;
  report.config.outliers = outliers;
  std::vector<double> all;
  all.reserve(reps * cfg.n_inliers);
  for (std::size_t r = 0; r < reps; ++r) {
    if (!failures[r].empty()) {
      ++report.failed_replicates;
      if (report.first_failure.empty()) {
        report.first_failure = "replicate " + std::to_string(r) + ": " + failures[r];
      }
      continue;
    }
    all.insert(all.end(), per_replicate[r].begin(), per_replicate[r].end());
  }
  report.total_ratios = all.size();

  for (double cutoff : cfg.thresholds) {
    ThresholdCount tc;
    tc.cutoff = cutoff;
    for (double v : all) {
      tc.at_least += v >= cutoff ? 1 : 0;
      tc.above += v > cutoff ? 1 : 0;
    }
    report.thresholds.push_back(tc);
  }

  const std::size_t bins = cfg.histogram_bins;
  report.max_ratio = all.empty() ? 0.0 : *std::max_element(all.begin(), all.end());
  report.histogram.counts.assign(bins, 0);
  report.histogram.edges.resize(bins + 1);
  const double width = report.max_ratio / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) report.histogram.edges[b] = width * static_cast<double>(b);
  report.histogram.edges[bins] = report.max_ratio;
  for (double v : all) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>(v / width) : 0;
    ++report.histogram.counts[std::min(b, bins - 1)];
  }
  report.median_ratio = all.empty() ? 0.0 : median(all);
  if (cfg.keep_ratios) report.ratios = std::move(per_replicate);
  report.runtime_seconds = seconds_since(start);
  return report;
}

void validate(const ConsistencyConfig& cfg) {
  require(cfg.dim >= 1 && cfg.dim <= kMaxDimension,
          "dim must be in [1, " + std::to_string(kMaxDimension) + "]");
  require(std::isfinite(cfg.radius) && cfg.radius > 0.0, "radius must be positive and finite");
  require(cfg.center.empty() || cfg.center.size() == cfg.dim, "center dimension mismatch");
  for (double c : cfg.center) require(std::isfinite(c), "center must be finite");
  require(!cfg.outliers.empty(), "at least one outlier is required");
  for (const Point& p : cfg.outliers) require(p.dim() == cfg.dim, "outlier dimension mismatch");
  require(!cfg.schedule.empty(), "the n schedule must not be empty");
  for (std::size_t n : cfg.schedule) require(n >= cfg.dim + 1, "every n must be at least dim + 1");
  require(cfg.replicates >= 1, "replicates must be at least 1");
}

ConsistencyReport run_consistency_experiment(const ConsistencyConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t k = cfg.dim;
  std::vector<double> center = cfg.center;
  if (center.empty()) center.assign(k, 0.0);

  ConsistencyReport report;
  report.config = cfg;
  double dist = std::numeric_limits<double>::infinity();
  for (const Point& p : cfg.outliers) dist = std::min(dist, distance(p, center) - cfg.radius);
  if (!(dist > 0.0)) throw InputError("outliers must lie strictly outside the ball");
  report.distance_to_support = dist;
  report.delta = dist;
  for (std::size_t a = 0; a < cfg.outliers.size(); ++a) {
    for (std::size_t b = a + 1; b < cfg.outliers.size(); ++b) {
      const double d = distance(cfg.outliers[a], cfg.outliers[b]);
      report.outlier_separation = std::min(report.outlier_separation.value_or(d), d);
    }
  }
  if (report.outlier_separation) {
    if (!(*report.outlier_separation > 0.0)) throw InputError("outliers must be distinct");
    report.delta = std::min(report.delta, *report.outlier_separation);
  }

  const std::size_t threads = resolve_threads(cfg.threads);
  for (std::size_t level_index = 0; level_index < cfg.schedule.size(); ++level_index) {
    const std::size_t n = cfg.schedule[level_index];
    ConsistencyLevel level;
    level.n = n;
    const std::size_t reps = cfg.replicates;
    std::vector<double> lam(reps, 0.0), lam_u(reps, 0.0), out_min(reps, 0.0), in_max(reps, 0.0);
    std::vector<char> failed(reps, 0);
    parallel_for(reps, threads, [&](std::size_t r) {
      try {
        const PointSet inliers =
            sample_ball(k, n, cfg.radius, center, derive_key(cfg.seed, n, r));
        std::vector<double> coords(inliers.data().begin(), inliers.data().end());
        for (const Point& p : cfg.outliers) coords.insert(coords.end(), p.coords().begin(), p.coords().end());
        const PointSet all(k, std::move(coords));
        const DelaunayGraph graph = delaunay(all);
        const ScoreTable table = score(graph);
        double longest = 0.0;
        for (const Edge& e : graph.edges()) {
          if (e.i < n && e.j < n) longest = std::max(longest, e.length);
        }
        lam[r] = longest;
        lam_u[r] = max_edge_length(delaunay(inliers));
        out_min[r] = *std::min_element(table.scores.begin() + static_cast<std::ptrdiff_t>(n), table.scores.end());
        in_max[r] = *std::max_element(table.scores.begin(), table.scores.begin() + static_cast<std::ptrdiff_t>(n));
      } catch (const GeometryError&) {
        failed[r] = 1;
      }
    });
    for (std::size_t r = 0; r < reps; ++r) {
      if (failed[r]) {
        ++level.failed_replicates;
        continue;
      }
      level.max_inlier_edge.push_back(lam[r]);
      level.max_edge_inliers_only.push_back(lam_u[r]);
      level.min_outlier_score.push_back(out_min[r]);
      level.max_inlier_score.push_back(in_max[r]);
      if (out_min[r] < report.delta) ++level.violations;
    }
    level.median_max_inlier_edge = median(level.max_inlier_edge);
    level.median_max_edge_inliers_only = median(level.max_edge_inliers_only);
    level.median_min_outlier_score = median(level.min_outlier_score);
    level.median_max_inlier_score = median(level.max_inlier_score);
    report.violations += level.violations;
    report.levels.push_back(std::move(level));
  }

  std::vector<double> lam_med, lam_u_med, gamma_med;
  for (const ConsistencyLevel& level : report.levels) {
    lam_med.push_back(level.median_max_inlier_edge);
    lam_u_med.push_back(level.median_max_edge_inliers_only);
    gamma_med.push_back(level.median_max_inlier_score);
  }
  report.max_inlier_edge_decreasing = strictly_decreasing(lam_med);
  report.max_edge_inliers_only_decreasing = strictly_decreasing(lam_u_med);
  report.max_inlier_score_decreasing = strictly_decreasing(gamma_med);
  report.runtime_seconds = seconds_since(start);
  return report;
}

}  // namespace delo
