// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and sample
// sizes are fixed here; pass criterion numbers to run a subset.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "delo/geometry.hpp"
#include "delo/oracle.hpp"
#include "delo/outlyingness.hpp"
#include "delo/random.hpp"
#include "delo/simulation.hpp"
#include "delo/triangulation.hpp"

using namespace delo;

namespace {

// Pinned tolerances.
constexpr double kTriangleRelTol = 1e-12;
constexpr double kScaleRelTol = 1e-12;
constexpr double kRigidRelTol = 1e-9;
constexpr double kDim4MaxFractionAtLeast09 = 0.001;
constexpr double kDim4MaxMedian = 0.5;
constexpr std::uint64_t kDim3MaxAbove1 = 1;
constexpr double kDim5MaxFractionAtLeast09 = 0.01;

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Pair = std::pair<std::uint32_t, std::uint32_t>;

std::vector<Pair> pairs_of(std::span<const Edge> edges) {
  std::vector<Pair> out;
  for (const Edge& e : edges) out.emplace_back(e.i, e.j);
  return out;
}

PointSet cube_points(std::size_t k, std::size_t n, std::uint64_t key) {
  KeyedStream rng(key, 0x4143434550);
  std::vector<double> c(n * k);
  for (double& v : c) v = rng.uniform(-1.0, 1.0);
  return PointSet(k, std::move(c));
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1 ------------------------------------------------------------------------

Outcome oracle_agreement() {
  std::atomic<int> mismatches{0}, sets{0};
  std::mutex mu;
  std::string first;
  for (std::size_t k : {2u, 3u, 4u}) {
    parallel_for(200, resolve_threads(0), [&](std::size_t t) {
      KeyedStream pick(derive_key(kSeed, k, t), 0x4e);
      const std::size_t n = k + 2 + pick.below(30 - (k + 2) + 1);
      const PointSet pts = cube_points(k, n, derive_key(kSeed, k, t));
      std::string why;
      try {
        const auto hull = pairs_of(delaunay(pts).edges());
        const auto brute = pairs_of(oracle::delaunay_bruteforce(pts).edges());
        const auto witness = pairs_of(oracle::witness_edges(pts));
        if (hull != brute || hull != witness) why = "edge sets differ";
      } catch (const std::exception& e) {
        why = e.what();
      }
      ++sets;
      if (!why.empty()) {
        ++mismatches;
        std::lock_guard lock(mu);
        if (first.empty()) first = fmt("; first mismatch k=%zu set=%zu n=%zu: ", k, t, n) + why;
      }
    });
  }
  return {mismatches == 0, fmt("%d sets, %d mismatches", sets.load(), mismatches.load()) + first};
}

// 2 ------------------------------------------------------------------------

Outcome triangle() {
  const PointSet pts{{0.0, 0.0}, {3.0, 0.0}, {0.0, 4.0}};
  const ScoreTable t = score(delaunay(pts));
  const double want[] = {std::sqrt(12.0), std::sqrt(15.0), std::sqrt(20.0)};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(t.scores[i] - want[i]) / want[i]);
  return {worst <= kTriangleRelTol, fmt("max relative error %.3g", worst)};
}

// 3 ------------------------------------------------------------------------

// Hull vertex count by monotone chain with exact orientation.
std::size_t hull_size(const PointSet& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(pts[a][0], pts[a][1]) < std::pair(pts[b][0], pts[b][1]);
  });
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t m = 0;
  const auto left = [&](std::size_t o, std::size_t a, std::size_t b) {
    return orient({pts[o], pts[a], pts[b]}) == Sign::positive;
  };
  for (std::size_t i : idx) {
    while (m >= 2 && !left(h[m - 2], h[m - 1], i)) --m;
    h[m++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = m + 1; t-- > 0;) {
    const std::size_t i = idx[t];
    while (m >= lower && !left(h[m - 2], h[m - 1], i)) --m;
    h[m++] = i;
  }
  return m - 1;
}

Outcome euler_counts() {
  int bad = 0;
  std::size_t largest = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    KeyedStream pick(derive_key(kSeed, 3, t), 0x4e);
    const std::size_t n = 3 + pick.below(498);
    largest = std::max(largest, n);
    const PointSet pts = cube_points(2, n, derive_key(kSeed, 30, t));
    const DelaunayGraph g = delaunay(pts);
    const std::size_t h = hull_size(pts);
    if (g.edges().size() != 3 * n - 3 - h || g.simplices().size() != 2 * n - 2 - h) ++bad;
  }
  return {bad == 0, fmt("100 sets (largest n=%zu), %d violations", largest, bad)};
}

// 4-6 ----------------------------------------------------------------------

SimulationConfig shell(std::size_t dim, std::size_t n, std::size_t replicates) {
  SimulationConfig c;
  c.dim = dim;
  c.n_inliers = n;
  c.replicates = replicates;
  c.seed = kSeed;
  c.thresholds = {0.9, 1.0};
  return c;
}

std::string shell_summary(const ExperimentReport& r) {
  const double total = static_cast<double>(r.total_ratios);
  return fmt("%llu ratios, >=0.9: %llu (%.4f%%), >1: %llu, median %.4f, max %.4f, failed replicates %llu",
             static_cast<unsigned long long>(r.total_ratios),
             static_cast<unsigned long long>(r.thresholds[0].at_least), 100.0 * r.thresholds[0].at_least / total,
             static_cast<unsigned long long>(r.thresholds[1].above), r.median_ratio, r.max_ratio,
             static_cast<unsigned long long>(r.failed_replicates));
}

Outcome shell_dim4() {
  const ExperimentReport r = run_relative_outlyingness_experiment(shell(4, 299, 200));
  const double frac = static_cast<double>(r.thresholds[0].at_least) / static_cast<double>(r.total_ratios);
  return {r.failed_replicates == 0 && frac < kDim4MaxFractionAtLeast09 && r.median_ratio < kDim4MaxMedian,
          shell_summary(r) + fmt("; need fraction < %.2f%% and median < %.2f", 100 * kDim4MaxFractionAtLeast09,
                                 kDim4MaxMedian)};
}

Outcome shell_dim3() {
  const ExperimentReport r = run_relative_outlyingness_experiment(shell(3, 199, 200));
  return {r.failed_replicates == 0 && r.thresholds[1].above <= kDim3MaxAbove1,
          shell_summary(r) + fmt("; need >1 count <= %llu", static_cast<unsigned long long>(kDim3MaxAbove1))};
}

Outcome shell_dim5() {
  const ExperimentReport r = run_relative_outlyingness_experiment(shell(5, 199, 100));
  const double frac = static_cast<double>(r.thresholds[0].at_least) / static_cast<double>(r.total_ratios);
  return {r.failed_replicates == 0 && frac < kDim5MaxFractionAtLeast09,
          shell_summary(r) + fmt("; need fraction < %.1f%%", 100 * kDim5MaxFractionAtLeast09)};
}

// 7-8 ----------------------------------------------------------------------

ConsistencyConfig ball() {
  ConsistencyConfig c;
  c.dim = 2;
  c.radius = 1.0;
  c.outliers = {Point{3.0, 0.0}};
  c.schedule = {50, 100, 200, 400};
  c.replicates = 50;
  c.seed = kSeed;
  return c;
}

Outcome outlier_bound(const ConsistencyReport& r) {
  double lowest = INFINITY;
  std::uint64_t failed = 0, reps = 0;
  for (const ConsistencyLevel& l : r.levels) {
    for (double s : l.min_outlier_score) lowest = std::min(lowest, s);
    failed += l.failed_replicates;
    reps += l.min_outlier_score.size();
  }
  return {r.violations == 0 && failed == 0 && reps == 200 && lowest >= r.delta,
          fmt("delta %.6g, %llu replicates, lowest outlier score %.6f, violations %llu, failed %llu", r.delta,
              static_cast<unsigned long long>(reps), lowest, static_cast<unsigned long long>(r.violations),
              static_cast<unsigned long long>(failed))};
}

Outcome trends(const ConsistencyReport& r) {
  std::string lam = "median Lambda_n", gam = "median max inlier score";
  for (const ConsistencyLevel& l : r.levels) {
    lam += fmt(" %.4f", l.median_max_inlier_edge);
    gam += fmt(" %.4f", l.median_max_inlier_score);
  }
  return {r.max_inlier_edge_decreasing && r.max_inlier_score_decreasing, lam + "; " + gam};
}

// 9 ------------------------------------------------------------------------

Outcome invariance() {
  int failures = 0;
  double worst_scale = 0.0, worst_rigid = 0.0;
  for (std::size_t t = 0; t < 100; ++t) {
    KeyedStream rng(derive_key(kSeed, 9, t), 0x494e56);
    const std::size_t k = 2 + rng.below(3);
    const std::size_t n = k + 8 + rng.below(50);
    const PointSet pts = cube_points(k, n, derive_key(kSeed, 90, t));
    const ScoreTable base = score(delaunay(pts));

    // Scaling.
    const double c = std::exp(rng.uniform(std::log(0.01), std::log(100.0)));
    std::vector<double> scaled(pts.data().begin(), pts.data().end());
    for (double& v : scaled) v *= c;
    const ScoreTable s = score(delaunay(PointSet(k, scaled)));

    // Rotation as a product of Givens rotations in every coordinate plane,
    // followed by a translation.
    std::vector<double> moved(pts.data().begin(), pts.data().end());
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        const double co = std::cos(th), si = std::sin(th);
        for (std::size_t i = 0; i < n; ++i) {
          double& x = moved[i * k + a];
          double& y = moved[i * k + b];
          const double nx = co * x - si * y, ny = si * x + co * y;
          x = nx;
          y = ny;
        }
      }
    }
    for (std::size_t d = 0; d < k; ++d) {
      const double shift = rng.uniform(-50.0, 50.0);
      for (std::size_t i = 0; i < n; ++i) moved[i * k + d] += shift;
    }
    const ScoreTable m = score(delaunay(PointSet(k, moved)));

    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double es = std::abs(s.scores[i] - c * base.scores[i]) / (c * base.scores[i]);
      const double er = std::abs(m.scores[i] - base.scores[i]) / base.scores[i];
      worst_scale = std::max(worst_scale, es);
      worst_rigid = std::max(worst_rigid, er);
      ok &= es <= kScaleRelTol && er <= kRigidRelTol;
    }

    // Ten nested thresholds, each halfway between two consecutive sorted
    // scores so rounding cannot move a score across it; the scaled sample
    // flags the same rows at c * alpha.
    std::vector<double> sorted = base.scores;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> previous;
    for (std::size_t a = 0; a < 10; ++a) {
      const std::size_t at = a * (n - 2) / 9;
      const double alpha = 0.5 * (sorted[at] + sorted[at + 1]);
      const std::vector<std::size_t> now = flag(base, alpha).flagged;
      if (a > 0) ok &= std::includes(previous.begin(), previous.end(), now.begin(), now.end());
      ok &= flag(s, c * alpha).flagged == now;
      previous = now;
    }
    if (!ok) ++failures;
  }
  return {failures == 0, fmt("100 inputs, %d failures; worst scale error %.3g (tol %.0e), worst rigid error %.3g "
                             "(tol %.0e)",
                             failures, worst_scale, kScaleRelTol, worst_rigid, kRigidRelTol)};
}

// 10 -----------------------------------------------------------------------

std::string cli_json(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (cli::run(args, out, err) != 0) return "error: " + err.str();
  return out.str();
}

Outcome determinism() {
  const std::string seed = std::to_string(kSeed);
  const std::vector<std::string> sim = {"simulate", "--dim", "4", "--n", "299", "--replicates", "200", "--seed", seed};
  const std::vector<std::string> con = {"consistency", "--dim",       "2", "--radius", "1",
                                        "--outlier",   "3,0",         "--schedule", "50,100,200,400",
                                        "--replicates", "50", "--seed", seed};
  const std::string a_sim = cli_json(sim), a_con = cli_json(con);
  // Second run on a single worker thread.
  const char* saved = std::getenv("DELO_THREADS");
  const std::string restore = saved ? saved : "";
  setenv("DELO_THREADS", "1", 1);
  const std::string b_sim = cli_json(sim), b_con = cli_json(con);
  if (saved) {
    setenv("DELO_THREADS", restore.c_str(), 1);
  } else {
    unsetenv("DELO_THREADS");
  }
  const bool ok = a_sim == b_sim && a_con == b_con && a_sim.rfind("error", 0) != 0 && a_con.rfind("error", 0) != 0;
  return {ok, fmt("shell report %zu bytes %s, consistency report %zu bytes %s", a_sim.size(),
                  a_sim == b_sim ? "identical" : "DIFFERENT", a_con.size(), a_con == b_con ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  std::optional<ConsistencyReport> consistency;
  const auto ball_report = [&]() -> const ConsistencyReport& {
    if (!consistency) consistency = run_consistency_experiment(ball());
    return *consistency;
  };

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle triple agreement (k=2,3,4; 200 sets each)", oracle_agreement},
      {"analytic triangle scores", triangle},
      {"2D Euler counts", euler_counts},
      {"shell experiment dim 4 (n=299, 200 replicates)", shell_dim4},
      {"shell experiment dim 3 (n=199, 200 replicates)", shell_dim3},
      {"shell experiment dim 5 (n=199, 100 replicates)", shell_dim5},
      {"outlier score lower bound delta", [&] { return outlier_bound(ball_report()); }},
      {"Lambda_n and inlier score trends", [&] { return trends(ball_report()); }},
      {"scale/rigid invariance and nested flags", invariance},
      {"deterministic JSON reports", determinism},
  };

  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int number = static_cast<int>(c + 1);
    if (!only.empty() && !only.count(number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %2d: %s -- %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", number, criteria[c].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
