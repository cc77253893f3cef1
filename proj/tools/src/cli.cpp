#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "csv_input.hpp"
#include "delo/geometry.hpp"
#include "delo/oracle.hpp"
#include "delo/outlyingness.hpp"
#include "delo/simulation.hpp"
#include "delo/triangulation.hpp"

namespace delo::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kJitterHint =
    "rerun with --jitter to perturb every coordinate by up to 1e-9 times the bounding-box "
    "diameter";

struct InputOptions {
  std::string input;
  std::string columns;
  std::string delimiter = ",";
  std::string header = "auto";
  bool lenient = false;
  bool jitter = false;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "csv";
};

struct Context {
  std::optional<Table> table;  // set once the input has been read
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const std::string& f : split_fields(text, ',')) {
    double v = 0.0;
    if (!parse_number(f, v)) throw InputError(what + ": '" + f + "' is not a finite number");
    out.push_back(v);
  }
  return out;
}

void add_input_options(CLI::App* sub, InputOptions& o, bool input_required) {
  auto* in = sub->add_option("input", o.input, "CSV file with one point per row ('-' for stdin)");
  if (input_required) in->required();
  sub->add_option("--columns", o.columns, "Comma-separated column names or zero-based indices");
  sub->add_option("--delimiter", o.delimiter, "Field delimiter (one character)")->capture_default_str();
  sub->add_option("--header", o.header, "Header row: auto, yes or no")
      ->check(CLI::IsMember({"auto", "yes", "no"}))
      ->capture_default_str();
  sub->add_flag("--lenient", o.lenient, "Skip rows with missing or unparseable values");
  sub->add_flag("--jitter", o.jitter, "Perturb coordinates to break ties and cospherical sets");
  sub->add_option("--seed", o.seed, "Jitter seed")->capture_default_str();
  sub->add_option("--output,-o", o.output, "Write the report to this file instead of stdout");
  sub->add_option("--format", o.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

Table load_table(const InputOptions& o, std::ostream& err) {
  ColumnSpec spec;
  if (o.delimiter == "\\t" || o.delimiter == "tab") {
    spec.delimiter = '\t';
  } else if (o.delimiter.size() == 1) {
    spec.delimiter = o.delimiter[0];
  } else {
    throw InputError("--delimiter must be a single character");
  }
  if (!o.columns.empty()) spec.columns = split_fields(o.columns, ',');
  spec.header = o.header == "yes" ? HeaderMode::present
                : o.header == "no" ? HeaderMode::absent
                                   : HeaderMode::automatic;
  spec.lenient = o.lenient;
  Table t = o.input == "-" ? read_table(std::cin, spec) : read_table_file(o.input, spec);
  if (t.skipped > 0) err << "warning: skipped " << t.skipped << " invalid row(s)\n";
  return t;
}

PointSet to_points(const Table& t, const InputOptions& o) {
  if (o.jitter) return PointSet(t.dim, jitter(t.dim, t.coords, o.seed));
  return PointSet(t.dim, t.coords);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
  if (!file) throw InputError("failed writing '" + path + "'");
}

void csv_preamble(std::ostream& s, const InputOptions& o) {
  s << "#schema_version=" << kSchemaVersion << '\n';
  if (o.jitter) s << "#jitter_seed=" << o.seed << '\n';
}

Json coords_json(const Table& t, std::size_t i) {
  Json c = Json::array();
  for (std::size_t d = 0; d < t.dim; ++d) c.push_back(t.coords[i * t.dim + d]);
  return c;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json header_json(const char* command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

// --- score -----------------------------------------------------------------

struct ScoreOptions {
  InputOptions in;
  std::string edge_list;
  std::optional<double> alpha;
};

std::string cmd_score(const ScoreOptions& o, Context& ctx, std::ostream& err) {
  std::optional<DelaunayGraph> graph;
  if (!o.in.input.empty()) {
    ctx.table = load_table(o.in, err);
    const PointSet points = to_points(*ctx.table, o.in);
    if (o.edge_list.empty()) graph = delaunay(points);
  }
  if (!o.edge_list.empty()) {
    std::vector<Edge> edges = read_edge_list_file(o.edge_list);
    std::size_t n = 0;
    for (const Edge& e : edges) n = std::max<std::size_t>(n, std::max(e.i, e.j) + std::size_t{1});
    if (ctx.table) {
      if (n > ctx.table->size()) throw InputError("edge list refers to more points than the input has");
      n = ctx.table->size();
    }
    graph = DelaunayGraph::from_edges(n, ctx.table ? ctx.table->dim : 0, std::move(edges));
  }
  if (!graph) throw InputError("score needs an input file or --edge-list");
  const ScoreTable table = score(*graph);
  std::vector<char> flagged(table.n, 0);
  if (o.alpha) {
    for (std::size_t i : flag(table, *o.alpha).flagged) flagged[i] = 1;
  }
  const Table* t = ctx.table ? &*ctx.table : nullptr;

  if (o.in.format == "json") {
    Json j = header_json("score");
    j["n"] = table.n;
    j["dim"] = table.dim;
    if (o.alpha) j["alpha"] = *o.alpha;
    if (o.in.jitter) j["jitter_seed"] = o.in.seed;
    Json records = Json::array();
    for (std::size_t i = 0; i < table.n; ++i) {
      Json r;
      r["index"] = i;
      if (t) {
        r["row"] = t->rows[i];
        r["coords"] = coords_json(*t, i);
      }
      r["score"] = table.scores[i];
      r["log_score"] = table.log_scores[i];
      if (o.alpha) r["flag"] = flagged[i] != 0;
      records.push_back(std::move(r));
    }
    j["records"] = std::move(records);
    return dump(j);
  }

  std::ostringstream s;
  csv_preamble(s, o.in);
  s << "index";
  if (t) {
    s << ",row";
    for (const std::string& name : t->names) s << ',' << name;
  }
  s << ",score,log_score" << (o.alpha ? ",flag" : "") << '\n';
  for (std::size_t i = 0; i < table.n; ++i) {
    s << i;
    if (t) {
      s << ',' << t->rows[i];
      for (std::size_t d = 0; d < t->dim; ++d) s << ',' << format_number(t->coords[i * t->dim + d]);
    }
    s << ',' << format_number(table.scores[i]) << ',' << format_number(table.log_scores[i]);
    if (o.alpha) s << ',' << (flagged[i] ? 1 : 0);
    s << '\n';
  }
  return s.str();
}

// --- flag ------------------------------------------------------------------

struct FlagOptions {
  InputOptions in;
  double alpha = 0.0;
};

std::string cmd_flag(const FlagOptions& o, Context& ctx, std::ostream& err) {
  ctx.table = load_table(o.in, err);
  const Table& t = *ctx.table;
  const ScoreTable table = score(delaunay(to_points(t, o.in)));
  const FlagReport report = flag(table, o.alpha);

  if (o.in.format == "json") {
    Json j = header_json("flag");
    j["alpha"] = o.alpha;
    j["total"] = table.n;
    j["flagged_count"] = report.flagged.size();
    if (o.in.jitter) j["jitter_seed"] = o.in.seed;
    Json rows = Json::array();
    for (std::size_t i : report.flagged) {
      Json r;
      r["index"] = i;
      r["row"] = t.rows[i];
      r["coords"] = coords_json(t, i);
      r["score"] = table.scores[i];
      rows.push_back(std::move(r));
    }
    j["flagged"] = std::move(rows);
    return dump(j);
  }
  std::ostringstream s;
  csv_preamble(s, o.in);
  s << "#alpha=" << format_number(o.alpha) << ",flagged=" << report.flagged.size()
    << ",total=" << table.n << '\n';
  s << "index,row";
  for (const std::string& name : t.names) s << ',' << name;
  s << ",score\n";
  for (std::size_t i : report.flagged) {
    s << i << ',' << t.rows[i];
    for (std::size_t d = 0; d < t.dim; ++d) s << ',' << format_number(t.coords[i * t.dim + d]);
    s << ',' << format_number(table.scores[i]) << '\n';
  }
  return s.str();
}

// --- triangulate -------------------------------------------------------------

struct TriangulateOptions {
  InputOptions in;
  bool oracle = false;
  bool simplices = false;
  std::string simplices_file;
};

std::string cmd_triangulate(const TriangulateOptions& o, Context& ctx, std::ostream& err) {
  ctx.table = load_table(o.in, err);
  if (o.oracle && ctx.table->size() > oracle::kBruteforceLimit) {
    throw InputError("--oracle is limited to n <= " + std::to_string(oracle::kBruteforceLimit));
  }
  const PointSet points = to_points(*ctx.table, o.in);
  const DelaunayGraph graph = delaunay(points);

  std::optional<bool> brute_ok, witness_ok;
  if (o.oracle) {
    const auto same = [&](std::span<const Edge> other) {
      if (other.size() != graph.edges().size()) return false;
      for (std::size_t t = 0; t < other.size(); ++t) {
        if (other[t].i != graph.edges()[t].i || other[t].j != graph.edges()[t].j) return false;
      }
      return true;
    };
    if (points.size() >= points.dim() + 1) brute_ok = same(oracle::delaunay_bruteforce(points).edges());
    witness_ok = same(oracle::witness_edges(points));
  }
  const bool agreement = brute_ok.value_or(true) && witness_ok.value_or(true);

  if (o.in.format == "json") {
    Json j = header_json("triangulate");
    j["n"] = graph.size();
    j["dim"] = graph.dim();
    if (o.in.jitter) j["jitter_seed"] = o.in.seed;
    Json edges = Json::array();
    for (const Edge& e : graph.edges()) edges.push_back({{"i", e.i}, {"j", e.j}, {"length", e.length}});
    j["edges"] = std::move(edges);
    if (o.simplices) j["simplices"] = graph.simplices();
    if (o.oracle) {
      Json oj;
      oj["agreement"] = agreement;
      if (brute_ok) oj["bruteforce_agreement"] = *brute_ok;
      oj["witness_agreement"] = *witness_ok;
      j["oracle"] = std::move(oj);
    }
    return dump(j);
  }
  if (!o.simplices_file.empty()) {
    std::ostringstream sx;
    sx << "#schema_version=" << kSchemaVersion << '\n';
    for (std::size_t v = 0; v <= graph.dim(); ++v) sx << (v ? "," : "") << 'v' << v;
    sx << '\n';
    for (const auto& cell : graph.simplices()) {
      for (std::size_t v = 0; v < cell.size(); ++v) sx << (v ? "," : "") << cell[v];
      sx << '\n';
    }
    emit(sx.str(), o.simplices_file, std::cout);
  }
  std::ostringstream s;
  csv_preamble(s, o.in);
  if (o.oracle) s << "#oracle_agreement=" << (agreement ? "true" : "false") << '\n';
  s << "i,j,length\n";
  for (const Edge& e : graph.edges()) s << e.i << ',' << e.j << ',' << format_number(e.length) << '\n';
  return s.str();
}

// --- check -----------------------------------------------------------------

struct CheckOptions {
  InputOptions in;
  bool exhaustive = false;
};

std::string cmd_check(const CheckOptions& o, Context& ctx, std::ostream& err) {
  ctx.table = load_table(o.in, err);
  const Table& t = *ctx.table;
  const PointSet points = to_points(t, o.in);
  const GeneralPositionReport r = check_general_position(
      points, o.exhaustive ? GeneralPositionMode::exhaustive : GeneralPositionMode::lazy);
  Json j = header_json("check");
  j["n"] = points.size();
  j["dim"] = points.dim();
  j["general_position"] = r.ok();
  j["spans"] = r.spans;
  j["no_cospherical"] = r.no_cospherical;
  j["exhaustive"] = r.exhaustive;
  j["violation"] = r.violation ? Json(to_string(*r.violation)) : Json(nullptr);
  Json rows = Json::array();
  for (std::size_t i : r.violating_subset) rows.push_back(t.rows[i]);
  j["violating_points"] = r.violating_subset;
  j["violating_rows"] = std::move(rows);
  return dump(j);
}

// --- simulate ----------------------------------------------------------------

struct SimulateOptions {
  SimulationConfig cfg;
  std::string thresholds = "0.9,1";
  std::string outlier;
  bool full_scale = false;
  bool timing = false;
  std::string histogram;
  std::string output;
  std::string format = "json";
};

Json histogram_json(const Histogram& h) {
  Json j;
  j["edges"] = h.edges;
  j["counts"] = h.counts;
  return j;
}

std::string cmd_simulate(SimulateOptions o, CLI::App* sub, std::ostream& out) {
  if (o.format != "json") throw InputError("simulate writes JSON; use --histogram for CSV");
  SimulationConfig cfg = o.cfg;
  if (o.full_scale) {
    if (sub->count("--replicates") > 0) throw InputError("--full-scale and --replicates are exclusive");
    cfg.replicates = 5000;
  }
  cfg.thresholds = parse_list(o.thresholds, "--thresholds");
  if (!o.outlier.empty()) cfg.outliers = {Point(parse_list(o.outlier, "--outlier"))};
  validate(cfg);
  const ExperimentReport r = run_relative_outlyingness_experiment(cfg);

  Json j = header_json("simulate");
  Json c;
  c["dim"] = cfg.dim;
  c["n"] = cfg.n_inliers;
  c["replicates"] = cfg.replicates;
  c["seed"] = cfg.seed;
  c["r_lo"] = cfg.r_lo;
  c["r_hi"] = cfg.r_hi;
  c["thresholds"] = cfg.thresholds;
  c["outlier"] = std::vector<double>(r.config.outliers.front().coords().begin(),
                                      r.config.outliers.front().coords().end());
  c["histogram_bins"] = cfg.histogram_bins;
  j["config"] = std::move(c);
  j["total_ratios"] = r.total_ratios;
  j["failed_replicates"] = r.failed_replicates;
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  Json th = Json::array();
  const double total = static_cast<double>(r.total_ratios);
  for (const ThresholdCount& tc : r.thresholds) {
    Json e;
    e["cutoff"] = tc.cutoff;
    e["at_least"] = tc.at_least;
    e["above"] = tc.above;
    e["fraction_at_least"] = total > 0 ? static_cast<double>(tc.at_least) / total : 0.0;
    e["fraction_above"] = total > 0 ? static_cast<double>(tc.above) / total : 0.0;
    th.push_back(std::move(e));
  }
  j["thresholds"] = std::move(th);
  j["median_ratio"] = r.median_ratio;
  j["max_ratio"] = r.max_ratio;
  j["histogram"] = histogram_json(r.histogram);
  if (o.timing) j["runtime_seconds"] = r.runtime_seconds;

  if (!o.histogram.empty()) {
    std::ostringstream h;
    h << "#schema_version=" << kSchemaVersion << '\n' << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b < r.histogram.counts.size(); ++b) {
      h << format_number(r.histogram.edges[b]) << ',' << format_number(r.histogram.edges[b + 1]) << ','
        << r.histogram.counts[b] << '\n';
    }
    emit(h.str(), o.histogram, out);
  }
  return dump(j);
}

// --- consistency -------------------------------------------------------------

struct ConsistencyOptions {
  ConsistencyConfig cfg;
  std::string center;
  std::vector<std::string> outliers;
  std::string schedule = "50,100,200,400";
  bool timing = false;
  std::string output;
  std::string format = "json";
};

std::string cmd_consistency(ConsistencyOptions o) {
  if (o.format != "json") throw InputError("consistency writes JSON");
  ConsistencyConfig cfg = o.cfg;
  cfg.center = parse_list(o.center, "--center");
  cfg.outliers.clear();
  if (o.outliers.empty()) {
    std::vector<double> p(cfg.dim, 0.0);
    p[0] = 3.0;
    cfg.outliers.emplace_back(std::move(p));
  }
  for (const std::string& s : o.outliers) cfg.outliers.emplace_back(parse_list(s, "--outlier"));
  cfg.schedule.clear();
  for (double v : parse_list(o.schedule, "--schedule")) {
    if (v < 1 || v != std::floor(v) || v > 1e7) throw InputError("--schedule needs positive integers");
    cfg.schedule.push_back(static_cast<std::size_t>(v));
  }
  validate(cfg);
  const ConsistencyReport r = run_consistency_experiment(cfg);

  Json j = header_json("consistency");
  Json c;
  c["dim"] = cfg.dim;
  c["radius"] = cfg.radius;
  c["center"] = cfg.center.empty() ? std::vector<double>(cfg.dim, 0.0) : cfg.center;
  Json outs = Json::array();
  for (const Point& p : cfg.outliers) outs.push_back(std::vector<double>(p.coords().begin(), p.coords().end()));
  c["outliers"] = std::move(outs);
  c["schedule"] = cfg.schedule;
  c["replicates"] = cfg.replicates;
  c["seed"] = cfg.seed;
  j["config"] = std::move(c);
  j["delta"] = r.delta;
  j["distance_to_support"] = r.distance_to_support;
  j["outlier_separation"] = r.outlier_separation ? Json(*r.outlier_separation) : Json(nullptr);
  j["violations"] = r.violations;
  j["max_inlier_edge_decreasing"] = r.max_inlier_edge_decreasing;
  j["max_edge_inliers_only_decreasing"] = r.max_edge_inliers_only_decreasing;
  j["max_inlier_score_decreasing"] = r.max_inlier_score_decreasing;
  Json levels = Json::array();
  for (const ConsistencyLevel& l : r.levels) {
    Json e;
    e["n"] = l.n;
    e["violations"] = l.violations;
    e["failed_replicates"] = l.failed_replicates;
    e["median_max_inlier_edge"] = l.median_max_inlier_edge;
    e["median_max_edge_inliers_only"] = l.median_max_edge_inliers_only;
    e["median_min_outlier_score"] = l.median_min_outlier_score;
    e["median_max_inlier_score"] = l.median_max_inlier_score;
    e["max_inlier_edge"] = l.max_inlier_edge;
    e["max_edge_inliers_only"] = l.max_edge_inliers_only;
    e["min_outlier_score"] = l.min_outlier_score;
    e["max_inlier_score"] = l.max_inlier_score;
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  if (o.timing) j["runtime_seconds"] = r.runtime_seconds;
  return dump(j);
}

// --- errors ----------------------------------------------------------------

void add_row_context(Json& e, const std::vector<std::size_t>& points, const Context& ctx) {
  e["points"] = points;
  if (!ctx.table) return;
  Json rows = Json::array();
  Json lines = Json::array();
  for (std::size_t p : points) {
    if (p < ctx.table->size()) {
      rows.push_back(ctx.table->rows[p]);
      lines.push_back(ctx.table->lines[p]);
    }
  }
  e["rows"] = std::move(rows);
  e["lines"] = std::move(lines);
}

int report_error(std::ostream& err, const char* type, const std::string& message, int code,
                 const std::function<void(Json&)>& extra = {}) {
  Json e;
  e["type"] = type;
  e["message"] = message;
  e["exit_code"] = code;
  if (extra) extra(e);
  Json j;
  j["error"] = std::move(e);
  err << j.dump() << '\n';
  return code;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delaunay outlyingness: per-point scores, outlier flags, triangulations and "
               "simulation experiments.",
               "delo"};
  app.require_subcommand(1);

  ScoreOptions score_o;
  auto* score_cmd = app.add_subcommand("score", "Score every point (one record per input row)");
  add_input_options(score_cmd, score_o.in, false);
  score_cmd->add_option("--edge-list", score_o.edge_list,
                        "Score from an 'i,j,length' edge list written by triangulate");
  score_cmd->add_option("--alpha", score_o.alpha, "Also flag rows with score >= alpha")
      ->check(CLI::NonNegativeNumber);

  FlagOptions flag_o;
  auto* flag_cmd = app.add_subcommand("flag", "List rows whose score is at least --alpha");
  add_input_options(flag_cmd, flag_o.in, true);
  flag_cmd->add_option("--alpha", flag_o.alpha, "Threshold")->required()->check(CLI::NonNegativeNumber);

  TriangulateOptions tri_o;
  auto* tri_cmd = app.add_subcommand("triangulate", "Write the Delaunay edge list");
  add_input_options(tri_cmd, tri_o.in, true);
  tri_cmd->add_flag("--oracle", tri_o.oracle, "Cross-check against the brute-force oracles (n <= 40)");
  tri_cmd->add_flag("--simplices", tri_o.simplices, "Include Delaunay cells in JSON output");
  tri_cmd->add_option("--simplices-file", tri_o.simplices_file, "Write Delaunay cells as CSV");

  CheckOptions check_o;
  auto* check_cmd = app.add_subcommand("check", "Report whether the points are in general position");
  add_input_options(check_cmd, check_o.in, true);
  check_cmd->add_flag("--exhaustive", check_o.exhaustive, "Enumerate all subsets (n <= 20)");

  SimulateOptions sim_o;
  auto* sim_cmd = app.add_subcommand("simulate", "Relative outlyingness of a point inside a shell sample");
  sim_cmd->add_option("--dim", sim_o.cfg.dim, "Dimension")->check(CLI::Range(1, 6))->capture_default_str();
  sim_cmd->add_option("--n", sim_o.cfg.n_inliers, "Inliers per replicate")->capture_default_str();
  sim_cmd->add_option("--replicates", sim_o.cfg.replicates, "Replicates")->capture_default_str();
  sim_cmd->add_option("--seed", sim_o.cfg.seed, "Seed")->capture_default_str();
  sim_cmd->add_option("--r-lo", sim_o.cfg.r_lo, "Inner shell radius")->capture_default_str();
  sim_cmd->add_option("--r-hi", sim_o.cfg.r_hi, "Outer shell radius")->capture_default_str();
  sim_cmd->add_option("--thresholds", sim_o.thresholds, "Comma-separated ratio cutoffs")
      ->capture_default_str();
  sim_cmd->add_option("--outlier", sim_o.outlier, "Outlier coordinates (default: origin)");
  sim_cmd->add_option("--bins", sim_o.cfg.histogram_bins, "Histogram bins")->capture_default_str();
  sim_cmd->add_flag("--full-scale", sim_o.full_scale, "Run 5000 replicates");
  sim_cmd->add_flag("--timing", sim_o.timing, "Include wall-clock time in the report");
  sim_cmd->add_option("--histogram", sim_o.histogram, "Also write the histogram as CSV");
  sim_cmd->add_option("--output,-o", sim_o.output, "Write the report to this file");
  sim_cmd->add_option("--format", sim_o.format, "Output format (json)")->capture_default_str();

  ConsistencyOptions con_o;
  auto* con_cmd = app.add_subcommand("consistency", "Outlier and inlier scores for growing ball samples");
  con_cmd->add_option("--dim", con_o.cfg.dim, "Dimension")->check(CLI::Range(1, 6))->capture_default_str();
  con_cmd->add_option("--radius", con_o.cfg.radius, "Ball radius")->capture_default_str();
  con_cmd->add_option("--center", con_o.center, "Ball center (default: origin)");
  con_cmd->add_option("--outlier", con_o.outliers, "Outlier coordinates; repeatable (default: 3,0,...)");
  con_cmd->add_option("--schedule", con_o.schedule, "Comma-separated sample sizes")->capture_default_str();
  con_cmd->add_option("--replicates", con_o.cfg.replicates, "Replicates per sample size")
      ->capture_default_str();
  con_cmd->add_option("--seed", con_o.cfg.seed, "Seed")->capture_default_str();
  con_cmd->add_flag("--timing", con_o.timing, "Include wall-clock time in the report");
  con_cmd->add_option("--output,-o", con_o.output, "Write the report to this file");
  con_cmd->add_option("--format", con_o.format, "Output format (json)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what(), kExitInput);
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return kExitInput;
  }

  Context ctx;
  try {
    std::string text;
    std::string path;
    if (score_cmd->parsed()) {
      text = cmd_score(score_o, ctx, err);
      path = score_o.in.output;
    } else if (flag_cmd->parsed()) {
      text = cmd_flag(flag_o, ctx, err);
      path = flag_o.in.output;
    } else if (tri_cmd->parsed()) {
      text = cmd_triangulate(tri_o, ctx, err);
      path = tri_o.in.output;
    } else if (check_cmd->parsed()) {
      check_o.in.format = "json";
      text = cmd_check(check_o, ctx, err);
      path = check_o.in.output;
    } else if (sim_cmd->parsed()) {
      text = cmd_simulate(sim_o, sim_cmd, out);
      path = sim_o.output;
    } else if (con_cmd->parsed()) {
      text = cmd_consistency(con_o);
      path = con_o.output;
    }
    emit(text, path, out);
    return kExitOk;
  } catch (const CsvError& e) {
    return report_error(err, "input_error", e.what(), kExitInput,
                        [&](Json& j) { j["lines"] = e.lines(); });
  } catch (const InputError& e) {
    return report_error(err, "input_error", e.what(), kExitInput);
  } catch (const DuplicatePointError& e) {
    return report_error(err, "duplicate_points", e.what(), kExitGeometry, [&](Json& j) {
      add_row_context(j, e.indices(), ctx);
      j["hint"] = kJitterHint;
    });
  } catch (const GeneralPositionError& e) {
    return report_error(err, "general_position", e.what(), kExitGeometry, [&](Json& j) {
      j["degeneracy"] = to_string(e.kind());
      add_row_context(j, e.indices(), ctx);
      j["hint"] = kJitterHint;
    });
  } catch (const GeometryError& e) {
    return report_error(err, "geometry_error", e.what(), kExitGeometry,
                        [&](Json& j) { add_row_context(j, e.indices(), ctx); });
  } catch (const std::exception& e) {
    return report_error(err, "internal_error", e.what(), kExitInput);
  }
}

}  // namespace delo::cli
