#include "csv_input.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>

namespace delo::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool blank(const std::string& line) { return trim(line).empty(); }

std::optional<std::size_t> as_index(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return std::nullopt;
  }
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string list_lines(const std::vector<std::size_t>& lines) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(lines.size(), 10);
  for (std::size_t t = 0; t < shown; ++t) out += (t ? ", " : "") + std::to_string(lines[t]);
  if (lines.size() > shown) out += ", ...";
  return out;
}

}  // namespace

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool parse_number(const std::string& text, double& value) {
  const std::string s = trim(text);
  if (s.empty()) return false;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(value);
}

Table read_table(std::istream& in, const ColumnSpec& spec) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (!blank(line)) lines.emplace_back(number, line);
    }
  }
  if (lines.empty()) throw InputError("input has no data rows");

  const std::vector<std::string> first = split_fields(lines.front().second, spec.delimiter);
  const std::size_t width = first.size();

  bool by_name = false;
  for (const std::string& c : spec.columns) by_name |= !as_index(c).has_value();

  bool header = false;
  switch (spec.header) {
    case HeaderMode::present:
      header = true;
      break;
    case HeaderMode::absent:
      header = false;
      break;
    case HeaderMode::automatic: {
      // A header is assumed when a selected field of the first line is not
      // numeric; other columns (dates, labels) may hold anything.
      header = by_name;
      double v = 0.0;
      for (std::size_t c = 0; c < width && !header; ++c) {
        const bool chosen =
            spec.columns.empty() ||
            std::any_of(spec.columns.begin(), spec.columns.end(),
                        [c](const std::string& s) { return as_index(s) == c; });
        if (chosen) header = !parse_number(first[c], v);
      }
      break;
    }
  }
  if (by_name && !header) throw InputError("columns selected by name need a header row");

  std::vector<std::size_t> selected;
  if (spec.columns.empty()) {
    for (std::size_t c = 0; c < width; ++c) selected.push_back(c);
  } else {
    for (const std::string& c : spec.columns) {
      std::optional<std::size_t> idx;
      if (header) {
        const auto it = std::find(first.begin(), first.end(), c);
        if (it != first.end()) idx = static_cast<std::size_t>(it - first.begin());
      }
      if (!idx) idx = as_index(c);
      if (!idx) throw InputError("unknown column '" + c + "'");
      if (*idx >= width) {
        throw InputError("column index " + std::to_string(*idx) + " out of range (file has " +
                         std::to_string(width) + " columns)");
      }
      selected.push_back(*idx);
    }
  }
  if (selected.empty()) throw InputError("no columns selected");

  Table table;
  table.dim = selected.size();
  for (std::size_t c : selected) {
    table.names.push_back(header ? first[c] : "x" + std::to_string(c));
  }

  std::vector<std::size_t> bad;
  std::vector<double> values(selected.size());
  for (std::size_t t = header ? 1 : 0; t < lines.size(); ++t) {
    const auto& [number, text] = lines[t];
    const std::vector<std::string> fields = split_fields(text, spec.delimiter);
    bool ok = true;
    for (std::size_t s = 0; s < selected.size() && ok; ++s) {
      ok = selected[s] < fields.size() && parse_number(fields[selected[s]], values[s]);
    }
    const std::size_t data_row = t - (header ? 1 : 0);
    if (!ok) {
      bad.push_back(number);
      continue;
    }
    table.coords.insert(table.coords.end(), values.begin(), values.end());
    table.rows.push_back(data_row);
    table.lines.push_back(number);
  }
  if (!bad.empty()) {
    if (!spec.lenient) {
      throw CsvError("unparseable or missing values on line(s) " + list_lines(bad) +
                         " (use --lenient to skip them)",
                     bad);
    }
    table.skipped = bad.size();
  }
  if (table.size() < 2) throw InputError("need at least 2 valid rows, got " + std::to_string(table.size()));
  return table;
}

Table read_table_file(const std::string& path, const ColumnSpec& spec) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_table(in, spec);
}

std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t number = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::vector<std::string> f = split_fields(t, ',');
    if (!seen_data && f.size() == 3 && f[0] == "i" && f[1] == "j" && f[2] == "length") continue;
    seen_data = true;
    double i = 0, j = 0, len = 0;
    if (f.size() != 3 || !parse_number(f[0], i) || !parse_number(f[1], j) || !parse_number(f[2], len) ||
        i < 0 || j < 0 || i != std::floor(i) || j != std::floor(j) || i > 4e9 || j > 4e9) {
      throw CsvError("malformed edge on line " + std::to_string(number), {number});
    }
    edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), len});
  }
  if (edges.empty()) throw InputError("edge list is empty");
  return edges;
}

std::vector<Edge> read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_edge_list(in);
}

}  // namespace delo::cli
