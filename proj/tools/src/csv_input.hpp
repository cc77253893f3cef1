#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "delo/error.hpp"
#include "delo/triangulation.hpp"

namespace delo::cli {

enum class HeaderMode { automatic, present, absent };

struct ColumnSpec {
  /// Names or zero-based indices; empty selects every column.
  std::vector<std::string> columns;
  char delimiter = ',';
  HeaderMode header = HeaderMode::automatic;
  /// Skip rows with missing or unparseable fields instead of failing.
  bool lenient = false;
};

/// Coordinates read from a CSV file, one point per accepted row.
struct Table {
  std::size_t dim = 0;
  std::vector<double> coords;         // row-major
  std::vector<std::string> names;     // coordinate column names
  std::vector<std::size_t> rows;      // zero-based data row of each point
  std::vector<std::size_t> lines;     // one-based file line of each point
  std::size_t skipped = 0;            // rows dropped in lenient mode

  std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
};

/// Rejected rows, with their file line numbers.
class CsvError : public InputError {
 public:
  CsvError(const std::string& what, std::vector<std::size_t> lines)
      : InputError(what), lines_(std::move(lines)) {}
  const std::vector<std::size_t>& lines() const noexcept { return lines_; }

 private:
  std::vector<std::size_t> lines_;
};

Table read_table(std::istream& in, const ColumnSpec& spec);
Table read_table_file(const std::string& path, const ColumnSpec& spec);

/// Edge list in the "i,j,length" layout written by the triangulate command.
/// Lines starting with '#' and a leading "i,j,length" header are skipped.
std::vector<Edge> read_edge_list(std::istream& in);
std::vector<Edge> read_edge_list_file(const std::string& path);

/// Splits on `delimiter`, honouring double-quoted fields; trims blanks.
std::vector<std::string> split_fields(const std::string& line, char delimiter);

/// Parses a finite double, rejecting trailing garbage.
bool parse_number(const std::string& text, double& value);

}  // namespace delo::cli
