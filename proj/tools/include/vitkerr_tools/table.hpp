#pragma once

// Column tables and their CSV / JSON / SVG renderings. Numbers are written
// with %.17g so that reruns compare byte for byte.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace vitkerr::tools {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string title;
  std::vector<std::string> notes;  // extra header lines (units, conventions)
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;  // throws if absent
  std::vector<double> numeric_column(const std::string& name) const;
};

std::string format_number(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Polyline plot; non-finite points are skipped.
std::string to_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                   const std::vector<SvgSeries>& series, bool log_x);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace vitkerr::tools
