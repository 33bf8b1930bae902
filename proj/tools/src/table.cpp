#include "vitkerr_tools/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "vitkerr/errors.hpp"

namespace vitkerr::tools {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ConfigError("no column '" + name + "' in " + title);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::numeric_column(const std::string& name) const {
  const std::size_t k = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (const double* d = std::get_if<double>(&r[k])) {
      out.push_back(*d);
    } else if (const std::int64_t* i = std::get_if<std::int64_t>(&r[k])) {
      out.push_back(static_cast<double>(*i));
    } else {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Table& t) {
  std::ostringstream os;
  os << "# " << t.title << '\n';
  for (const auto& n : t.notes) os << "# " << n << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const Table& t) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["title"] = t.title;
  j["notes"] = t.notes;
  j["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json row = ordered_json::array();
    for (const auto& c : r) {
      if (const double* d = std::get_if<double>(&c)) {
        // JSON has no inf/nan; keep the CSV spelling as a string.
        if (std::isfinite(*d)) row.push_back(*d); else row.push_back(format_number(*d));
      } else if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) {
        row.push_back(*i);
      } else {
        row.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

std::string to_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                   const std::vector<SvgSeries>& series, bool log_x) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = tx(s.x[i]);
      if (!std::isfinite(x) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double x) { return L + (tx(x) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << x_label << (log_x ? " (log10)" : "") << "</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << H / 2
     << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
  os << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" font-size=\"10\">" << format_number(x0)
     << "</text>\n";
  os << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" font-size=\"10\" text-anchor=\"end\">"
     << format_number(x1) << "</text>\n";
  os << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" font-size=\"10\" text-anchor=\"end\">"
     << format_number(y0) << "</text>\n";
  os << "<text x=\"" << L - 4 << "\" y=\"" << T + 10 << "\" font-size=\"10\" text-anchor=\"end\">"
     << format_number(y1) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    os << "<polyline fill=\"none\" stroke=\"" << colors[k % 5] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(tx(s.x[i])) || !std::isfinite(s.y[i])) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
      os << buf;
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 + 14 * k << "\" font-size=\"11\" text-anchor=\"end\" fill=\""
       << colors[k % 5] << "\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << content;
  if (!f) throw ConfigError("error writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace vitkerr::tools
