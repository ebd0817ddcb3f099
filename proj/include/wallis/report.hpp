#pragma once

// Report rows and their CSV / JSON / table renderings. Numbers are written
// with 17 significant digits so that files are bit-stable and round-trip.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wallis/errors.hpp"

namespace wallis::report {

enum class Format { csv, json, table };

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "table") return Format::table;
  throw PreconditionError("unknown format '" + std::string(s) + "' (expected csv, json or table)");
}

struct ReportRow {
  std::string case_id;
  std::string inputs;
  double value = 0.0;
  double target = 0.0;
  double abs_err = 0.0;
  double bound = 0.0;
  std::uint64_t terms = 0;
  bool pass = false;
};

/// Builds a row with abs_err = |value - target| and
/// pass = abs_err <= max(bound, tol). Non-finite values never pass.
inline ReportRow make_row(std::string case_id, std::string inputs, double value, double target, double bound,
                          std::uint64_t terms, double tol) {
  ReportRow r;
  r.case_id = std::move(case_id);
  r.inputs = std::move(inputs);
  r.value = value;
  r.target = target;
  r.abs_err = std::abs(value - target);
  r.bound = bound;
  r.terms = terms;
  r.pass = std::isfinite(r.abs_err) && r.abs_err <= std::max(bound, tol);
  return r;
}

/// A row for a case whose computation threw; it always fails and carries the
/// reason in its inputs field.
inline ReportRow failed_row(std::string case_id, const std::string& inputs, const std::string& reason) {
  const double nan = std::nan("");
  return {std::move(case_id), inputs + " error=" + reason, nan, nan, nan, nan, 0, false};
}

inline bool all_pass(const std::vector<ReportRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

/// %.17g, or "null" for NaN and infinities.
inline std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline constexpr std::string_view kCsvHeader = "case,inputs,value,target,abs_err,bound,terms,pass";

inline std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += csv_field(r.case_id) + ',' + csv_field(r.inputs) + ',' + number(r.value) + ',' + number(r.target) + ',' +
           number(r.abs_err) + ',' + number(r.bound) + ',' + std::to_string(r.terms) + ',' +
           (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

/// One object per line, keys in the CSV column order.
inline std::string to_json(const std::vector<ReportRow>& rows) {
  if (rows.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += "  {\"case\": " + json_string(r.case_id) + ", \"inputs\": " + json_string(r.inputs) +
           ", \"value\": " + number(r.value) + ", \"target\": " + number(r.target) +
           ", \"abs_err\": " + number(r.abs_err) + ", \"bound\": " + number(r.bound) +
           ", \"terms\": " + std::to_string(r.terms) + ", \"pass\": " + (r.pass ? "true" : "false") + "}";
    out += i + 1 < rows.size() ? ",\n" : "\n";
  }
  return out + "]\n";
}

namespace detail {

inline std::string short_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string short_error(double v) {
  if (!std::isfinite(v)) return short_number(v);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline std::string render_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& cells,
                               const std::vector<bool>& right_align) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& row) {
    std::string out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      out += right_align[c] ? pad + row[c] : row[c] + pad;
      if (c + 1 < row.size()) out += "  ";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + '\n';
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (const auto w : width) total += w;
  out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
  for (const auto& row : cells) out += line(row);
  return out;
}

}  // namespace detail

/// Human-readable aligned table with 12-digit values and 3-digit errors.
inline std::string to_table(const std::vector<ReportRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  std::size_t passed = 0;
  for (const auto& r : rows) {
    cells.push_back({r.case_id, r.inputs, detail::short_number(r.value), detail::short_number(r.target),
                     detail::short_error(r.abs_err), detail::short_error(r.bound), std::to_string(r.terms),
                     r.pass ? "PASS" : "FAIL"});
    passed += r.pass ? 1 : 0;
  }
  std::string out = detail::render_grid({"case", "inputs", "value", "target", "abs_err", "bound", "terms", "pass"},
                                        cells, {false, false, true, true, true, true, true, false});
  out += std::to_string(passed) + "/" + std::to_string(rows.size()) + " passed\n";
  return out;
}

inline std::string render(const std::vector<ReportRow>& rows, Format f) {
  switch (f) {
    case Format::csv:
      return to_csv(rows);
    case Format::json:
      return to_json(rows);
    case Format::table:
      return to_table(rows);
  }
  return {};
}

/// A numeric table with named columns, used for convergence output.
struct Series {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline std::string render(const Series& s, Format f) {
  std::string out;
  switch (f) {
    case Format::csv: {
      for (std::size_t c = 0; c < s.columns.size(); ++c) out += (c ? "," : "") + s.columns[c];
      out += '\n';
      for (const auto& row : s.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + number(row[c]);
        out += '\n';
      }
      return out;
    }
    case Format::json: {
      if (s.rows.empty()) return "[]\n";
      out = "[\n";
      for (std::size_t i = 0; i < s.rows.size(); ++i) {
        out += "  {";
        for (std::size_t c = 0; c < s.columns.size(); ++c) {
          out += (c ? ", " : "") + json_string(s.columns[c]) + ": " + number(s.rows[i][c]);
        }
        out += i + 1 < s.rows.size() ? "},\n" : "}\n";
      }
      return out + "]\n";
    }
    case Format::table: {
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : s.rows) {
        std::vector<std::string> line;
        for (const double v : row) line.push_back(detail::short_number(v));
        cells.push_back(std::move(line));
      }
      return detail::render_grid(s.columns, cells, std::vector<bool>(s.columns.size(), true));
    }
  }
  return out;
}

}  // namespace wallis::report
