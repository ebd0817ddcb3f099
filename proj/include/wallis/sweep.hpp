#pragma once

// Sweep configuration: parameter grids, tolerance and output settings, read
// from a flat key = value file in which repeated keys form grids. Values may
// also be comma-separated lists.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "wallis/errors.hpp"
#include "wallis/report.hpp"

namespace wallis {

struct SweepConfig {
  std::vector<double> b;
  std::vector<double> a;
  std::vector<int> dimension;
  std::vector<std::uint64_t> ell;
  std::vector<double> s;
  std::vector<int> n;
  std::vector<std::uint64_t> k;
  std::vector<std::uint64_t> depth;
  std::optional<double> tol;
  report::Format format = report::Format::csv;
  std::string out;

  /// Empty grids mean "use the suite's defaults".
  void validate() const {
    if (tol && !(*tol > 0 && std::isfinite(*tol))) throw PreconditionError("tol must be positive and finite");
  }
};

namespace config {

/// Raw key -> values map. Later occurrences of a key append to its grid.
using RawConfig = std::map<std::string, std::vector<std::string>>;

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto piece = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Canonical key: lower case with '-' mapped to '_'.
inline std::string normalize_key(std::string_view k) {
  std::string out;
  for (const char c : k) out += c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline RawConfig parse_text(std::string_view text) {
  RawConfig raw;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw PreconditionError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = normalize_key(trim(std::string_view(t).substr(0, eq)));
    if (key.empty()) throw PreconditionError("config line " + std::to_string(lineno) + ": empty key");
    const auto values = split_list(std::string_view(t).substr(eq + 1));
    if (values.empty()) throw PreconditionError("config line " + std::to_string(lineno) + ": empty value");
    auto& slot = raw[key];
    slot.insert(slot.end(), values.begin(), values.end());
  }
  return raw;
}

inline RawConfig parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str());
}

inline double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !std::isfinite(x)) throw PreconditionError(key + ": '" + v + "' is not a finite number");
  return x;
}

inline long long to_integer(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 9.0e15) throw PreconditionError(key + ": '" + v + "' is not an integer");
  return static_cast<long long>(x);
}

inline std::uint64_t to_count(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < 0) throw PreconditionError(key + ": '" + v + "' must be non-negative");
  return static_cast<std::uint64_t>(x);
}

/// Applies raw entries on top of cfg; keys present in raw replace cfg's grids.
inline void apply(const RawConfig& raw, SweepConfig& cfg) {
  for (const auto& [key, values] : raw) {
    auto single = [&]() -> const std::string& {
      if (values.size() != 1) throw PreconditionError(key + " takes a single value");
      return values.front();
    };
    if (key == "b" || key == "a" || key == "s") {
      auto& grid = key == "b" ? cfg.b : key == "a" ? cfg.a : cfg.s;
      grid.clear();
      for (const auto& v : values) grid.push_back(to_double(key, v));
    } else if (key == "n_dim" || key == "n") {
      auto& grid = key == "n" ? cfg.n : cfg.dimension;
      grid.clear();
      for (const auto& v : values) grid.push_back(static_cast<int>(to_integer(key, v)));
    } else if (key == "ell" || key == "k" || key == "depth") {
      auto& grid = key == "ell" ? cfg.ell : key == "k" ? cfg.k : cfg.depth;
      grid.clear();
      for (const auto& v : values) grid.push_back(to_count(key, v));
    } else if (key == "tol") {
      cfg.tol = to_double(key, single());
    } else if (key == "format") {
      cfg.format = report::parse_format(single());
    } else if (key == "out") {
      cfg.out = single();
    } else {
      throw PreconditionError("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
}

}  // namespace config

}  // namespace wallis
