#ifndef ANTITONIC_IO_HPP_
#define ANTITONIC_IO_HPP_

#include <charconv>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antitonic/idr.hpp"
#include "antitonic/pava.hpp"

/*
 * Text formats used by the command-line tool.
 *
 *   series file      numbers separated by commas and/or whitespace
 *   changes file     rows "j,value" (1-based index)
 *   observations     CSV with header "x,y", one observation per row
 *   estimate         CSV, header "threshold,<x_1>,...,<x_m>", one row per
 *                    threshold holding F_{x_j}(threshold)
 *   quantiles        CSV, header "x,<beta_1>,...", one row per covariate
 *   fit              JSON {"boundaries": [...], "means": [...], "fit": [...]}
 *
 * Reals are written with 17 significant digits.
 */

namespace antitonic::io {

/// Malformed input; `line` is 1-based (0 when not tied to a line).
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw parse_error(line, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view row, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = row.find(sep, start);
    out.push_back(row.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Splits text into lines, keeping 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string_view>> lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(number++, text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

/// Numbers separated by commas, spaces, tabs or newlines.
inline std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> values;
  for (const auto& [number, line] : lines(text)) {
    std::string_view rest = line;
    while (true) {
      const auto first = rest.find_first_not_of(" \t\r,");
      if (first == std::string_view::npos) break;
      rest.remove_prefix(first);
      const auto stop = rest.find_first_of(" \t\r,");
      values.push_back(parse_real(rest.substr(0, stop), number));
      if (stop == std::string_view::npos) break;
      rest.remove_prefix(stop);
    }
  }
  return values;
}

struct change {
  std::size_t index;  // 1-based
  double value;
};

inline std::vector<change> parse_changes(std::string_view text) {
  std::vector<change> out;
  for (const auto& [number, line] : lines(text)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw parse_error(number, "expected 'index,value'");
    const double index = parse_real(fields[0], number);
    if (index < 1 || index != static_cast<double>(static_cast<std::size_t>(index))) {
      throw parse_error(number, "index must be a positive integer");
    }
    out.push_back({static_cast<std::size_t>(index), parse_real(fields[1], number)});
  }
  return out;
}

inline std::vector<idr::observation> parse_observations(std::string_view text) {
  std::vector<idr::observation> out;
  bool header = false;
  for (const auto& [number, line] : lines(text)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (!header) {
      if (fields.size() != 2 || trim(fields[0]) != "x" || trim(fields[1]) != "y") {
        throw parse_error(number, "expected header 'x,y'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 2) throw parse_error(number, "expected two fields 'x,y'");
    out.push_back({parse_real(fields[0], number), parse_real(fields[1], number)});
  }
  if (out.empty()) throw parse_error(0, "no observations");
  return out;
}

inline std::string format_observations(std::span<const idr::observation> pairs) {
  std::string out = "x,y\n";
  for (const auto& p : pairs) out += format_real(p.x) + "," + format_real(p.y) + "\n";
  return out;
}

inline std::string format_fit_json(const fitted_blocks& blocks) {
  auto array = [](const auto& values, auto fmt) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += fmt(values[i]);
    }
    return s + "]";
  };
  const auto index = [](std::size_t b) { return std::to_string(b); };
  return "{\"boundaries\":" + array(blocks.boundaries(), index) +
         ",\"means\":" + array(blocks.means(), format_real) +
         ",\"fit\":" + array(expand(blocks), format_real) + "}\n";
}

inline std::string format_estimate(const idr::distribution_family_estimate& est) {
  std::string out = "threshold";
  for (double x : est.covariates()) out += "," + format_real(x);
  out += "\n";
  for (std::size_t t = 1; t <= est.threshold_count(); ++t) {
    out += format_real(est.thresholds()[t - 1]);
    for (double v : est.column(t)) out += "," + format_real(v);
    out += "\n";
  }
  return out;
}

inline idr::distribution_family_estimate parse_estimate(std::string_view text) {
  std::vector<double> covariates;
  std::vector<double> thresholds;
  std::vector<double> cdf;
  bool header = false;
  for (const auto& [number, line] : lines(text)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (!header) {
      if (fields.size() < 2 || trim(fields[0]) != "threshold") {
        throw parse_error(number, "expected header 'threshold,<covariates>'");
      }
      for (std::size_t i = 1; i < fields.size(); ++i) {
        covariates.push_back(parse_real(fields[i], number));
      }
      header = true;
      continue;
    }
    if (fields.size() != covariates.size() + 1) {
      throw parse_error(number, "expected " + std::to_string(covariates.size() + 1) +
                                    " fields");
    }
    thresholds.push_back(parse_real(fields[0], number));
    for (std::size_t i = 1; i < fields.size(); ++i) cdf.push_back(parse_real(fields[i], number));
  }
  if (thresholds.empty()) throw parse_error(0, "estimate holds no thresholds");
  try {
    return idr::distribution_family_estimate(std::move(thresholds), std::move(covariates),
                                             std::move(cdf));
  } catch (const std::domain_error& e) {
    throw parse_error(0, e.what());
  }
}

/// Parses a comma list of betas in (0, 1]; keeps the trimmed tokens for
/// use as column labels.
inline std::vector<std::pair<std::string, double>> parse_betas(std::string_view list) {
  std::vector<std::pair<std::string, double>> out;
  for (auto token : split(list, ',')) {
    token = trim(token);
    const double beta = parse_real(token, 0);
    if (!(beta > 0.0 && beta <= 1.0)) {
      throw std::domain_error("beta " + std::string(token) + " outside (0, 1]");
    }
    out.emplace_back(std::string(token), beta);
  }
  return out;
}

inline std::string format_quantiles(const idr::distribution_family_estimate& est,
                                    const std::vector<std::pair<std::string, double>>& betas) {
  std::string out = "x";
  for (const auto& b : betas) out += "," + b.first;
  out += "\n";
  for (std::size_t j = 1; j <= est.covariate_count(); ++j) {
    out += format_real(est.covariates()[j - 1]);
    for (const auto& b : betas) out += "," + format_real(idr::quantile(est, j, b.second));
    out += "\n";
  }
  return out;
}

}  // namespace antitonic::io

#endif  // ANTITONIC_IO_HPP_
