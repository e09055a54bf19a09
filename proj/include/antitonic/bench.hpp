#ifndef ANTITONIC_BENCH_HPP_
#define ANTITONIC_BENCH_HPP_

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "antitonic/idr.hpp"

namespace antitonic::bench {

struct experiment_config {
  std::size_t n = 1000;
  std::size_t replications = 20;
  std::uint64_t seed = 20210301;
  double x_min = 0.0;
  double x_max = 10.0;

  void validate() const {
    if (n < 2) throw std::invalid_argument("experiment: n must be at least 2");
    if (replications < 1) {
      throw std::invalid_argument("experiment: replications must be at least 1");
    }
    if (!(x_min < x_max)) throw std::invalid_argument("experiment: empty covariate range");
  }
};

/// Shape sqrt(x) of the gamma response at covariate x.
inline double gamma_shape(double x) { return std::sqrt(x); }

/// Scale 1 + (x - 5) / sqrt(2 + (x - 5)^2) of the gamma response.
inline double gamma_scale(double x) {
  const double u = x - 5.0;
  return 1.0 + u / std::sqrt(2.0 + u * u);
}

/// One draw of Y | X = x. Zero draws (underflow at tiny shapes) are redrawn.
template <class Engine>
double sample_response(double x, Engine& rng) {
  std::gamma_distribution<double> dist(gamma_shape(x), gamma_scale(x));
  double y = 0.0;
  do {
    y = dist(rng);
  } while (!(y > 0.0));
  return y;
}

inline std::mt19937_64 replication_engine(std::uint64_t seed, std::size_t replication) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replication),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(replication) >> 32)};
  return std::mt19937_64(seq);
}

/// n pairs with X uniform on the covariate range and gamma responses;
/// deterministic in (seed, replication).
inline std::vector<idr::observation> generate_dataset(const experiment_config& config,
                                                      std::size_t replication) {
  config.validate();
  auto rng = replication_engine(config.seed, replication);
  std::uniform_real_distribution<double> covariate(config.x_min, config.x_max);
  std::vector<idr::observation> pairs;
  pairs.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    double x = 0.0;
    do {
      x = covariate(rng);
    } while (!(gamma_shape(x) > 0.0));
    pairs.push_back({x, sample_response(x, rng)});
  }
  return pairs;
}

struct summary {
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
};

inline summary summarize(std::vector<double> values) {
  summary s;
  if (values.empty()) return s;
  const double count = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (count - 1.0));
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

inline constexpr std::array<variant, 3> all_variants{variant::standard, variant::modified,
                                                     variant::abridged};

struct timing_report {
  experiment_config config;
  /// seconds[v][r]: wall time of variant v in replication r.
  std::array<std::vector<double>, 3> seconds;
  std::array<summary, 3> times;
  /// Per-replication ratios T1/T2, T1/T3, T2/T3, aggregated.
  summary t1_t2;
  summary t1_t3;
  summary t2_t3;
};

/// Largest absolute difference between two estimates of the same data.
inline double max_difference(const idr::distribution_family_estimate& a,
                             const idr::distribution_family_estimate& b) {
  if (a.raw().size() != b.raw().size()) return INFINITY;
  double diff = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i) {
    diff = std::max(diff, std::abs(a.raw()[i] - b.raw()[i]));
  }
  return diff;
}

/// Times fit_family for the three variants on every replication. Each timed
/// call includes grouping, sorting and fitting but not data generation.
/// Throws std::runtime_error if the variants disagree by more than 1e-12.
inline timing_report run_benchmark(const experiment_config& config) {
  config.validate();
  timing_report report;
  report.config = config;
  using clock = std::chrono::steady_clock;

  {
    const auto warm = generate_dataset(config, 0);
    for (variant v : all_variants) (void)idr::fit_family(warm, v);
  }

  std::vector<double> r12, r13, r23;
  for (std::size_t rep = 0; rep < config.replications; ++rep) {
    const auto data = generate_dataset(config, rep);
    std::array<double, 3> t{};
    // Only the standard estimate stays alive; the others are compared and
    // released before the next timed call.
    std::optional<idr::distribution_family_estimate> reference;
    for (std::size_t v = 0; v < 3; ++v) {
      auto input = data;
      const auto start = clock::now();
      auto estimate = idr::fit_family(std::move(input), all_variants[v]);
      const auto stop = clock::now();
      t[v] = std::chrono::duration<double>(stop - start).count();
      if (!reference) {
        reference.emplace(std::move(estimate));
      } else if (max_difference(*reference, estimate) > 1e-12) {
        throw std::runtime_error(std::string("benchmark: ") + to_string(all_variants[v]) +
                                 " disagrees with standard in replication " +
                                 std::to_string(rep));
      }
    }
    for (std::size_t v = 0; v < 3; ++v) report.seconds[v].push_back(t[v]);
    r12.push_back(t[0] / t[1]);
    r13.push_back(t[0] / t[2]);
    r23.push_back(t[1] / t[2]);
  }
  for (std::size_t v = 0; v < 3; ++v) report.times[v] = summarize(report.seconds[v]);
  report.t1_t2 = summarize(std::move(r12));
  report.t1_t3 = summarize(std::move(r13));
  report.t2_t3 = summarize(std::move(r23));
  return report;
}

inline nlohmann::json to_json(const summary& s) {
  return {{"mean", s.mean}, {"sd", s.sd}, {"median", s.median}};
}

inline nlohmann::json to_json(const timing_report& r) {
  nlohmann::json j;
  j["n"] = r.config.n;
  j["replications"] = r.config.replications;
  j["seed"] = r.config.seed;
  for (std::size_t v = 0; v < 3; ++v) {
    j["times"][to_string(all_variants[v])] = to_json(r.times[v]);
  }
  j["ratios"]["T1/T2"] = to_json(r.t1_t2);
  j["ratios"]["T1/T3"] = to_json(r.t1_t3);
  j["ratios"]["T2/T3"] = to_json(r.t2_t3);
  return j;
}

/// Text table: mean (sd) of T_j, of T_1/T_j and of T_2/T_3.
inline std::string format_table(const timing_report& r) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "%-14s | %-21s | %-21s | %-21s\n", "Variant",
                "mean (sd) of T_j", "mean (sd) of T1/T_j", "mean (sd) of T2/T3");
  out += line;
  out += std::string(87, '-') + "\n";
  auto cell = [](const summary& s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%9.4f (%8.4f)", s.mean, s.sd);
    return std::string(buf);
  };
  std::snprintf(line, sizeof line, "%-14s | %-21s | %-21s | %-21s\n", "Standard T1",
                cell(r.times[0]).c_str(), "", "");
  out += line;
  std::snprintf(line, sizeof line, "%-14s | %-21s | %-21s | %-21s\n", "Modified T2",
                cell(r.times[1]).c_str(), cell(r.t1_t2).c_str(), "");
  out += line;
  std::snprintf(line, sizeof line, "%-14s | %-21s | %-21s | %-21s\n", "Abridged T3",
                cell(r.times[2]).c_str(), cell(r.t1_t3).c_str(), cell(r.t2_t3).c_str());
  out += line;
  return out;
}

}  // namespace antitonic::bench

#endif  // ANTITONIC_BENCH_HPP_
