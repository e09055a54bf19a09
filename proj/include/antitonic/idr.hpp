#ifndef ANTITONIC_IDR_HPP_
#define ANTITONIC_IDR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitonic/pava.hpp"
#include "antitonic/sequential.hpp"
#include "antitonic/series.hpp"

/*
 * Isotonic distributional regression under a totally ordered covariate.
 *
 * For every response threshold y the vector z(y) with
 *   z_j(y) = #{i : X_i = x_j, Y_i <= y} / w_j
 * is projected onto the non-increasing vectors; the fitted value at x_j is the
 * estimate of F_{x_j}(y). Sorting the responses, consecutive z vectors differ
 * in exactly one component, which grows by 1 / w_j, so the whole family can
 * be produced by sequential increases starting at z = 0.
 */

namespace antitonic::idr {

struct observation {
  double x;
  double y;

  friend bool operator==(const observation&, const observation&) = default;
};

/// Observations grouped by their distinct covariate values.
class observation_set {
 public:
  /// Groups `pairs`; throws std::domain_error on empty or non-finite input.
  explicit observation_set(std::vector<observation> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw std::domain_error("observation_set: no observations");
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (!std::isfinite(pairs_[i].x) || !std::isfinite(pairs_[i].y)) {
        throw std::domain_error("observation_set: non-finite value in observation " +
                                std::to_string(i + 1));
      }
      covariates_.push_back(pairs_[i].x);
    }
    std::sort(covariates_.begin(), covariates_.end());
    covariates_.erase(std::unique(covariates_.begin(), covariates_.end()),
                      covariates_.end());
    weights_.assign(covariates_.size(), 0.0);
    group_.reserve(pairs_.size());
    for (const auto& p : pairs_) {
      const auto g = static_cast<std::size_t>(
          std::lower_bound(covariates_.begin(), covariates_.end(), p.x) -
          covariates_.begin());
      group_.push_back(g);
      weights_[g] += 1.0;
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return pairs_.size(); }
  [[nodiscard]] std::size_t group_count() const noexcept { return covariates_.size(); }
  [[nodiscard]] std::span<const observation> pairs() const noexcept { return pairs_; }
  /// Distinct covariates x_1 < ... < x_m.
  [[nodiscard]] std::span<const double> covariates() const noexcept { return covariates_; }
  /// w_j = number of observations with X_i = x_j.
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
  /// 0-based position in covariates() of each observation.
  [[nodiscard]] std::span<const std::size_t> group_index() const noexcept { return group_; }

 private:
  std::vector<observation> pairs_;
  std::vector<double> covariates_;
  std::vector<double> weights_;
  std::vector<std::size_t> group_;
};

inline observation_set group(std::vector<observation> pairs) {
  return observation_set(std::move(pairs));
}

/// Estimated CDFs F_{x_j}(threshold_t) for all covariates j and all distinct
/// responses t. Stored densely, one contiguous column per threshold.
class distribution_family_estimate {
 public:
  /// `cdf` is column-major: cdf[(t-1) * m + (j-1)] = F_{x_j}(threshold_t).
  distribution_family_estimate(std::vector<double> thresholds,
                               std::vector<double> covariates,
                               std::vector<double> cdf)
      : thresholds_(std::move(thresholds)),
        covariates_(std::move(covariates)),
        cdf_(std::move(cdf)) {
    if (thresholds_.empty() || covariates_.empty()) {
      throw std::domain_error("estimate: needs at least one threshold and covariate");
    }
    if (cdf_.size() != thresholds_.size() * covariates_.size()) {
      throw std::domain_error("estimate: matrix size does not match dimensions");
    }
    for (std::size_t t = 1; t < thresholds_.size(); ++t) {
      if (!(thresholds_[t - 1] < thresholds_[t])) {
        throw std::domain_error("estimate: thresholds must be strictly increasing");
      }
    }
  }

  [[nodiscard]] std::size_t covariate_count() const noexcept { return covariates_.size(); }
  [[nodiscard]] std::size_t threshold_count() const noexcept { return thresholds_.size(); }
  [[nodiscard]] std::span<const double> thresholds() const noexcept { return thresholds_; }
  [[nodiscard]] std::span<const double> covariates() const noexcept { return covariates_; }

  /// F_{x_j}(threshold_t), both indices 1-based.
  [[nodiscard]] double cdf(std::size_t j, std::size_t t) const {
    if (j < 1 || j > covariates_.size() || t < 1 || t > thresholds_.size()) {
      throw std::out_of_range("estimate: index out of range");
    }
    return cdf_[(t - 1) * covariates_.size() + (j - 1)];
  }

  /// Column t (1-based): the fit at threshold_t over all covariates.
  [[nodiscard]] std::span<const double> column(std::size_t t) const {
    if (t < 1 || t > thresholds_.size()) throw std::out_of_range("estimate: column");
    return std::span<const double>(cdf_).subspan((t - 1) * covariates_.size(),
                                                 covariates_.size());
  }

  [[nodiscard]] std::span<const double> raw() const noexcept { return cdf_; }

 private:
  std::vector<double> thresholds_;
  std::vector<double> covariates_;
  std::vector<double> cdf_;
};

/// Checks the range and both monotonicity invariants of an estimate: entries
/// in [0,1], last column all 1, rows non-decreasing in the threshold and
/// columns non-increasing in the covariate. `slack` widens every comparison.
inline std::optional<std::string> estimate_defect(const distribution_family_estimate& est,
                                                  double slack = 0.0) {
  const std::size_t m = est.covariate_count();
  const std::size_t k = est.threshold_count();
  for (std::size_t t = 1; t <= k; ++t) {
    const auto col = est.column(t);
    for (std::size_t j = 0; j < m; ++j) {
      if (!(col[j] >= -slack && col[j] <= 1.0 + slack)) {
        return "entry outside [0,1] at (" + std::to_string(j + 1) + ", " +
               std::to_string(t) + ")";
      }
      if (j > 0 && col[j] > col[j - 1] + slack) {
        return "column " + std::to_string(t) + " increases at row " + std::to_string(j + 1);
      }
      if (t > 1 && col[j] + slack < est.cdf(j + 1, t - 1)) {
        return "row " + std::to_string(j + 1) + " decreases at column " + std::to_string(t);
      }
      if (t == k && std::abs(col[j] - 1.0) > slack) {
        return "last column differs from 1 at row " + std::to_string(j + 1);
      }
    }
  }
  return std::nullopt;
}

/// Fits the whole family with the given PAVA variant. `standard` and
/// `modified` refit every threshold from scratch; `abridged` walks through
/// the sorted responses with sequential increases from z = 0. When responses
/// tie only the fit after the last tied observation is recorded.
inline distribution_family_estimate fit_family(const observation_set& obs, variant v) {
  const std::size_t n = obs.size();
  const std::size_t m = obs.group_count();
  const auto pairs = obs.pairs();
  const auto groups = obs.group_index();
  const std::vector<double> weights(obs.weights().begin(), obs.weights().end());
  const bool unit_weights = n == m;

  // Sort by response, ties broken by group.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pairs[a].y != pairs[b].y) return pairs[a].y < pairs[b].y;
    return groups[a] < groups[b];
  });

  std::vector<double> thresholds;
  for (std::size_t i : order) {
    if (thresholds.empty() || thresholds.back() != pairs[i].y) {
      thresholds.push_back(pairs[i].y);
    }
  }
  const std::size_t k = thresholds.size();
  std::vector<double> cdf(k * m);

  // Weighted totals w_j z_j(y) are the integer counts #{i in group j: Y_i <= y}.
  std::vector<double> counts(m, 0.0);
  std::optional<sequential_state> state;
  if (v == variant::abridged) {
    state.emplace(weighted_series::from_totals(counts, weights));
  }

  std::size_t column = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    const std::size_t g = groups[i];
    counts[g] += 1.0;
    if (unit_weights && counts[g] != 1.0) {
      throw std::logic_error("fit_family: z is not {0,1}-valued");
    }
    if (state) state->increase_total(g + 1, counts[g]);

    const bool last_of_tie = r + 1 == n || pairs[order[r + 1]].y != pairs[i].y;
    if (!last_of_tie) continue;

    const std::span<double> out(cdf.data() + column * m, m);
    if (state) {
      expand_into(state->block_view(), out);
    } else {
      const auto series = weighted_series::from_totals(counts, weights);
      const auto blocks = v == variant::standard ? fit_standard(series) : fit_modified(series);
      expand_into(blocks.blocks(), out);
    }
    ++column;
  }

  return distribution_family_estimate(
      std::move(thresholds),
      std::vector<double>(obs.covariates().begin(), obs.covariates().end()),
      std::move(cdf));
}

inline distribution_family_estimate fit_family(std::vector<observation> pairs, variant v) {
  return fit_family(observation_set(std::move(pairs)), v);
}

/// z(threshold_t) as a weighted series: the input of column t (1-based).
inline weighted_series threshold_series(const observation_set& obs, double y) {
  std::vector<double> counts(obs.group_count(), 0.0);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs.pairs()[i].y <= y) counts[obs.group_index()[i]] += 1.0;
  }
  return weighted_series::from_totals(
      std::move(counts), std::vector<double>(obs.weights().begin(), obs.weights().end()));
}

/// Right-continuous step CDF of covariate j (1-based) evaluated at y.
inline double cdf_at(const distribution_family_estimate& est, std::size_t j, double y) {
  if (j < 1 || j > est.covariate_count()) {
    throw std::out_of_range("cdf_at: covariate index " + std::to_string(j));
  }
  const auto th = est.thresholds();
  const auto t = static_cast<std::size_t>(std::upper_bound(th.begin(), th.end(), y) - th.begin());
  return t == 0 ? 0.0 : est.cdf(j, t);
}

/// min { threshold y : F_{x_j}(y) >= beta } for beta in (0, 1].
inline double quantile(const distribution_family_estimate& est, std::size_t j, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw std::domain_error("quantile: beta must lie in (0, 1]");
  }
  if (j < 1 || j > est.covariate_count()) {
    throw std::out_of_range("quantile: covariate index " + std::to_string(j));
  }
  const std::size_t k = est.threshold_count();
  std::size_t lo = 1;
  std::size_t hi = k;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (est.cdf(j, mid) >= beta) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return est.thresholds()[lo - 1];
}

}  // namespace antitonic::idr

#endif  // ANTITONIC_IDR_HPP_
