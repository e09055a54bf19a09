#ifndef ANTITONIC_ORACLE_HPP_
#define ANTITONIC_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitonic/series.hpp"

/*
 * Brute-force reference implementations of the antitonic projection under a
 * total order. Nothing here shares code with the PAVA routines; these are the
 * ground truth the fast paths are tested against and are only meant for
 * small m (minmax_fit is O(m^3)).
 *
 * Under a total order the upper sets containing j are the suffixes
 * {a, ..., m} with a <= j and the lower sets containing j are the prefixes
 * {1, ..., b} with b >= j, so every set enumeration collapses to intervals.
 */

namespace antitonic::oracle {

inline constexpr double tolerance = 1e-9;

namespace detail {

/// means[a][b] = weighted mean of z over {a..b}, 0-based, a <= b.
template <std::floating_point Real>
std::vector<std::vector<Real>> interval_means(const basic_weighted_series<Real>& s) {
  const std::size_t m = s.size();
  std::vector<std::vector<Real>> means(m, std::vector<Real>(m, Real(0)));
  for (std::size_t a = 0; a < m; ++a) {
    Real weight = 0;
    Real total = 0;
    for (std::size_t b = a; b < m; ++b) {
      weight += s.w()[b];
      total += s.w()[b] * s.z()[b];
      means[a][b] = total / weight;
    }
  }
  return means;
}

}  // namespace detail

/// f_j = min_{a <= j} max_{b >= j} M_{a..b}(z), by exhaustive enumeration.
/// The max-min form is evaluated as well; a disagreement beyond the oracle
/// tolerance throws std::logic_error.
template <std::floating_point Real>
std::vector<Real> minmax_fit(const basic_weighted_series<Real>& series) {
  const std::size_t m = series.size();
  if (m == 0) throw std::domain_error("minmax_fit: empty series");
  const auto means = detail::interval_means(series);

  std::vector<Real> f(m);
  for (std::size_t j = 0; j < m; ++j) {
    Real min_max = std::numeric_limits<Real>::infinity();
    for (std::size_t a = 0; a <= j; ++a) {
      Real inner = -std::numeric_limits<Real>::infinity();
      for (std::size_t b = j; b < m; ++b) inner = std::max(inner, means[a][b]);
      min_max = std::min(min_max, inner);
    }
    Real max_min = -std::numeric_limits<Real>::infinity();
    for (std::size_t b = j; b < m; ++b) {
      Real inner = std::numeric_limits<Real>::infinity();
      for (std::size_t a = 0; a <= j; ++a) inner = std::min(inner, means[a][b]);
      max_min = std::max(max_min, inner);
    }
    if (std::abs(min_max - max_min) > tolerance) {
      throw std::logic_error("minmax_fit: min-max and max-min disagree at " +
                             std::to_string(j + 1));
    }
    f[j] = min_max;
  }
  return f;
}

/// Outcome of check_fit. `index` is the 1-based position where the first
/// violated condition was detected (0 when valid).
struct fit_report {
  bool valid = true;
  std::size_t index = 0;
  std::string reason;

  explicit operator bool() const noexcept { return valid; }
};

/// Checks whether `fit` is the antitonic least-squares fit of `series`.
///
/// The fit must be non-increasing. Then for every level set B = [f = xi]
/// (an index interval) each prefix of B must have weighted mean <= xi, each
/// suffix mean >= xi, and M_B(z) = xi, all up to the oracle tolerance.
template <std::floating_point Real>
fit_report check_fit(std::span<const Real> fit,
                     const basic_weighted_series<Real>& series) {
  const std::size_t m = series.size();
  if (fit.size() != m) throw std::domain_error("check_fit: length mismatch");
  const auto z = series.z();
  const auto w = series.w();

  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (fit[j] < fit[j + 1]) {
      return {false, j + 1, "fit is not non-increasing"};
    }
  }

  std::size_t first = 0;
  while (first < m) {
    const Real level = fit[first];
    std::size_t last = first;
    while (last + 1 < m && fit[last + 1] == level) ++last;

    Real weight = 0;
    Real total = 0;
    for (std::size_t i = first; i <= last; ++i) {
      weight += w[i];
      total += w[i] * z[i];
      if (i < last && total / weight > level + tolerance) {
        return {false, i + 1, "prefix mean exceeds level " + std::to_string(level)};
      }
    }
    if (std::abs(total / weight - level) > tolerance) {
      return {false, first + 1,
              "block mean differs from level " + std::to_string(level)};
    }
    weight = 0;
    total = 0;
    for (std::size_t i = last + 1; i-- > first + 1;) {
      weight += w[i];
      total += w[i] * z[i];
      if (total / weight < level - tolerance) {
        return {false, i + 1, "suffix mean below level " + std::to_string(level)};
      }
    }
    first = last + 1;
  }
  return {};
}

template <std::floating_point Real>
fit_report check_fit(const std::vector<Real>& fit,
                     const basic_weighted_series<Real>& series) {
  return check_fit(std::span<const Real>(fit), series);
}

}  // namespace antitonic::oracle

#endif  // ANTITONIC_ORACLE_HPP_
