#ifndef ANTITONIC_SERIES_HPP_
#define ANTITONIC_SERIES_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace antitonic {

/*
 * Index convention: every operation that takes an element or block index
 * ("lo", "hi", "j", ...) uses 1-based indices, matching the block boundary
 * vectors (b_0 = 0, b_1, ..., b_d) used as the exchange format. Spans returned
 * by accessors are ordinary 0-based C++ ranges.
 */

/// Response values z_1..z_m with strictly positive weights w_1..w_m.
///
/// Besides z and w the series keeps the weighted totals w_j * z_j. They are
/// normally computed on construction; from_totals() lets a caller supply them
/// exactly (e.g. integer counts) so that block sums stay exact.
template <std::floating_point Real>
class basic_weighted_series {
 public:
  using value_type = Real;

  basic_weighted_series(std::vector<Real> z, std::vector<Real> w)
      : z_(std::move(z)), w_(std::move(w)) {
    if (z_.size() != w_.size()) {
      throw std::domain_error("weighted_series: z and w differ in length");
    }
    check();
    totals_.resize(z_.size());
    for (std::size_t i = 0; i < z_.size(); ++i) totals_[i] = w_[i] * z_[i];
  }

  explicit basic_weighted_series(std::vector<Real> z)
      : basic_weighted_series(z, std::vector<Real>(z.size(), Real(1))) {}

  /// Builds the series z_j = totals_j / w_j, keeping totals_j verbatim.
  static basic_weighted_series from_totals(std::vector<Real> totals,
                                           std::vector<Real> w) {
    if (totals.size() != w.size()) {
      throw std::domain_error("weighted_series: totals and w differ in length");
    }
    basic_weighted_series s;
    s.w_ = std::move(w);
    s.totals_ = std::move(totals);
    s.z_.resize(s.w_.size());
    for (std::size_t i = 0; i < s.w_.size(); ++i) {
      if (!(s.w_[i] > Real(0))) {
        throw std::domain_error("weighted_series: weights must be positive");
      }
      s.z_[i] = s.totals_[i] / s.w_[i];
    }
    s.check();
    for (Real t : s.totals_) {
      if (!std::isfinite(t)) {
        throw std::domain_error("weighted_series: non-finite total");
      }
    }
    return s;
  }

  [[nodiscard]] std::size_t size() const noexcept { return z_.size(); }
  [[nodiscard]] std::span<const Real> z() const noexcept { return z_; }
  [[nodiscard]] std::span<const Real> w() const noexcept { return w_; }
  [[nodiscard]] std::span<const Real> totals() const noexcept { return totals_; }

  /// Replaces z_j (1-based).
  void assign(std::size_t j, Real value) {
    check_index(j);
    if (!std::isfinite(value)) {
      throw std::domain_error("weighted_series: non-finite value");
    }
    z_[j - 1] = value;
    totals_[j - 1] = w_[j - 1] * value;
  }

  /// Replaces the weighted total w_j * z_j (1-based); z_j follows.
  void assign_total(std::size_t j, Real total) {
    check_index(j);
    if (!std::isfinite(total)) {
      throw std::domain_error("weighted_series: non-finite total");
    }
    totals_[j - 1] = total;
    z_[j - 1] = total / w_[j - 1];
  }

  void check_index(std::size_t j) const {
    if (j < 1 || j > z_.size()) {
      throw std::out_of_range("weighted_series: index " + std::to_string(j) +
                              " outside 1.." + std::to_string(z_.size()));
    }
  }

 private:
  basic_weighted_series() = default;

  void check() const {
    if (z_.empty()) throw std::domain_error("weighted_series: empty series");
    for (std::size_t i = 0; i < z_.size(); ++i) {
      if (!std::isfinite(z_[i])) {
        throw std::domain_error("weighted_series: non-finite response at " +
                                std::to_string(i + 1));
      }
      if (!std::isfinite(w_[i]) || !(w_[i] > Real(0))) {
        throw std::domain_error("weighted_series: weight at " +
                                std::to_string(i + 1) +
                                " must be finite and positive");
      }
    }
  }

  std::vector<Real> z_;
  std::vector<Real> w_;
  std::vector<Real> totals_;
};

using weighted_series = basic_weighted_series<double>;

/// Weighted average of z over {lo, ..., hi} (1-based, inclusive), summed
/// directly from the stored totals.
template <std::floating_point Real>
Real weighted_mean(const basic_weighted_series<Real>& series, std::size_t lo,
                   std::size_t hi) {
  if (lo < 1 || lo > hi || hi > series.size()) {
    throw std::out_of_range("weighted_mean: need 1 <= lo <= hi <= m");
  }
  if (lo == hi) return series.z()[lo - 1];
  Real weight = 0;
  Real total = 0;
  for (std::size_t j = lo - 1; j < hi; ++j) {
    weight += series.w()[j];
    total += series.totals()[j];
  }
  return total / weight;
}

/// Partition of {1..b_d} into consecutive blocks P_s = {b_{s-1}+1, ..., b_s}.
class block_partition {
 public:
  /// `boundaries` = (b_0, ..., b_d) with b_0 = 0, strictly increasing.
  explicit block_partition(std::vector<std::size_t> boundaries)
      : b_(std::move(boundaries)) {
    if (b_.size() < 2 || b_.front() != 0) {
      throw std::domain_error(
          "block_partition: boundaries must start at 0 and hold one block");
    }
    for (std::size_t s = 1; s < b_.size(); ++s) {
      if (b_[s] <= b_[s - 1]) {
        throw std::domain_error(
            "block_partition: boundaries must be strictly increasing");
      }
    }
  }

  [[nodiscard]] std::size_t block_count() const noexcept { return b_.size() - 1; }
  [[nodiscard]] std::size_t size() const noexcept { return b_.back(); }
  [[nodiscard]] std::span<const std::size_t> boundaries() const noexcept {
    return b_;
  }
  /// First index of block s (1-based s, 1-based result).
  [[nodiscard]] std::size_t first(std::size_t s) const { return b_.at(s - 1) + 1; }
  /// Last index of block s.
  [[nodiscard]] std::size_t last(std::size_t s) const { return b_.at(s); }

  /// Block containing index j (both 1-based).
  [[nodiscard]] std::size_t block_of(std::size_t j) const {
    if (j < 1 || j > size()) throw std::out_of_range("block_partition: index");
    auto it = std::lower_bound(b_.begin() + 1, b_.end(), j);
    return static_cast<std::size_t>(it - b_.begin());
  }

  friend bool operator==(const block_partition&, const block_partition&) = default;

 private:
  std::vector<std::size_t> b_;
};

/// One PAVA block: its last index (1-based), weight W_s, weighted total
/// sum_{j in P_s} w_j z_j and mean M_s.
template <std::floating_point Real>
struct basic_block {
  std::size_t end;
  Real weight;
  Real total;
  Real mean;

  friend bool operator==(const basic_block&, const basic_block&) = default;
};

/// The PAVA solution state: partition, block weights and block means.
template <std::floating_point Real>
class basic_fitted_blocks {
 public:
  using block = basic_block<Real>;

  basic_fitted_blocks() = default;
  explicit basic_fitted_blocks(std::vector<block> blocks)
      : blocks_(std::move(blocks)) {}

  [[nodiscard]] std::span<const block> blocks() const noexcept { return blocks_; }
  [[nodiscard]] std::size_t block_count() const noexcept { return blocks_.size(); }
  [[nodiscard]] std::size_t size() const noexcept {
    return blocks_.empty() ? 0 : blocks_.back().end;
  }

  [[nodiscard]] std::vector<std::size_t> boundaries() const {
    std::vector<std::size_t> b{0};
    for (const auto& blk : blocks_) b.push_back(blk.end);
    return b;
  }
  [[nodiscard]] block_partition partition() const {
    return block_partition(boundaries());
  }
  [[nodiscard]] std::vector<Real> means() const {
    std::vector<Real> out;
    out.reserve(blocks_.size());
    for (const auto& blk : blocks_) out.push_back(blk.mean);
    return out;
  }
  [[nodiscard]] std::vector<Real> weights() const {
    std::vector<Real> out;
    out.reserve(blocks_.size());
    for (const auto& blk : blocks_) out.push_back(blk.weight);
    return out;
  }

  friend bool operator==(const basic_fitted_blocks&,
                         const basic_fitted_blocks&) = default;

 private:
  std::vector<block> blocks_;
};

using block = basic_block<double>;
using fitted_blocks = basic_fitted_blocks<double>;

}  // namespace antitonic

#endif  // ANTITONIC_SERIES_HPP_
