#ifndef ANTITONIC_SEQUENTIAL_HPP_
#define ANTITONIC_SEQUENTIAL_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "antitonic/pava.hpp"
#include "antitonic/series.hpp"

namespace antitonic {

/// How the current blocks of a sequential state were obtained.
enum class provenance {
  initial,     ///< batch fit at construction
  abridged,    ///< last change went through the abridged update
  unchanged,   ///< last change was a no-op
  recomputed,  ///< last change was a decrease; refitted from scratch
};

/// Antitonic fit that follows single-component increases of z.
///
/// An increase of z_{j_o} only coarsens the partition left of j_o and leaves
/// every block beyond the block P_{s_o} containing j_o untouched. An update
/// therefore keeps blocks 1..s_o-1, re-enters {b_{s_o-1}+1..j_o} as one block
/// (pooling leftwards), re-runs the PAVA induction over j_o+1..b_{s_o} and
/// then re-attaches the old blocks s_o+1..d verbatim.
template <std::floating_point Real>
class basic_sequential_state {
 public:
  using block = basic_block<Real>;

  explicit basic_sequential_state(basic_weighted_series<Real> series)
      : series_(std::move(series)) {
    const auto fitted = fit_modified(series_);
    blocks_.assign(fitted.blocks().begin(), fitted.blocks().end());
    touched_ = series_.size();
  }

  [[nodiscard]] const basic_weighted_series<Real>& series() const noexcept {
    return series_;
  }
  [[nodiscard]] std::span<const block> block_view() const noexcept { return blocks_; }
  [[nodiscard]] basic_fitted_blocks<Real> blocks() const {
    return basic_fitted_blocks<Real>(blocks_);
  }
  [[nodiscard]] std::vector<Real> fit() const {
    std::vector<Real> out(series_.size());
    expand_into(block_view(), std::span<Real>(out));
    return out;
  }
  [[nodiscard]] provenance origin() const noexcept { return origin_; }

  /// Components with 1-based index > touched_prefix() were not modified by
  /// the most recent update (b_{s_o} of the previous partition).
  [[nodiscard]] std::size_t touched_prefix() const noexcept { return touched_; }

  /// Abridged update for z_j -> value with value > z_j (j is 1-based).
  void increase(std::size_t j, Real value) {
    series_.check_index(j);
    if (!(value > series_.z()[j - 1])) {
      throw std::invalid_argument(
          "sequential: decrease not supported by abridged path (index " +
          std::to_string(j) + ")");
    }
    series_.assign(j, value);
    rebuild_from(j - 1);
  }

  /// As increase(), but the new component is given as its weighted total
  /// w_j * z_j.
  void increase_total(std::size_t j, Real total) {
    series_.check_index(j);
    if (!(total > series_.totals()[j - 1])) {
      throw std::invalid_argument(
          "sequential: decrease not supported by abridged path (index " +
          std::to_string(j) + ")");
    }
    series_.assign_total(j, total);
    rebuild_from(j - 1);
  }

  /// Any change of z_j: increases take the abridged path, equal values are a
  /// no-op and decreases refit from scratch.
  void update(std::size_t j, Real value) {
    series_.check_index(j);
    const Real current = series_.z()[j - 1];
    if (value > current) {
      increase(j, value);
    } else if (value == current) {
      origin_ = provenance::unchanged;
      touched_ = 0;
    } else {
      series_.assign(j, value);
      const auto fitted = fit_modified(series_);
      blocks_.assign(fitted.blocks().begin(), fitted.blocks().end());
      origin_ = provenance::recomputed;
      touched_ = series_.size();
    }
  }

 private:
  void rebuild_from(std::size_t pos) {
    // s_o: the block whose end b_{s_o} is the first one >= j_o.
    const auto so_it = std::lower_bound(
        blocks_.begin(), blocks_.end(), pos + 1,
        [](const block& b, std::size_t j) { return b.end < j; });
    const auto so = static_cast<std::size_t>(so_it - blocks_.begin());
    const std::size_t head_begin = so == 0 ? 0 : blocks_[so - 1].end;
    const std::size_t old_end = blocks_[so].end;

    tail_.assign(blocks_.begin() + static_cast<std::ptrdiff_t>(so) + 1, blocks_.end());
    blocks_.resize(so);

    // Initialization: the head block {b_{s_o-1}+1..j_o} under the new z.
    const auto w = series_.w();
    const auto totals = series_.totals();
    block head{pos + 1, 0, 0, 0};
    for (std::size_t i = head_begin; i <= pos; ++i) {
      head.weight += w[i];
      head.total += totals[i];
    }
    head.mean = head_begin == pos ? series_.z()[pos] : head.total / head.weight;
    blocks_.push_back(head);
    detail::pool_violators(blocks_);

    // Induction over j_o+1..b_{s_o}.
    for (std::size_t i = pos + 1; i < old_end; ++i) {
      detail::push_singleton(blocks_, series_, i);
    }

    // Finalization.
    blocks_.insert(blocks_.end(), tail_.begin(), tail_.end());
    origin_ = provenance::abridged;
    touched_ = old_end;
  }

  basic_weighted_series<Real> series_;
  std::vector<block> blocks_;
  std::vector<block> tail_;
  provenance origin_ = provenance::initial;
  std::size_t touched_ = 0;
};

using sequential_state = basic_sequential_state<double>;

/// Fits `series` with the modified PAVA and wraps the result for updates.
template <std::floating_point Real>
basic_sequential_state<Real> init(basic_weighted_series<Real> series) {
  return basic_sequential_state<Real>(std::move(series));
}

/// Value-returning form of basic_sequential_state::increase().
template <std::floating_point Real>
basic_sequential_state<Real> update_increase(basic_sequential_state<Real> state,
                                             std::size_t j, Real value) {
  state.increase(j, value);
  return state;
}

/// Value-returning form of basic_sequential_state::update().
template <std::floating_point Real>
basic_sequential_state<Real> update_any(basic_sequential_state<Real> state,
                                        std::size_t j, Real value) {
  state.update(j, value);
  return state;
}

}  // namespace antitonic

#endif  // ANTITONIC_SEQUENTIAL_HPP_
