#ifndef ANTITONIC_PAVA_HPP_
#define ANTITONIC_PAVA_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antitonic/series.hpp"

namespace antitonic {

/// Which batch or sequential PAVA flavour to run.
enum class variant { standard, modified, abridged };

inline const char* to_string(variant v) noexcept {
  switch (v) {
    case variant::standard: return "standard";
    case variant::modified: return "modified";
    case variant::abridged: return "abridged";
  }
  return "?";
}

inline variant parse_variant(const std::string& name) {
  if (name == "standard") return variant::standard;
  if (name == "modified") return variant::modified;
  if (name == "abridged") return variant::abridged;
  throw std::invalid_argument("unknown variant '" + name + "'");
}

namespace detail {

/// Pools the last two blocks while they violate M_{d-1} > M_d. The test is
/// the literal `<=`; equal means pool.
template <std::floating_point Real>
inline void pool_violators(std::vector<basic_block<Real>>& stack) {
  while (stack.size() > 1) {
    auto& prev = stack[stack.size() - 2];
    const auto& last = stack.back();
    if (!(prev.mean <= last.mean)) break;
    // (W_{d-1} M_{d-1} + W_d M_d) / (W_{d-1} + W_d), with the products
    // carried as block totals.
    prev.weight += last.weight;
    prev.total += last.total;
    prev.mean = prev.total / prev.weight;
    prev.end = last.end;
    stack.pop_back();
  }
}

/// Appends the singleton block {j} (0-based position `pos`) and pools.
template <std::floating_point Real>
inline void push_singleton(std::vector<basic_block<Real>>& stack,
                           const basic_weighted_series<Real>& series,
                           std::size_t pos) {
  stack.push_back({pos + 1, series.w()[pos], series.totals()[pos],
                   series.z()[pos]});
  pool_violators(stack);
}

/// Appends the maximal constant run of z starting at `pos`; returns the
/// position after the run.
template <std::floating_point Real>
inline std::size_t push_run(std::vector<basic_block<Real>>& stack,
                            const basic_weighted_series<Real>& series,
                            std::size_t pos) {
  const auto z = series.z();
  const auto w = series.w();
  const auto t = series.totals();
  const Real value = z[pos];
  Real weight = w[pos];
  Real total = t[pos];
  std::size_t next = pos + 1;
  while (next < z.size() && z[next] == value) {
    weight += w[next];
    total += t[next];
    ++next;
  }
  stack.push_back({next, weight, total, value});
  pool_violators(stack);
  return next;
}

struct no_trace {
  template <class Span>
  void operator()(std::size_t, Span) const noexcept {}
};

}  // namespace detail

/// Standard PAVA: singletons are added left to right and adjacent violators
/// pooled after each addition.
///
/// `trace(b_d, blocks)` is invoked after every induction step (once the
/// pooling for index b_d has finished) with the current block stack.
template <std::floating_point Real, class Trace = detail::no_trace>
basic_fitted_blocks<Real> fit_standard(const basic_weighted_series<Real>& series,
                                       Trace&& trace = {}) {
  std::vector<basic_block<Real>> stack;
  stack.reserve(series.size());
  for (std::size_t pos = 0; pos < series.size(); ++pos) {
    detail::push_singleton(stack, series, pos);
    trace(pos + 1, std::span<const basic_block<Real>>(stack));
  }
  return basic_fitted_blocks<Real>(std::move(stack));
}

/// Modified PAVA: each new block is seeded with a maximal run of equal z
/// values instead of a singleton. Same minimizer as fit_standard.
template <std::floating_point Real>
basic_fitted_blocks<Real> fit_modified(const basic_weighted_series<Real>& series) {
  std::vector<basic_block<Real>> stack;
  std::size_t pos = 0;
  while (pos < series.size()) pos = detail::push_run(stack, series, pos);
  return basic_fitted_blocks<Real>(std::move(stack));
}

/// Batch fit with the given variant (abridged has no batch form and maps to
/// modified, which is what its initial state uses).
template <std::floating_point Real>
basic_fitted_blocks<Real> fit(const basic_weighted_series<Real>& series,
                              variant v) {
  return v == variant::standard ? fit_standard(series) : fit_modified(series);
}

/// Writes f_j = M_s for j in P_s into `out`, which must hold b_d values.
template <std::floating_point Real>
void expand_into(std::span<const basic_block<Real>> blocks, std::span<Real> out) {
  std::size_t pos = 0;
  for (const auto& blk : blocks) {
    if (blk.end > out.size()) throw std::length_error("expand: output too short");
    for (; pos < blk.end; ++pos) out[pos] = blk.mean;
  }
}

/// The antitonic fit A(z) as a plain vector.
template <std::floating_point Real>
std::vector<Real> expand(const basic_fitted_blocks<Real>& blocks) {
  std::vector<Real> out(blocks.size());
  expand_into(blocks.blocks(), std::span<Real>(out));
  return out;
}

/// Weighted least-squares projection onto non-decreasing vectors, computed as
/// -A(-z).
template <std::floating_point Real>
std::vector<Real> isotonic_fit(const basic_weighted_series<Real>& series) {
  std::vector<Real> negated(series.z().begin(), series.z().end());
  for (auto& v : negated) v = -v;
  const basic_weighted_series<Real> flipped(
      std::move(negated), std::vector<Real>(series.w().begin(), series.w().end()));
  auto f = expand(fit_standard(flipped));
  for (auto& v : f) v = -v;
  return f;
}

/// Re-sums every block from scratch and compares with the stored weights and
/// means. Returns a description of the first inconsistency, if any.
template <std::floating_point Real>
std::optional<std::string> block_defect(const basic_fitted_blocks<Real>& blocks,
                                        const basic_weighted_series<Real>& series,
                                        Real rel_tol = Real(1e-9)) {
  if (blocks.block_count() == 0) return "no blocks";
  if (blocks.size() != series.size()) return "partition does not cover 1..m";
  auto close = [rel_tol](Real a, Real b) {
    return std::abs(a - b) <= rel_tol * std::max({Real(1), std::abs(a), std::abs(b)});
  };
  std::size_t begin = 0;
  const auto all = blocks.blocks();
  for (std::size_t s = 0; s < all.size(); ++s) {
    const auto& blk = all[s];
    if (blk.end <= begin) return "boundaries not strictly increasing";
    if (s > 0 && !(all[s - 1].mean > blk.mean)) {
      return "means not strictly decreasing at block " + std::to_string(s + 1);
    }
    Real weight = 0;
    Real total = 0;
    for (std::size_t j = begin; j < blk.end; ++j) {
      weight += series.w()[j];
      total += series.w()[j] * series.z()[j];
    }
    if (!close(weight, blk.weight)) {
      return "weight mismatch in block " + std::to_string(s + 1);
    }
    if (!close(total / weight, blk.mean)) {
      return "mean mismatch in block " + std::to_string(s + 1);
    }
    begin = blk.end;
  }
  return std::nullopt;
}

}  // namespace antitonic

#endif  // ANTITONIC_PAVA_HPP_
