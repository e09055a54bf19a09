#ifndef ANTITONIC_TESTS_TEST_SUPPORT_HPP_
#define ANTITONIC_TESTS_TEST_SUPPORT_HPP_

#include <cstddef>
#include <random>
#include <vector>

#include "antitonic/series.hpp"

namespace antitonic::testing {

/// The nine-component example vector and its antitonic fit.
inline const std::vector<double> kExampleZ{1, 3, 2, 0, -1, 1, 0.5, -1, 1};
inline const std::vector<double> kExampleFit{2, 2, 2, 0.125, 0.125, 0.125, 0.125, 0, 0};

inline weighted_series example_series() { return weighted_series(kExampleZ); }

/// Random series: m in [1, max_m], z from the integer grid [lo, hi], w from
/// {1, 2, 3}.
inline weighted_series random_series(std::mt19937& rng, std::size_t max_m, int lo = -3,
                                     int hi = 3) {
  std::uniform_int_distribution<std::size_t> len(1, max_m);
  std::uniform_int_distribution<int> value(lo, hi);
  std::uniform_int_distribution<int> weight(1, 3);
  const std::size_t m = len(rng);
  std::vector<double> z(m), w(m);
  for (std::size_t i = 0; i < m; ++i) {
    z[i] = value(rng);
    w[i] = weight(rng);
  }
  return weighted_series(std::move(z), std::move(w));
}

/// All vectors of length m over `alphabet`, in lexicographic order.
inline std::vector<std::vector<double>> all_vectors(std::size_t m,
                                                    const std::vector<double>& alphabet) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> digits(m, 0);
  while (true) {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = alphabet[digits[i]];
    out.push_back(std::move(v));
    std::size_t pos = 0;
    while (pos < m && ++digits[pos] == alphabet.size()) digits[pos++] = 0;
    if (pos == m) break;
  }
  return out;
}

}  // namespace antitonic::testing

#endif  // ANTITONIC_TESTS_TEST_SUPPORT_HPP_
