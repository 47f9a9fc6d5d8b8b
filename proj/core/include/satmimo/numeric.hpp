#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace satmimo {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

// Pairwise-tree sum. The reduction tree depends only on the element count,
// so results are reproducible for any chunking of the producing loop.
template <typename T>
T pairwise_sum(std::span<const T> x) {
  constexpr std::size_t kLeaf = 32;
  if (x.size() <= kLeaf) {
    T acc{};
    for (const T& v : x) acc += v;
    return acc;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

template <typename T>
T pairwise_mean(std::span<const T> x) {
  return x.empty() ? T{} : pairwise_sum(x) / static_cast<double>(x.size());
}

}  // namespace satmimo
