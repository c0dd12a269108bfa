// Small shared statistics helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace tprobe {

inline double mean(std::span<const double> xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

inline double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Nearest-rank percentile: value at rank ceil(p/100 * N) of the sorted data.
inline double nearest_rank_percentile(std::vector<double> xs, double p) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const auto n = static_cast<double>(xs.size());
  auto rank = static_cast<size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<size_t>(rank, 1, xs.size());
  return xs[rank - 1];
}

}  // namespace tprobe
