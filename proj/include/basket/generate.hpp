#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "basket/errors.hpp"
#include "basket/model.hpp"
#include "basket/rng.hpp"

namespace basket {

/// Synthetic instance generator. Draw order is fixed (diagonals ascending,
/// then unordered pairs in lexicographic order -- edge presence, magnitude,
/// sign -- then profits ascending), so a seed pins the instance exactly.
/// Intervals are sampled on the half-open range [lo, hi).
struct GenConfig {
  int n = 50;
  double p_edge = 0.2;
  double p_neg = 0.8;
  std::array<double, 2> node_range{2.0, 4.0};
  std::array<double, 2> edge_abs_range{1.0, 2.0};
  std::array<double, 2> profit_range{0.01, 1.0};
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw DimensionMismatch("GenConfig: n must be >= 1");
    if (p_edge < 0.0 || p_edge > 1.0 || p_neg < 0.0 || p_neg > 1.0)
      throw DimensionMismatch("GenConfig: probabilities must lie in [0, 1]");
    for (const auto& r : {node_range, edge_abs_range, profit_range})
      if (r[0] > r[1]) throw DimensionMismatch("GenConfig: interval lo must not exceed hi");
  }
};

inline Instance generate_instance(const GenConfig& config) {
  config.validate();
  const int n = config.n;
  SplitMix64 rng(config.seed);

  std::vector<double> theta(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    theta[static_cast<std::size_t>(i) * n + i] = rng.uniform(config.node_range[0], config.node_range[1]);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!rng.bernoulli(config.p_edge)) continue;
      double w = rng.uniform(config.edge_abs_range[0], config.edge_abs_range[1]);
      if (rng.bernoulli(config.p_neg)) w = -w;
      theta[static_cast<std::size_t>(i) * n + j] = w;
      theta[static_cast<std::size_t>(j) * n + i] = w;
    }
  }
  std::vector<double> profits(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    profits[static_cast<std::size_t>(j)] = rng.uniform(config.profit_range[0], config.profit_range[1]);
  return Instance(IsingModel(n, std::move(theta), Domain::Binary), std::move(profits));
}

}  // namespace basket
