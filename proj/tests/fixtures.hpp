#pragma once

#include <vector>

#include "basket/model.hpp"
#include "basket/rng.hpp"

namespace fixtures {

/// Three products: 0 couples positively to both others, 1 and 2 repel.
/// R({1,2}) ~ 55 beats R({0,1,2}) ~ 47; the global optimum is {0,2} ~ 109.9.
inline basket::Instance three_product_shop() {
  basket::IsingModel model(3,
                           {1.0, 5.0, 2.0,   //
                            5.0, 5.0, -5.0,  //
                            2.0, -5.0, 5.0},
                           basket::Domain::Binary);
  return basket::Instance(std::move(model), {10.0, 10.0, 100.0});
}

inline basket::IsingModel random_model(basket::SplitMix64& rng, int n, basket::Domain domain,
                                       double diag_scale = 1.0, double coupling_scale = 0.5,
                                       double edge_prob = 1.0) {
  std::vector<double> theta(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    theta[static_cast<std::size_t>(i) * n + i] = rng.uniform(-diag_scale, diag_scale);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!rng.bernoulli(edge_prob)) continue;
      const double w = rng.uniform(-coupling_scale, coupling_scale);
      theta[static_cast<std::size_t>(i) * n + j] = w;
      theta[static_cast<std::size_t>(j) * n + i] = w;
    }
  }
  return basket::IsingModel(n, std::move(theta), domain);
}

inline basket::Instance random_instance(basket::SplitMix64& rng, int n, double diag_scale = 1.0,
                                        double coupling_scale = 0.5, double edge_prob = 0.5) {
  basket::IsingModel m = random_model(rng, n, basket::Domain::Binary, diag_scale, coupling_scale,
                                      edge_prob);
  std::vector<double> profits(static_cast<std::size_t>(n));
  for (double& r : profits) r = rng.uniform(0.01, 1.0);
  return basket::Instance(std::move(m), std::move(profits));
}

}  // namespace fixtures
