#pragma once

#include "basket/exact.hpp"
#include "basket/model.hpp"
#include "basket/moments.hpp"

namespace basket {

/// Negative mean log-likelihood of the observed baskets under a spin-domain
/// model:  A(theta) - (sum_i theta_ii mu_i + sum_{i != j} theta_ij s_ij),
/// with the log-partition over the full portfolio computed exactly.
inline double neg_mean_log_likelihood(const IsingModel& spin, const Moments& moments,
                                      int limit = kDefaultExactLimit) {
  if (spin.domain() != Domain::Spin)
    throw WrongDomain("neg_mean_log_likelihood expects a spin-domain model");
  if (spin.n() != moments.n)
    throw DimensionMismatch("model size does not match moments");
  if (spin.n() > limit)
    throw AssortmentTooLarge("portfolio exceeds the exact-enumeration limit");
  const double a = log_partition(spin, Assortment::full(spin.n()), limit);
  double fit = 0.0;
  for (int i = 0; i < spin.n(); ++i) {
    fit += spin.theta(i, i) * moments.mu[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < spin.n(); ++j)
      fit += 2.0 * spin.theta(i, j) * moments.second(i, j);
  }
  return a - fit;
}

}  // namespace basket
