#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "basket/errors.hpp"
#include "basket/gibbs.hpp"
#include "basket/model.hpp"

namespace basket {

/// Historical purchase data in spin encoding: entry (k, i) is +1 if basket k
/// contains product i, -1 otherwise. Binary 0/1 inputs are converted on
/// ingestion.
struct TransactionSample {
  std::int64_t m = 0;  // number of baskets
  int n = 0;           // number of products
  std::vector<std::int8_t> spins;  // row-major m x n, entries in {-1, +1}

  std::int8_t at(std::int64_t k, int i) const {
    return spins[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
  }

  void validate() const {
    if (m < 1 || n < 1) throw DimensionMismatch("TransactionSample: need m >= 1 and n >= 1");
    if (spins.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(n))
      throw DimensionMismatch("TransactionSample: data size mismatch");
    for (std::int8_t v : spins)
      if (v != -1 && v != 1) throw DimensionMismatch("TransactionSample: entries must be -1 or +1");
  }

  static TransactionSample from_batch(const SampleBatch& batch, int n_products) {
    TransactionSample t;
    t.m = batch.n_samples;
    t.n = n_products;
    t.spins.assign(static_cast<std::size_t>(t.m) * static_cast<std::size_t>(t.n), -1);
    for (std::int64_t k = 0; k < batch.n_samples; ++k) {
      const std::uint8_t* row = batch.row(k);
      for (int a = 0; a < batch.assortment.size(); ++a)
        if (row[a])
          t.spins[static_cast<std::size_t>(k) * t.n + static_cast<std::size_t>(batch.assortment.member(a))] = 1;
    }
    return t;
  }
};

/// First and second sample moments of spin data: mu_i = mean spin,
/// s = B^T B / m (diagonal identically 1), c = s - mu mu^T.
struct Moments {
  int n = 0;
  std::vector<double> mu;  // length n
  std::vector<double> s;   // row-major n x n
  std::vector<double> c;   // row-major n x n

  double second(int i, int j) const { return s[static_cast<std::size_t>(i) * n + j]; }
  double cov(int i, int j) const { return c[static_cast<std::size_t>(i) * n + j]; }
};

inline Moments compute_moments(const TransactionSample& data) {
  data.validate();
  const int n = data.n;
  Moments out;
  out.n = n;
  out.mu.assign(static_cast<std::size_t>(n), 0.0);
  out.s.assign(static_cast<std::size_t>(n) * n, 0.0);
  out.c.assign(static_cast<std::size_t>(n) * n, 0.0);

  std::vector<std::int64_t> sum(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> cross(static_cast<std::size_t>(n) * n, 0);
  for (std::int64_t k = 0; k < data.m; ++k) {
    const std::int8_t* row = data.spins.data() + static_cast<std::size_t>(k) * n;
    for (int i = 0; i < n; ++i) {
      sum[static_cast<std::size_t>(i)] += row[i];
      for (int j = i; j < n; ++j)
        cross[static_cast<std::size_t>(i) * n + j] += static_cast<std::int64_t>(row[i]) * row[j];
    }
  }

  const double m = static_cast<double>(data.m);
  for (int i = 0; i < n; ++i) {
    out.mu[static_cast<std::size_t>(i)] = static_cast<double>(sum[static_cast<std::size_t>(i)]) / m;
    if (std::abs(out.mu[static_cast<std::size_t>(i)]) >= 1.0)
      throw DegenerateColumn("product " + std::to_string(i) +
                             " is bought always or never; estimators cannot proceed");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double sij = static_cast<double>(cross[static_cast<std::size_t>(i) * n + j]) / m;
      out.s[static_cast<std::size_t>(i) * n + j] = sij;
      out.s[static_cast<std::size_t>(j) * n + i] = sij;
      const double cij = sij - out.mu[static_cast<std::size_t>(i)] * out.mu[static_cast<std::size_t>(j)];
      out.c[static_cast<std::size_t>(i) * n + j] = cij;
      out.c[static_cast<std::size_t>(j) * n + i] = cij;
    }
  }
  return out;
}

}  // namespace basket
