#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "basket/errors.hpp"
#include "basket/exact.hpp"
#include "basket/model.hpp"
#include "basket/parallel.hpp"
#include "basket/rng.hpp"

namespace basket {

/// Coordinate update schedule: sweep members in order, or pick one member
/// uniformly at random per step.
enum class Scan { Systematic, Random };

struct SamplerConfig {
  std::int64_t n_samples = 10000;
  int burn_in = 100;    // full sweeps discarded before retaining anything
  int thinning = 1;     // sweeps between retained samples
  std::uint64_t seed = 0;
  Scan scan = Scan::Systematic;
  int chains = 1;       // independent chains with derived seeds, concatenated

  void validate() const {
    if (n_samples < 1) throw DimensionMismatch("SamplerConfig: n_samples must be >= 1");
    if (burn_in < 0) throw DimensionMismatch("SamplerConfig: burn_in must be >= 0");
    if (thinning < 1) throw DimensionMismatch("SamplerConfig: thinning must be >= 1");
    if (chains < 1) throw DimensionMismatch("SamplerConfig: chains must be >= 1");
  }
};

/// Retained Gibbs samples: n_samples rows of 0/1 indicators, columns aligned
/// with the assortment's member order.
struct SampleBatch {
  Assortment assortment;
  std::int64_t n_samples = 0;
  std::vector<std::uint8_t> data;  // row-major n_samples x |S|
  SamplerConfig config;

  const std::uint8_t* row(std::int64_t i) const {
    return data.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(assortment.size());
  }
};

inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

/// Exact conditional P(x_k = 1 | x_-k, S) for the binary model, in closed
/// sigmoid form: sigma(theta_kk + 2 sum_{i in S, i != k} theta_ki x_i).
/// Equals the two-weight ratio g(1,x_-k) / (g(0,x_-k) + g(1,x_-k)).
inline double conditional_buy_probability(const IsingModel& m, const Assortment& s,
                                          const Basket& x, int position) {
  const int k = s.member(position);
  double field = m.theta(k, k);
  for (int b = 0; b < s.size(); ++b) {
    if (b == position) continue;
    if (x.values[static_cast<std::size_t>(b)])
      field += 2.0 * m.theta(k, s.member(b));
  }
  return sigmoid(field);
}

namespace detail {

/// One Gibbs chain over a fixed assortment. Local fields
/// h_a = theta_aa + 2 sum_{b != a} theta_ab x_b are maintained incrementally,
/// so a coordinate update costs O(1) plus O(degree) when the value flips.
class GibbsChain {
 public:
  GibbsChain(const IsingModel& m, const Assortment& s, std::uint64_t seed)
      : k_(s.size()), rng_(seed), lc_(m, s), x_(static_cast<std::size_t>(k_), 0),
        fields_(lc_.diag) {}

  void update_coordinate(int a) {
    const auto sa = static_cast<std::size_t>(a);
    const double p = sigmoid(fields_[sa]);
    const std::uint8_t v = rng_.u01() <= p ? 1 : 0;
    if (v != x_[sa]) {
      const double delta = v ? 2.0 : -2.0;
      for (const auto& [b, w] : lc_.adj[sa]) fields_[static_cast<std::size_t>(b)] += delta * w;
      x_[sa] = v;
    }
  }

  void sweep_systematic() {
    for (int a = 0; a < k_; ++a) update_coordinate(a);
  }

  /// One "sweep" of the random-scan schedule: k single-coordinate updates at
  /// uniformly random positions.
  void sweep_random() {
    for (int a = 0; a < k_; ++a)
      update_coordinate(static_cast<int>(rng_.below(static_cast<std::uint64_t>(k_))));
  }

  void sweep(Scan scan) { scan == Scan::Systematic ? sweep_systematic() : sweep_random(); }

  const std::vector<std::uint8_t>& state() const { return x_; }

 private:
  int k_;
  SplitMix64 rng_;
  LocalCouplings lc_;
  std::vector<std::uint8_t> x_;
  std::vector<double> fields_;
};

}  // namespace detail

/// One full systematic-scan pass: every offered product is re-drawn from its
/// exact conditional, in member order.
inline Basket gibbs_sweep_systematic(const IsingModel& m, const Assortment& s, Basket x,
                                     SplitMix64& rng) {
  if (m.domain() != Domain::Binary) throw WrongDomain("Gibbs sampler expects a binary-domain model");
  check_conforms(x, s, Domain::Binary);
  for (int a = 0; a < s.size(); ++a) {
    const double p = conditional_buy_probability(m, s, x, a);
    x.values[static_cast<std::size_t>(a)] = rng.u01() <= p ? 1 : 0;
  }
  return x;
}

/// One random-scan step: a single uniformly chosen product is re-drawn from
/// its exact conditional.
inline Basket gibbs_step_random(const IsingModel& m, const Assortment& s, Basket x,
                                SplitMix64& rng) {
  if (m.domain() != Domain::Binary) throw WrongDomain("Gibbs sampler expects a binary-domain model");
  if (s.empty()) throw EmptyAssortment("gibbs_step_random requires a nonempty assortment");
  check_conforms(x, s, Domain::Binary);
  const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(s.size())));
  const double p = conditional_buy_probability(m, s, x, a);
  x.values[static_cast<std::size_t>(a)] = rng.u01() <= p ? 1 : 0;
  return x;
}

/// Draws config.n_samples baskets for assortment s. Chains start from the
/// empty basket, discard config.burn_in sweeps, then retain one state every
/// config.thinning sweeps. With several chains the sample budget is split
/// evenly, each chain seeded with derive_seed(seed, chain); results are
/// concatenated in chain order, so the batch is reproducible bit-for-bit.
inline SampleBatch sample_baskets(const IsingModel& m, const Assortment& s,
                                  const SamplerConfig& config, int threads = 1) {
  if (m.domain() != Domain::Binary) throw WrongDomain("Gibbs sampler expects a binary-domain model");
  detail::check_members(m, s);
  config.validate();
  if (s.empty()) throw EmptyAssortment("sample_baskets requires a nonempty assortment");

  const int k = s.size();
  SampleBatch batch;
  batch.assortment = s;
  batch.n_samples = config.n_samples;
  batch.config = config;
  batch.data.assign(static_cast<std::size_t>(config.n_samples) * static_cast<std::size_t>(k), 0);

  const int chains = config.chains;
  const std::int64_t base = config.n_samples / chains;
  const std::int64_t rem = config.n_samples % chains;
  std::vector<std::int64_t> offset(static_cast<std::size_t>(chains) + 1, 0);
  for (int c = 0; c < chains; ++c)
    offset[static_cast<std::size_t>(c) + 1] = offset[static_cast<std::size_t>(c)] + base + (c < rem ? 1 : 0);

  parallel_for(static_cast<std::size_t>(chains), threads, [&](std::size_t c) {
    detail::GibbsChain chain(m, s, chains == 1 ? config.seed : derive_seed(config.seed, c));
    for (int b = 0; b < config.burn_in; ++b) chain.sweep(config.scan);
    for (std::int64_t i = offset[c]; i < offset[c + 1]; ++i) {
      for (int t = 0; t < config.thinning; ++t) chain.sweep(config.scan);
      std::uint8_t* row = batch.data.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(k);
      const auto& state = chain.state();
      for (int a = 0; a < k; ++a) row[a] = state[static_cast<std::size_t>(a)];
    }
  });
  return batch;
}

struct ProfitEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of R(S): mean basket revenue over Gibbs samples,
/// with the standard error of the mean. The empty assortment short-circuits
/// to (0, 0) without sampling.
inline ProfitEstimate estimate_profit(const Instance& inst, const Assortment& s,
                                      const SamplerConfig& config, int threads = 1) {
  if (s.empty()) return {0.0, 0.0};
  const SampleBatch batch = sample_baskets(inst.model, s, config, threads);
  const int k = s.size();
  std::vector<double> margins(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a)
    margins[static_cast<std::size_t>(a)] = inst.profits[static_cast<std::size_t>(s.member(a))];

  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t i = 0; i < batch.n_samples; ++i) {
    const std::uint8_t* row = batch.row(i);
    double rev = 0.0;
    for (int a = 0; a < k; ++a)
      if (row[a]) rev += margins[static_cast<std::size_t>(a)];
    sum += rev;
    sumsq += rev * rev;
  }
  const double n = static_cast<double>(batch.n_samples);
  const double mean = sum / n;
  double se = 0.0;
  if (batch.n_samples > 1) {
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    se = std::sqrt(var / n);
  }
  return {mean, se};
}

}  // namespace basket
