#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "basket/errors.hpp"
#include "basket/exact.hpp"
#include "basket/gibbs.hpp"
#include "basket/graph.hpp"
#include "basket/katz.hpp"
#include "basket/model.hpp"
#include "basket/rng.hpp"

namespace basket {

/// Profit oracle handed to the optimizers: either exact enumeration or Gibbs
/// estimation. Sampled evaluations derive a fresh seed per call from the
/// configured seed and a call counter, so optimizer runs are reproducible.
class ProfitEvaluator {
 public:
  static ProfitEvaluator exact(int limit = kDefaultExactLimit) {
    ProfitEvaluator e;
    e.exact_ = true;
    e.limit_ = limit;
    return e;
  }

  static ProfitEvaluator sampled(SamplerConfig config, int threads = 1) {
    ProfitEvaluator e;
    e.exact_ = false;
    e.sampler_ = config;
    e.threads_ = threads;
    return e;
  }

  double operator()(const Instance& inst, const Assortment& s) {
    ++evaluations_;
    if (s.empty()) return 0.0;
    if (exact_) return expected_profit_exact(inst, s, limit_);
    SamplerConfig per_call = sampler_;
    per_call.seed = derive_seed(sampler_.seed, static_cast<std::uint64_t>(evaluations_));
    return estimate_profit(inst, s, per_call, threads_).estimate;
  }

  bool is_exact() const { return exact_; }
  std::int64_t evaluations() const { return evaluations_; }
  const SamplerConfig& sampler() const { return sampler_; }
  int threads() const { return threads_; }

 private:
  bool exact_ = true;
  int limit_ = kDefaultExactLimit;
  SamplerConfig sampler_;
  int threads_ = 1;
  std::int64_t evaluations_ = 0;
};

struct TracePoint {
  std::int64_t iteration = 0;
  double current_value = 0.0;
  double temperature = 0.0;
};

struct OptimizationResult {
  Assortment assortment;
  double value = 0.0;
  std::int64_t evaluations = 0;
  std::vector<TracePoint> trace;
  bool empty_selected = false;  // the empty assortment won
  bool revalued = false;        // value comes from the final 4x re-estimate
};

struct AnnealConfig {
  std::int64_t k_temps = 10000;
  double p_min = 0.001;
  double p_max = 0.999;
  double d_obj = 0.25;                 // typical objective increase between neighbors
  std::optional<Assortment> start;     // defaults to the full portfolio
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const {
    if (k_temps < 1) throw DimensionMismatch("AnnealConfig: k_temps must be >= 1");
    if (!(0.0 < p_min && p_min < p_max && p_max < 1.0))
      throw DimensionMismatch("AnnealConfig: need 0 < p_min < p_max < 1");
    if (d_obj <= 0.0) throw DimensionMismatch("AnnealConfig: d_obj must be positive");
  }
};

namespace detail {

/// Deterministic preference order: higher value wins; exact ties go to the
/// smaller assortment, then lexicographically smaller member list.
inline bool better(double value, const std::vector<int>& members, double best_value,
                   const std::vector<int>& best_members) {
  if (value != best_value) return value > best_value;
  if (members.size() != best_members.size()) return members.size() < best_members.size();
  return members < best_members;
}

}  // namespace detail

/// Exhaustive search over all 2^n assortments. Basket weights over the full
/// portfolio are precomputed once (shifted by the global energy peak), so
/// each assortment only sums its own sub-baskets; assortments whose weights
/// all underflow fall back to a per-assortment enumeration.
inline OptimizationResult brute_force(const Instance& inst, int max_n = 20,
                                      int exact_limit = kDefaultExactLimit) {
  const int n = inst.n();
  if (n > max_n)
    throw TooLarge("brute_force supports up to " + std::to_string(max_n) + " products");

  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> weight(total), revenue(total);
  {
    double peak = 0.0;
    std::vector<double> energy(total);
    std::uint64_t mask = 0;
    double rev = 0.0;
    detail::for_each_configuration(
        inst.model, Assortment::full(n),
        [&](const std::vector<std::int8_t>& x, double e, int flipped) {
          if (flipped >= 0) {
            const auto sf = static_cast<std::size_t>(flipped);
            mask ^= std::uint64_t{1} << flipped;
            rev += x[sf] == 1 ? inst.profits[sf] : -inst.profits[sf];
          }
          energy[mask] = e;
          revenue[mask] = rev;
          peak = std::max(peak, e);
        });
    for (std::uint64_t b = 0; b < total; ++b) weight[b] = std::exp(energy[b] - peak);
  }

  OptimizationResult best;
  best.assortment = Assortment();
  best.value = 0.0;
  std::int64_t evaluations = 1;  // the empty assortment
  for (std::uint64_t s = 1; s < total; ++s) {
    double den = 0.0, num = 0.0;
    std::uint64_t sub = s;
    for (;;) {
      den += weight[sub];
      num += weight[sub] * revenue[sub];
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    ++evaluations;
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (s & (std::uint64_t{1} << i)) members.push_back(i);
    double value;
    if (den > 0.0) {
      value = num / den;
    } else {
      value = expected_profit_exact(inst, Assortment(members), exact_limit);
    }
    if (detail::better(value, members, best.value, best.assortment.members())) {
      best.assortment = Assortment(members);
      best.value = value;
    }
  }
  best.evaluations = evaluations;
  best.empty_selected = best.assortment.empty();
  // The winner is recomputed through the standard exact path.
  if (!best.assortment.empty())
    best.value = expected_profit_exact(inst, best.assortment, exact_limit);
  return best;
}

/// Simulated annealing over the single-product-flip neighborhood.
///
/// Per iteration: toggle a uniformly drawn product, evaluate the candidate
/// (the empty assortment counts as 0 without an evaluator call), accept
/// improvements outright and deteriorations with probability
/// exp((R_can - R_cur)/T), then cool the temperature along the linear
/// acceptance-probability schedule
///   T_i = -d_obj / log(p_max + (p_min - p_max) i / k_temps).
/// The best state seen is tracked and returned. With a sampled evaluator the
/// returned value is re-estimated once at the end with a 4x sample budget.
inline OptimizationResult simulated_annealing(const Instance& inst, const AnnealConfig& config,
                                              ProfitEvaluator evaluator) {
  config.validate();
  const int n = inst.n();
  SplitMix64 rng(config.seed);

  std::vector<char> in_cur(static_cast<std::size_t>(n), 1);
  if (config.start) {
    std::fill(in_cur.begin(), in_cur.end(), 0);
    for (int p : config.start->members()) {
      if (p >= n) throw DimensionMismatch("start assortment refers to an unknown product");
      in_cur[static_cast<std::size_t>(p)] = 1;
    }
  }
  auto as_assortment = [&](const std::vector<char>& in) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (in[static_cast<std::size_t>(i)]) members.push_back(i);
    return Assortment(std::move(members));
  };

  Assortment s_cur = as_assortment(in_cur);
  double r_cur = s_cur.empty() ? 0.0 : evaluator(inst, s_cur);
  std::vector<char> in_heur = in_cur;
  double r_heur = r_cur;

  OptimizationResult out;
  if (config.record_trace) out.trace.reserve(static_cast<std::size_t>(config.k_temps));

  double temperature = -config.d_obj / std::log(config.p_max);
  for (std::int64_t i = 1; i <= config.k_temps; ++i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<char> in_can = in_cur;
    in_can[static_cast<std::size_t>(j)] ^= 1;
    const Assortment s_can = as_assortment(in_can);
    const double r_can = s_can.empty() ? 0.0 : evaluator(inst, s_can);

    if (r_can > r_cur) {
      in_cur.swap(in_can);
      r_cur = r_can;
    } else if (rng.u01() < std::exp((r_can - r_cur) / temperature)) {
      in_cur.swap(in_can);
      r_cur = r_can;
    }
    if (r_cur > r_heur) {
      in_heur = in_cur;
      r_heur = r_cur;
    }
    if (config.record_trace) out.trace.push_back({i, r_cur, temperature});
    temperature = -config.d_obj /
                  std::log(config.p_max + (config.p_min - config.p_max) *
                                              static_cast<double>(i) / static_cast<double>(config.k_temps));
  }

  out.assortment = as_assortment(in_heur);
  out.empty_selected = out.assortment.empty();
  if (out.assortment.empty()) {
    out.value = 0.0;
  } else if (evaluator.is_exact()) {
    out.value = evaluator(inst, out.assortment);
  } else {
    constexpr std::uint64_t kFinalPassStream = 0x5EEDFA11;
    SamplerConfig final_pass = evaluator.sampler();
    final_pass.n_samples *= 4;
    final_pass.seed = derive_seed(evaluator.sampler().seed, kFinalPassStream);
    out.value = estimate_profit(inst, out.assortment, final_pass, evaluator.threads()).estimate;
    out.revalued = true;
  }
  out.evaluations = evaluator.evaluations();
  return out;
}

/// Evaluates the empty assortment plus the n prefixes of the products ranked
/// by weight (descending; ties by product index) and returns the best.
inline OptimizationResult weight_ordered(const Instance& inst, const std::vector<double>& weights,
                                         ProfitEvaluator evaluator) {
  const int n = inst.n();
  if (weights.size() != static_cast<std::size_t>(n))
    throw DimensionMismatch("weight_ordered: weights length must equal n");

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double wa = weights[static_cast<std::size_t>(a)], wb = weights[static_cast<std::size_t>(b)];
    if (wa != wb) return wa > wb;
    return a < b;
  });

  OptimizationResult best;
  best.assortment = Assortment();
  best.value = 0.0;
  best.evaluations = 1;  // the empty assortment counts as one evaluation
  std::vector<int> prefix;
  for (int k = 0; k < n; ++k) {
    prefix.push_back(order[static_cast<std::size_t>(k)]);
    Assortment s(prefix);
    const double v = evaluator(inst, s);
    if (v > best.value) {
      best.assortment = std::move(s);
      best.value = v;
    }
  }
  best.evaluations += evaluator.evaluations();
  best.empty_selected = best.assortment.empty();
  return best;
}

/// w_j = r_j: the classic revenue-ordered ranking.
inline std::vector<double> revenue_weights(const Instance& inst) { return inst.profits; }

/// w_j = r_j * exp(theta_jj + sum_{i != j} theta_ij).
inline std::vector<double> parameter_weights(const Instance& inst) {
  const int n = inst.n();
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double row = inst.model.theta(j, j);
    for (int i = 0; i < n; ++i)
      if (i != j) row += inst.model.theta(i, j);
    w[static_cast<std::size_t>(j)] = inst.profits[static_cast<std::size_t>(j)] * std::exp(row);
  }
  return w;
}

/// w_j = r_j * KatzCentrality_j on the coupling graph.
inline std::vector<double> katz_weights(const Instance& inst, double alpha, double beta) {
  const std::vector<double> scores = katz_centrality(build_graph(inst.model), alpha, beta);
  std::vector<double> w(scores.size());
  for (std::size_t j = 0; j < scores.size(); ++j) w[j] = inst.profits[j] * scores[j];
  return w;
}

}  // namespace basket
