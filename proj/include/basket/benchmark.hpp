#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "basket/decompose.hpp"
#include "basket/errors.hpp"
#include "basket/generate.hpp"
#include "basket/katz.hpp"
#include "basket/optimize.hpp"
#include "basket/parallel.hpp"

namespace basket {

enum class Method { SimulatedAnnealing, RevenueWeights, ParameterWeights, KatzWeights };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::SimulatedAnnealing: return "sa";
    case Method::RevenueWeights: return "revenue";
    case Method::ParameterWeights: return "parameter";
    case Method::KatzWeights: return "katz";
  }
  return "?";
}

struct BenchmarkRow {
  int instance_id = 0;
  std::string method;
  double value = 0.0;     // profit of the chosen assortment
  double baseline = 0.0;  // unoptimized R(N) estimate, or the brute-force optimum
  double metric = 0.0;    // profit gain over baseline, or optimality gap
  int assortment_size = 0;
  double seconds = 0.0;   // wall time; not covered by the determinism contract
};

struct MethodAggregate {
  std::string method;
  int count = 0;
  double mean_metric = 0.0;
  double mean_size = 0.0;
  double mean_seconds = 0.0;
};

struct BenchmarkReport {
  std::string suite;
  std::vector<BenchmarkRow> rows;

  std::vector<MethodAggregate> aggregates() const {
    std::map<std::string, MethodAggregate> agg;
    for (const BenchmarkRow& r : rows) {
      MethodAggregate& a = agg[r.method];
      a.method = r.method;
      ++a.count;
      a.mean_metric += r.metric;
      a.mean_size += r.assortment_size;
      a.mean_seconds += r.seconds;
    }
    std::vector<MethodAggregate> out;
    for (auto& [name, a] : agg) {
      a.mean_metric /= a.count;
      a.mean_size /= a.count;
      a.mean_seconds /= a.count;
      out.push_back(a);
    }
    return out;
  }
};

/// The usual Katz damping choice, 1/lambda_max - 0.01, guarded for graphs
/// where that would be nonpositive or undefined.
inline double default_katz_alpha(const ProductGraph& g) {
  const double radius = spectral_radius(g);
  if (radius <= 0.0) return 1.0;  // edgeless: any alpha converges immediately
  const double alpha = 1.0 / radius - 0.01;
  return alpha > 0.0 ? alpha : 0.5 / radius;
}

namespace detail {

inline double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

}  // namespace detail

struct ComparisonConfig {
  GenConfig gen;                // per-instance seed is derived from `seed`
  int n_instances = 10;
  std::vector<Method> methods{Method::SimulatedAnnealing, Method::RevenueWeights,
                              Method::ParameterWeights, Method::KatzWeights};
  SamplerConfig sampler;        // shared evaluation budget for all methods
  AnnealConfig sa;              // k_temps etc.; seeds are derived per instance
  double katz_beta = 1.0;
  int exact_limit = kDefaultExactLimit;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Profit-gain comparison on synthetic instances: every method optimizes the
/// same generated instances with the shared sampling budget, and gains are
/// measured against the unoptimized full assortment (estimated with that same
/// budget, or computed exactly when the portfolio is small enough).
inline BenchmarkReport run_comparison(const ComparisonConfig& config) {
  BenchmarkReport report;
  report.suite = "comparison";
  const std::size_t n_methods = config.methods.size();
  report.rows.resize(static_cast<std::size_t>(config.n_instances) * n_methods);

  parallel_for(static_cast<std::size_t>(config.n_instances), config.threads, [&](std::size_t id) {
    GenConfig gen = config.gen;
    gen.seed = derive_seed(config.seed, 1000 + id);
    const Instance inst = generate_instance(gen);
    const bool exact = inst.n() <= config.exact_limit;

    auto make_evaluator = [&](std::uint64_t stream) {
      if (exact) return ProfitEvaluator::exact(config.exact_limit);
      SamplerConfig s = config.sampler;
      s.seed = derive_seed(config.seed, stream);
      return ProfitEvaluator::sampled(s);
    };

    double baseline;
    const Assortment full = Assortment::full(inst.n());
    if (exact) {
      baseline = expected_profit_exact(inst, full, config.exact_limit);
    } else {
      SamplerConfig s = config.sampler;
      s.seed = derive_seed(config.seed, id * 64 + 63);
      baseline = estimate_profit(inst, full, s).estimate;
    }

    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      const Method method = config.methods[mi];
      const double t0 = detail::now_seconds();
      OptimizationResult res;
      switch (method) {
        case Method::SimulatedAnnealing: {
          AnnealConfig sa = config.sa;
          sa.seed = derive_seed(config.seed, id * 64 + 2 * mi);
          res = simulated_annealing(inst, sa, make_evaluator(id * 64 + 2 * mi + 1));
          break;
        }
        case Method::RevenueWeights:
          res = weight_ordered(inst, revenue_weights(inst), make_evaluator(id * 64 + 2 * mi + 1));
          break;
        case Method::ParameterWeights:
          res = weight_ordered(inst, parameter_weights(inst), make_evaluator(id * 64 + 2 * mi + 1));
          break;
        case Method::KatzWeights: {
          const double alpha = default_katz_alpha(build_graph(inst.model));
          res = weight_ordered(inst, katz_weights(inst, alpha, config.katz_beta),
                               make_evaluator(id * 64 + 2 * mi + 1));
          break;
        }
      }
      BenchmarkRow row;
      row.instance_id = static_cast<int>(id);
      row.method = to_string(method);
      row.value = res.value;
      row.baseline = baseline;
      row.metric = (res.value - baseline) / baseline;
      row.assortment_size = res.assortment.size();
      row.seconds = detail::now_seconds() - t0;
      report.rows[id * n_methods + mi] = std::move(row);
    }
  });
  return report;
}

struct GapsConfig {
  GenConfig gen{10, 1.0, 0.8, {2.0, 4.0}, {1.0, 2.0}, {0.01, 1.0}, 0};  // complete graphs
  int n_instances = 100;
  std::vector<std::int64_t> sa_temps{250, 150, 50};
  bool include_revenue = true;
  bool include_parameter = true;
  bool include_katz = true;
  AnnealConfig sa;  // p_min/p_max/d_obj/start; k_temps comes from sa_temps
  double katz_beta = 1.0;
  int exact_limit = kDefaultExactLimit;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Optimality gaps against brute force on small instances, exact evaluation
/// throughout. Gap = (optimum - heuristic value) / optimum.
inline BenchmarkReport run_optimality_gaps(const GapsConfig& config) {
  if (config.gen.n > 20) throw TooLarge("run_optimality_gaps requires n <= 20");
  BenchmarkReport report;
  report.suite = "gaps";
  std::vector<std::string> methods;
  for (std::int64_t t : config.sa_temps) methods.push_back("sa_" + std::to_string(t));
  if (config.include_revenue) methods.push_back("revenue");
  if (config.include_parameter) methods.push_back("parameter");
  if (config.include_katz) methods.push_back("katz");
  report.rows.resize(static_cast<std::size_t>(config.n_instances) * methods.size());

  parallel_for(static_cast<std::size_t>(config.n_instances), config.threads, [&](std::size_t id) {
    GenConfig gen = config.gen;
    gen.seed = derive_seed(config.seed, 1000 + id);
    const Instance inst = generate_instance(gen);
    const double optimum = brute_force(inst).value;

    std::size_t mi = 0;
    auto record = [&](const std::string& name, const OptimizationResult& res, double t0) {
      BenchmarkRow row;
      row.instance_id = static_cast<int>(id);
      row.method = name;
      row.value = res.value;
      row.baseline = optimum;
      row.metric = optimum > 0.0 ? (optimum - res.value) / optimum : 0.0;
      row.assortment_size = res.assortment.size();
      row.seconds = detail::now_seconds() - t0;
      report.rows[id * methods.size() + mi] = std::move(row);
      ++mi;
    };

    for (std::size_t v = 0; v < config.sa_temps.size(); ++v) {
      AnnealConfig sa = config.sa;
      sa.k_temps = config.sa_temps[v];
      sa.seed = derive_seed(config.seed, id * 64 + v);
      const double t0 = detail::now_seconds();
      record(methods[v], simulated_annealing(inst, sa, ProfitEvaluator::exact(config.exact_limit)), t0);
    }
    if (config.include_revenue) {
      const double t0 = detail::now_seconds();
      record("revenue",
             weight_ordered(inst, revenue_weights(inst), ProfitEvaluator::exact(config.exact_limit)), t0);
    }
    if (config.include_parameter) {
      const double t0 = detail::now_seconds();
      record("parameter",
             weight_ordered(inst, parameter_weights(inst), ProfitEvaluator::exact(config.exact_limit)),
             t0);
    }
    if (config.include_katz) {
      const double t0 = detail::now_seconds();
      const double alpha = default_katz_alpha(build_graph(inst.model));
      record("katz",
             weight_ordered(inst, katz_weights(inst, alpha, config.katz_beta),
                            ProfitEvaluator::exact(config.exact_limit)),
             t0);
    }
  });
  return report;
}

enum class TimingAxis { Samples, Temps, Products };

inline const char* to_string(TimingAxis a) {
  switch (a) {
    case TimingAxis::Samples: return "samples";
    case TimingAxis::Temps: return "temps";
    case TimingAxis::Products: return "products";
  }
  return "?";
}

struct TimingConfig {
  TimingAxis axis = TimingAxis::Samples;
  std::vector<std::int64_t> grid;   // ascending axis values
  int n = 10;
  std::int64_t k_temps = 100;
  std::int64_t n_samples = 100;
  GenConfig gen{10, 0.2, 0.8, {2.0, 4.0}, {1.0, 2.0}, {0.01, 1.0}, 0};
  AnnealConfig sa;
  std::uint64_t seed = 0;
  int repeats = 1;  // best-of-k wall time per grid point
};

/// Wall time of one sampled-evaluation annealing run per grid point.
inline std::vector<std::pair<std::int64_t, double>> run_timing(const TimingConfig& config) {
  for (std::size_t i = 1; i < config.grid.size(); ++i)
    if (config.grid[i] < config.grid[i - 1])
      throw DimensionMismatch("run_timing: grid must be ascending");

  std::vector<std::pair<std::int64_t, double>> points;
  for (std::size_t gi = 0; gi < config.grid.size(); ++gi) {
    const std::int64_t x = config.grid[gi];
    GenConfig gen = config.gen;
    gen.n = config.axis == TimingAxis::Products ? static_cast<int>(x) : config.n;
    gen.seed = derive_seed(config.seed, 500 + gi);
    const Instance inst = generate_instance(gen);

    AnnealConfig sa = config.sa;
    sa.k_temps = config.axis == TimingAxis::Temps ? x : config.k_temps;
    sa.seed = derive_seed(config.seed, 600 + gi);
    SamplerConfig sampler;
    sampler.n_samples = config.axis == TimingAxis::Samples ? x : config.n_samples;
    sampler.seed = derive_seed(config.seed, 700 + gi);

    double best = 0.0;
    for (int rep = 0; rep < std::max(1, config.repeats); ++rep) {
      const double t0 = detail::now_seconds();
      simulated_annealing(inst, sa, ProfitEvaluator::sampled(sampler));
      const double dt = detail::now_seconds() - t0;
      if (rep == 0 || dt < best) best = dt;
    }
    points.emplace_back(x, best);
  }
  return points;
}

}  // namespace basket
