#include <doctest.h>

#include <cmath>

#include "basket/generate.hpp"
#include "basket/graph.hpp"
#include "basket/optimize.hpp"

using namespace basket;

TEST_CASE("edge probability endpoints") {
  GenConfig config;
  config.n = 12;
  config.seed = 1;

  config.p_edge = 0.0;
  CHECK(build_graph(generate_instance(config).model).edges.empty());

  config.p_edge = 1.0;
  CHECK(build_graph(generate_instance(config).model).edges.size() == 12 * 11 / 2);
}

TEST_CASE("all-positive complete couplings make the full portfolio optimal") {
  GenConfig config;
  config.n = 7;
  config.p_edge = 1.0;
  config.p_neg = 0.0;
  config.seed = 3;
  const Instance inst = generate_instance(config);
  CHECK(brute_force(inst).assortment == Assortment::full(7));
}

TEST_CASE("generation is deterministic per seed") {
  GenConfig config;
  config.n = 20;
  config.seed = 42;
  const Instance a = generate_instance(config);
  const Instance b = generate_instance(config);
  CHECK(a.model.theta_data() == b.model.theta_data());
  CHECK(a.profits == b.profits);

  config.seed = 43;
  const Instance c = generate_instance(config);
  CHECK(a.model.theta_data() != c.model.theta_data());
}

TEST_CASE("generated parameters respect their ranges and symmetry") {
  GenConfig config;
  config.n = 30;
  config.p_edge = 0.3;
  config.seed = 7;
  const Instance inst = generate_instance(config);
  for (int i = 0; i < 30; ++i) {
    CHECK(inst.model.theta(i, i) >= 2.0);
    CHECK(inst.model.theta(i, i) < 4.0);
    CHECK(inst.profits[static_cast<std::size_t>(i)] >= 0.01);
    CHECK(inst.profits[static_cast<std::size_t>(i)] < 1.0);
    for (int j = i + 1; j < 30; ++j) {
      const double w = inst.model.theta(i, j);
      CHECK(w == inst.model.theta(j, i));
      if (w != 0.0) {
        CHECK(std::abs(w) >= 1.0);
        CHECK(std::abs(w) < 2.0);
      }
    }
  }
}

TEST_CASE("edge counts concentrate around p_edge * C(n,2)") {
  GenConfig config;  // defaults: n = 50, p_edge = 0.2
  const double pairs = 50.0 * 49.0 / 2.0;
  const double expected = 0.2 * pairs;
  const double sd = std::sqrt(pairs * 0.2 * 0.8);

  double total = 0.0;
  const int seeds = 30;
  int negatives = 0, edges_total = 0;
  for (int s = 0; s < seeds; ++s) {
    config.seed = 1000 + static_cast<std::uint64_t>(s);
    const ProductGraph g = build_graph(generate_instance(config).model);
    total += static_cast<double>(g.edges.size());
    edges_total += static_cast<int>(g.edges.size());
    for (const Edge& e : g.edges)
      if (e.weight < 0.0) ++negatives;
  }
  const double mean = total / seeds;
  CHECK(std::abs(mean - expected) < 4.0 * sd / std::sqrt(double(seeds)));

  // Sign flips happen with probability 0.8.
  const double neg_frac = double(negatives) / double(edges_total);
  CHECK(std::abs(neg_frac - 0.8) < 0.05);
}

TEST_CASE("invalid configurations are rejected") {
  GenConfig bad;
  bad.p_edge = 1.5;
  CHECK_THROWS_AS(generate_instance(bad), DimensionMismatch);
  GenConfig swapped;
  swapped.node_range = {4.0, 2.0};
  CHECK_THROWS_AS(generate_instance(swapped), DimensionMismatch);
}
