#pragma once

#include <utility>
#include <vector>

#include "basket/graph.hpp"
#include "basket/model.hpp"

namespace basket {

/// One independent piece of a decomposed problem: the restricted instance
/// plus the original product index per local index.
struct Subproblem {
  Instance instance;
  std::vector<int> original_ids;
};

/// Result of the structural preprocessing pass. forced_in products are part
/// of the optimal assortment outright; each subproblem is a connected
/// component containing at least one negative coupling, to be optimized on
/// its own.
struct Decomposition {
  std::vector<int> forced_in;  // sorted original indices
  std::vector<Subproblem> subproblems;
};

/// Structural reduction of the assortment problem:
///  1. isolated products go straight into the optimal assortment;
///  2. the coupling graph splits into connected components;
///  3. components without negative couplings join the optimal assortment
///     entirely;
///  4. every remaining component becomes an independent subproblem with
///     theta and profits restricted to its members.
inline Decomposition preprocess(const Instance& inst, double epsilon = 0.0) {
  const ProductGraph graph = build_graph(inst.model, epsilon);
  Decomposition out;
  for (const std::vector<int>& comp : connected_components(graph)) {
    bool has_negative = false;
    for (const Edge& e : graph.edges) {
      if (e.weight < 0.0 && std::binary_search(comp.begin(), comp.end(), e.i)) {
        has_negative = true;
        break;
      }
    }
    if (comp.size() == 1 || !has_negative) {
      out.forced_in.insert(out.forced_in.end(), comp.begin(), comp.end());
      continue;
    }
    const int k = static_cast<int>(comp.size());
    std::vector<double> theta(static_cast<std::size_t>(k) * k);
    std::vector<double> profits(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
      profits[static_cast<std::size_t>(a)] = inst.profits[static_cast<std::size_t>(comp[a])];
      for (int b = 0; b < k; ++b)
        theta[static_cast<std::size_t>(a) * k + b] = inst.model.theta(comp[static_cast<std::size_t>(a)],
                                                                      comp[static_cast<std::size_t>(b)]);
    }
    out.subproblems.push_back(
        {Instance(IsingModel(k, std::move(theta), Domain::Binary), std::move(profits)), comp});
  }
  std::sort(out.forced_in.begin(), out.forced_in.end());
  return out;
}

}  // namespace basket
