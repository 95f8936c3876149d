#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "basket/errors.hpp"
#include "basket/model.hpp"

namespace basket {

struct Edge {
  int i = 0;  // i < j
  int j = 0;
  double weight = 0.0;
};

/// Weighted undirected view of a binary-domain model: nodes are products,
/// node weights are the diagonal parameters, edges the nonzero couplings.
struct ProductGraph {
  int n = 0;
  std::vector<double> node_weights;
  std::vector<Edge> edges;  // sorted by (i, j), no self-loops or duplicates

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
      ++deg[static_cast<std::size_t>(e.i)];
      ++deg[static_cast<std::size_t>(e.j)];
    }
    return deg;
  }
};

/// Couplings with |theta_ij| <= epsilon are treated as absent (default:
/// exact zeros only).
inline ProductGraph build_graph(const IsingModel& m, double epsilon = 0.0) {
  if (m.domain() != Domain::Binary) throw WrongDomain("build_graph expects a binary-domain model");
  if (epsilon < 0.0) throw DimensionMismatch("build_graph: epsilon must be >= 0");
  ProductGraph g;
  g.n = m.n();
  g.node_weights.resize(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    g.node_weights[static_cast<std::size_t>(i)] = m.theta(i, i);
    for (int j = i + 1; j < g.n; ++j)
      if (std::abs(m.theta(i, j)) > epsilon) g.edges.push_back({i, j, m.theta(i, j)});
  }
  return g;
}

/// Maximal connected subgraphs, each sorted, ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const ProductGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
  for (const Edge& e : g.edges) {
    adj[static_cast<std::size_t>(e.i)].push_back(e.j);
    adj[static_cast<std::size_t>(e.j)].push_back(e.i);
  }
  std::vector<std::vector<int>> components;
  std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
  std::vector<int> stack;
  for (int start = 0; start < g.n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> comp;
    stack.push_back(start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

/// For each requested fraction f (ascending, in [0,1]), removes the
/// floor(f * |E|) edges of smallest absolute weight -- ties broken by (i, j)
/// order -- and reports how many nodes end up with degree zero.
inline std::vector<std::pair<double, int>> isolated_node_curve(
    const ProductGraph& g, const std::vector<double>& fractions) {
  for (std::size_t a = 0; a < fractions.size(); ++a) {
    if (fractions[a] < 0.0 || fractions[a] > 1.0)
      throw DimensionMismatch("isolated_node_curve: fractions must lie in [0, 1]");
    if (a > 0 && fractions[a] < fractions[a - 1])
      throw DimensionMismatch("isolated_node_curve: fractions must be ascending");
  }
  std::vector<Edge> order = g.edges;
  std::stable_sort(order.begin(), order.end(), [](const Edge& a, const Edge& b) {
    const double wa = std::abs(a.weight), wb = std::abs(b.weight);
    if (wa != wb) return wa < wb;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<int> deg = g.degrees();
  int isolated = static_cast<int>(std::count(deg.begin(), deg.end(), 0));
  std::vector<std::pair<double, int>> curve;
  std::size_t removed = 0;
  for (double f : fractions) {
    const auto target = static_cast<std::size_t>(std::floor(f * static_cast<double>(order.size())));
    for (; removed < target; ++removed) {
      const Edge& e = order[removed];
      if (--deg[static_cast<std::size_t>(e.i)] == 0) ++isolated;
      if (--deg[static_cast<std::size_t>(e.j)] == 0) ++isolated;
    }
    curve.emplace_back(f, isolated);
  }
  return curve;
}

}  // namespace basket
