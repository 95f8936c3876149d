#pragma once

#include <cmath>
#include <vector>

#include "basket/errors.hpp"
#include "basket/graph.hpp"

namespace basket {

/// Spectral radius of the signed weighted adjacency matrix, by power
/// iteration on the norm-growth ratio ||A v|| / ||v|| (stable even when the
/// extreme eigenvalues come in a +/- pair).
inline double spectral_radius(const ProductGraph& g, double tol = 1e-10, int max_iter = 20000) {
  if (g.edges.empty()) return 0.0;
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<double> v(n), av(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);
  double norm = std::sqrt(static_cast<double>(n));
  for (double& x : v) x /= norm;

  double ratio = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(av.begin(), av.end(), 0.0);
    for (const Edge& e : g.edges) {
      av[static_cast<std::size_t>(e.i)] += e.weight * v[static_cast<std::size_t>(e.j)];
      av[static_cast<std::size_t>(e.j)] += e.weight * v[static_cast<std::size_t>(e.i)];
    }
    double next = 0.0;
    for (double x : av) next += x * x;
    next = std::sqrt(next);
    if (next == 0.0) return 0.0;  // v landed in the kernel; radius of remaining part is 0
    for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / next;
    if (iter > 0 && std::abs(next - ratio) <= tol * std::max(1.0, next)) return next;
    ratio = next;
  }
  throw NonConvergence("spectral_radius: power iteration did not settle");
}

/// Katz centrality for signed weights: the fixed point of
///   c_j = alpha * sum_{i != j} theta_ij c_i + beta,
/// found by Jacobi iteration from c = beta. Converges when
/// alpha < 1 / spectral_radius; otherwise throws NonConvergence. Negative
/// weights may produce negative scores, which are passed through unmodified.
inline std::vector<double> katz_centrality(const ProductGraph& g, double alpha, double beta,
                                           double tol = 1e-10, int max_iter = 20000) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw DimensionMismatch("katz_centrality: alpha and beta must be positive");
  const auto n = static_cast<std::size_t>(g.n);
  std::vector<double> c(n, beta), next(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::fill(next.begin(), next.end(), beta);
    for (const Edge& e : g.edges) {
      next[static_cast<std::size_t>(e.i)] += alpha * e.weight * c[static_cast<std::size_t>(e.j)];
      next[static_cast<std::size_t>(e.j)] += alpha * e.weight * c[static_cast<std::size_t>(e.i)];
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - c[i]));
    c.swap(next);
    if (!std::isfinite(delta)) break;
    if (delta <= tol) return c;
  }
  throw NonConvergence("katz_centrality: iteration did not converge (alpha too large?)");
}

}  // namespace basket
