#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "basket/errors.hpp"
#include "basket/model.hpp"
#include "basket/moments.hpp"
#include "basket/partition_bound.hpp"

namespace basket {

struct SparseMleOptions {
  int max_iter = 400;
  double tol = 1e-8;          // relative objective change on an accepted step
  BoundOptions inner;         // tolerance of the inner bound maximization
  double initial_step = 1.0;
};

struct SparseMleResult {
  IsingModel model;                     // spin domain, exactly symmetric
  bool converged = false;
  int iterations = 0;
  std::vector<double> objective_trace;  // accepted objective values, nonincreasing
};

/// l1-penalized approximate maximum likelihood: minimizes
///
///   bound(theta) - (sum_i theta_ii mu_i + sum_{i != j} theta_ij s_ij)
///     + rho * sum_{i != j} |theta_ij|
///
/// over symmetric spin-domain parameters, where bound() is the convex
/// log-partition upper bound. Solved by proximal gradient: the smooth part's
/// gradient comes from the inner maximizer (Danskin), couplings are
/// soft-thresholded, and a backtracking line search keeps the objective
/// nonincreasing. Large rho drives couplings to exact zeros.
inline SparseMleResult sparse_mle_estimate(const Moments& moments, double rho,
                                           const SparseMleOptions& opts = {}) {
  if (rho < 0.0) throw DimensionMismatch("sparse_mle_estimate: rho must be >= 0");
  const int n = moments.n;
  const Eigen::VectorXd lin = detail::bound_linear_term(n);

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd coup = Eigen::MatrixXd::Zero(n, n);  // off-diagonal, symmetric

  Eigen::VectorXd warm;
  auto solve_inner = [&](const Eigen::VectorXd& d, const Eigen::MatrixXd& u) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
      q(0, i + 1) = d(i);
      q(i + 1, 0) = d(i);
      for (int j = 0; j < n; ++j)
        if (j != i) q(i + 1, j + 1) = 2.0 * u(i, j);
    }
    return detail::maximize_bound_inner(q, lin, opts.inner, warm.size() ? &warm : nullptr);
  };

  auto smooth_value = [&](const detail::InnerSolution& sol, const Eigen::VectorXd& d,
                          const Eigen::MatrixXd& u) {
    double fit = 0.0;
    for (int i = 0; i < n; ++i) {
      fit += d(i) * moments.mu[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) fit += 2.0 * u(i, j) * moments.second(i, j);
    }
    return detail::bound_from_inner(n, sol.objective) - fit;
  };
  auto penalty = [&](const Eigen::MatrixXd& u) {
    double p = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) p += 2.0 * rho * std::abs(u(i, j));
    return p;
  };

  detail::InnerSolution sol = solve_inner(diag, coup);
  warm = sol.v;
  double f = smooth_value(sol, diag, coup);
  double obj = f + penalty(coup);

  SparseMleResult out{IsingModel(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0),
                                 Domain::Spin),
                      false,
                      0,
                      {}};
  out.objective_trace.push_back(obj);

  double step = opts.initial_step;
  int iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    // Danskin: the bound's gradient needs only the inner optimizer's M^-1.
    Eigen::VectorXd grad_diag(n);
    Eigen::MatrixXd grad_coup = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      grad_diag(i) = sol.m_inv(0, i + 1) - moments.mu[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) {
        const double g = 2.0 * sol.m_inv(i + 1, j + 1) - 2.0 * moments.second(i, j);
        grad_coup(i, j) = g;
        grad_coup(j, i) = g;
      }
    }

    bool accepted = false;
    Eigen::VectorXd trial_diag;
    Eigen::MatrixXd trial_coup;
    detail::InnerSolution trial_sol;
    double trial_f = 0.0, trial_obj = 0.0;
    for (int half = 0; half < 60 && !accepted; ++half, step *= 0.5) {
      trial_diag = diag - step * grad_diag;
      trial_coup = coup;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double moved = coup(i, j) - step * grad_coup(i, j);
          const double thr = 2.0 * rho * step;
          const double soft = moved > thr ? moved - thr : (moved < -thr ? moved + thr : 0.0);
          trial_coup(i, j) = soft;
          trial_coup(j, i) = soft;
        }
      }
      trial_sol = solve_inner(trial_diag, trial_coup);
      trial_f = smooth_value(trial_sol, trial_diag, trial_coup);

      // Quadratic-model test on the smooth part guarantees total descent.
      double inner_prod = grad_diag.dot(trial_diag - diag);
      double sqnorm = (trial_diag - diag).squaredNorm();
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const double dd = trial_coup(i, j) - coup(i, j);
          inner_prod += grad_coup(i, j) * dd;
          sqnorm += dd * dd;
        }
      }
      if (trial_f <= f + inner_prod + sqnorm / (2.0 * step) + 1e-12) {
        trial_obj = trial_f + penalty(trial_coup);
        accepted = true;
      }
    }
    if (!accepted) break;  // step collapsed; best iterate stands

    const double change = obj - trial_obj;
    diag = trial_diag;
    coup = trial_coup;
    sol = trial_sol;
    warm = sol.v;
    f = trial_f;
    obj = trial_obj;
    out.objective_trace.push_back(obj);
    step *= 3.0;  // undo the final halving and probe a larger step next time

    if (std::abs(change) <= opts.tol * std::max(1.0, std::abs(obj))) {
      out.converged = true;
      ++iter;
      break;
    }
  }

  std::vector<double> theta(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    theta[static_cast<std::size_t>(i) * n + i] = diag(i);
    for (int j = 0; j < n; ++j)
      if (j != i) theta[static_cast<std::size_t>(i) * n + j] = coup(i, j);
  }
  out.model = IsingModel(n, std::move(theta), Domain::Spin);
  out.iterations = iter;
  return out;
}

}  // namespace basket
