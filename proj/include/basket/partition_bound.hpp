#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "basket/errors.hpp"
#include "basket/model.hpp"

namespace basket {

struct BoundOptions {
  double grad_tol = 1e-6;  // infinity norm of the inner gradient
  int max_iter = 200;
};

namespace detail {

/// The (n+1)x(n+1) matrix pairing the auxiliary coordinate with the
/// diagonal parameters and doubling the couplings:
///   row 0:  (0, t_11, t_22, ..., t_nn)
///   row i:  (t_ii, ..., 0 at position i, ..., 2 t_ij elsewhere).
inline Eigen::MatrixXd bound_matrix(const IsingModel& spin) {
  const int n = spin.n();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    q(0, i + 1) = spin.theta(i, i);
    q(i + 1, 0) = spin.theta(i, i);
    for (int j = 0; j < n; ++j)
      if (j != i) q(i + 1, j + 1) = 2.0 * spin.theta(i, j);
  }
  return q;
}

struct InnerSolution {
  Eigen::VectorXd v;
  Eigen::MatrixXd m_inv;  // (-Q - diag(v))^-1 at the optimum
  double objective = 0.0;  // q^T v + log det(-Q - diag(v))
};

/// Maximizes f(v) = q^T v + log det(-Q - diag(v)) over the cone where
/// M(v) = -Q - diag(v) is positive definite. f is strictly concave with
/// gradient q_i - (M^-1)_ii and Hessian -(M^-1 o M^-1), so a damped Newton
/// ascent with a Cholesky feasibility check on each trial step converges
/// quadratically near the optimum.
inline InnerSolution maximize_bound_inner(const Eigen::MatrixXd& big_q,
                                          const Eigen::VectorXd& lin,
                                          const BoundOptions& opts,
                                          const Eigen::VectorXd* warm_start = nullptr) {
  const int d = static_cast<int>(big_q.rows());

  auto factor = [&](const Eigen::VectorXd& v, Eigen::LLT<Eigen::MatrixXd>& llt) {
    Eigen::MatrixXd m = -big_q;
    m.diagonal() -= v;
    llt.compute(m);
    return llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0;
  };
  auto objective = [&](const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::VectorXd& v) {
    return lin.dot(v) + 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  };

  // Diagonally dominant start: v_i = -(sum_j |Q_ij| + 1) is always feasible.
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = -(big_q.row(i).cwiseAbs().sum() + 1.0);
  Eigen::LLT<Eigen::MatrixXd> llt(d);
  if (warm_start && warm_start->size() == d) {
    Eigen::VectorXd w = *warm_start;
    if (factor(w, llt)) v = w;
  }
  if (!factor(v, llt)) throw InnerSolveFailed("no feasible starting point");
  double f = objective(llt, v);

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(d, d);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    const Eigen::MatrixXd m_inv = llt.solve(identity);
    const Eigen::VectorXd grad = lin - m_inv.diagonal();
    if (grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol)
      return {v, m_inv, f};

    // Newton direction: (M^-1 o M^-1) d = grad.
    const Eigen::MatrixXd hess = m_inv.cwiseProduct(m_inv);
    Eigen::LLT<Eigen::MatrixXd> hess_llt(hess);
    Eigen::VectorXd dir = hess_llt.info() == Eigen::Success ? hess_llt.solve(grad).eval() : grad;
    if (!dir.allFinite()) dir = grad;

    double step = 1.0;
    bool moved = false;
    for (int half = 0; half < 60; ++half, step *= 0.5) {
      const Eigen::VectorXd trial = v + step * dir;
      if (!factor(trial, llt)) continue;
      const double ft = objective(llt, trial);
      if (ft > f + 1e-4 * step * grad.dot(dir)) {
        v = trial;
        f = ft;
        moved = true;
        break;
      }
    }
    if (!moved) {
      if (!factor(v, llt)) throw InnerSolveFailed("line search left the feasible cone");
      const Eigen::MatrixXd m_inv_final = llt.solve(identity);
      const Eigen::VectorXd g = lin - m_inv_final.diagonal();
      if (g.lpNorm<Eigen::Infinity>() <= opts.grad_tol * 10.0)
        return {v, m_inv_final, f};
      throw InnerSolveFailed("inner line search stalled before reaching tolerance");
    }
  }
  throw InnerSolveFailed("inner maximization hit the iteration cap");
}

inline Eigen::VectorXd bound_linear_term(int n) {
  Eigen::VectorXd q(n + 1);
  q(0) = 1.0;
  for (int i = 1; i <= n; ++i) q(i) = 4.0 / 3.0;
  return q;
}

inline double bound_from_inner(int n, double inner_objective) {
  return 0.5 * n * std::log(std::numbers::e * std::numbers::pi / 2.0) -
         0.5 * (n + 1) - 0.5 * inner_objective;
}

}  // namespace detail

/// Convex upper bound on the spin-domain log-partition function:
///
///   (n/2) log(e pi / 2) - (n+1)/2
///     - (1/2) max_v { q^T v + log det(-Q(theta) - diag(v)) },
///
/// with q = (1, 4/3, ..., 4/3) and Q(theta) as in detail::bound_matrix. The
/// maximization is solved to gradient tolerance opts.grad_tol; the result is
/// never below the exact log-partition value.
inline double log_partition_upper_bound(const IsingModel& spin, const BoundOptions& opts = {}) {
  if (spin.domain() != Domain::Spin)
    throw WrongDomain("log_partition_upper_bound expects a spin-domain model");
  const Eigen::MatrixXd q = detail::bound_matrix(spin);
  const Eigen::VectorXd lin = detail::bound_linear_term(spin.n());
  const detail::InnerSolution sol = detail::maximize_bound_inner(q, lin, opts);
  return detail::bound_from_inner(spin.n(), sol.objective);
}

}  // namespace basket
