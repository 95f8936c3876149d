#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "basket/errors.hpp"
#include "basket/model.hpp"
#include "basket/moments.hpp"

namespace basket {

namespace detail {

/// arctanh with the degenerate-column guard: |mu| is clipped to 1 - 1e-9 so a
/// finite-sample column that is almost constant yields a large finite value
/// instead of infinity.
inline double guarded_arctanh(double mu) {
  constexpr double cap = 1.0 - 1e-9;
  if (std::abs(mu) > cap) {
    std::cerr << "warning: |mu| = " << std::abs(mu) << " clipped to " << cap
              << " before arctanh\n";
    mu = mu > 0.0 ? cap : -cap;
  }
  return std::atanh(mu);
}

/// mu / arctanh(mu) with the removable singularity at 0 taken analytically
/// (series 1 - mu^2/3 - ...).
inline double mu_over_arctanh(double mu) {
  if (std::abs(mu) < 1e-6) return 1.0 - mu * mu / 3.0;
  return mu / guarded_arctanh(mu);
}

}  // namespace detail

/// Density Consistency estimator: closed-form spin-domain parameters from the
/// first two sample moments.
///
/// Independent-pair estimates first,
///
///   t_ij^IP = (1/4) log [ ((1+mu_i)(1+mu_j)+C_ij)((1-mu_i)(1-mu_j)+C_ij) /
///                         ((1+mu_i)(1-mu_j)-C_ij)((1-mu_i)(1+mu_j)-C_ij) ],
///
/// then the Gaussian-consistency corrections through the matrix Sigma with
/// Sigma_ii = mu_i/arctanh(mu_i) and Sigma_ij = C_ij sqrt(Sigma_ii Sigma_jj /
/// (C_ii C_jj)):
///
///   t_ij^DC = (1/2) ( t_ij^IP - (Sigma^-1)_ij - Sigma_ij / (Sigma_ii Sigma_jj - Sigma_ij^2) )
///   t_ii^DC = t_ii^IP + (n-2) arctanh(mu_i)
///             - sum_{j != i} (Sigma_jj mu_i - Sigma_ij mu_j) / (Sigma_ii Sigma_jj - Sigma_ij^2)
///             + (Sigma^-1 mu)_i.
inline IsingModel dc_estimate(const Moments& moments) {
  const int n = moments.n;
  const auto& mu = moments.mu;

  for (int i = 0; i < n; ++i)
    if (std::abs(mu[static_cast<std::size_t>(i)]) >= 1.0)
      throw MomentOutOfRange("dc_estimate: |mu_" + std::to_string(i) + "| >= 1");

  // The four log arguments of the independent-pair estimates, checked > 0.
  auto log_args = [&](int i, int j) {
    const double mi = mu[static_cast<std::size_t>(i)], mj = mu[static_cast<std::size_t>(j)];
    const double cij = moments.cov(i, j);
    const double app = (1.0 + mi) * (1.0 + mj) + cij;
    const double amm = (1.0 - mi) * (1.0 - mj) + cij;
    const double apm = (1.0 + mi) * (1.0 - mj) - cij;
    const double amp = (1.0 - mi) * (1.0 + mj) - cij;
    if (app <= 0.0 || amm <= 0.0 || apm <= 0.0 || amp <= 0.0)
      throw MomentOutOfRange("dc_estimate: nonpositive log argument for pair (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
    return std::array<double, 4>{app, amm, apm, amp};
  };

  Eigen::MatrixXd sigma(n, n);
  for (int i = 0; i < n; ++i)
    sigma(i, i) = detail::mu_over_arctanh(mu[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double cii = moments.cov(i, i), cjj = moments.cov(j, j);
      sigma(i, j) = moments.cov(i, j) * std::sqrt(sigma(i, i) * sigma(j, j) / (cii * cjj));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (sigma(i, i) * sigma(j, j) - sigma(i, j) * sigma(i, j) <= 0.0)
        throw SingularSigma("dc_estimate: singular 2x2 principal minor for pair (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");

  Eigen::FullPivLU<Eigen::MatrixXd> lu(sigma);
  if (!lu.isInvertible()) throw SingularSigma("dc_estimate: Sigma is not invertible");
  const Eigen::MatrixXd sigma_inv = lu.inverse();
  Eigen::Map<const Eigen::VectorXd> mu_vec(mu.data(), n);
  const Eigen::VectorXd sigma_inv_mu = sigma_inv * mu_vec;

  std::vector<double> theta(static_cast<std::size_t>(n) * n, 0.0);
  auto th = [&](int i, int j) -> double& { return theta[static_cast<std::size_t>(i) * n + j]; };

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto [app, amm, apm, amp] = log_args(i, j);
      const double ip = 0.25 * std::log(app * amm / (apm * amp));
      const double pair_det = sigma(i, i) * sigma(j, j) - sigma(i, j) * sigma(i, j);
      const double dc = 0.5 * (ip - sigma_inv(i, j) - sigma(i, j) / pair_det);
      th(i, j) = dc;
      th(j, i) = dc;
    }
  }

  for (int i = 0; i < n; ++i) {
    double ip_cross = 0.0;  // the pair terms of t_ii^IP
    double correction = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto [app, amm, apm, amp] = log_args(i, j);
      ip_cross += 0.25 * std::log(app * apm / (amp * amm));
      const double pair_det = sigma(i, i) * sigma(j, j) - sigma(i, j) * sigma(i, j);
      correction += (sigma(j, j) * mu_vec(i) - sigma(i, j) * mu_vec(j)) / pair_det;
    }
    // -(n-2) arctanh(mu_i) inside t_ii^IP cancels the +(n-2) arctanh term.
    const double at = detail::guarded_arctanh(mu_vec(i));
    const double ip_ii = -(n - 2) * at + ip_cross;
    th(i, i) = ip_ii + (n - 2) * at - correction + sigma_inv_mu(i);
  }

  return IsingModel(n, std::move(theta), Domain::Spin);
}

}  // namespace basket
