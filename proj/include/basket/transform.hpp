#pragma once

#include <vector>

#include "basket/errors.hpp"
#include "basket/model.hpp"

namespace basket {

/// Maps a spin-domain model to the binary-domain model with identical choice
/// probabilities:
///
///   theta_ii = 2*t_ii - 4*sum_{j != i} t_ij,   theta_ij = 4*t_ij.
inline IsingModel spin_to_binary(const IsingModel& spin) {
  if (spin.domain() != Domain::Spin) throw WrongDomain("spin_to_binary expects a spin-domain model");
  const int n = spin.n();
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      row += spin.theta(i, j);
      out[static_cast<std::size_t>(i) * n + j] = 4.0 * spin.theta(i, j);
    }
    out[static_cast<std::size_t>(i) * n + i] = 2.0 * spin.theta(i, i) - 4.0 * row;
  }
  return IsingModel(n, std::move(out), Domain::Binary);
}

/// Inverse of spin_to_binary: t_ij = theta_ij / 4,
/// t_ii = (theta_ii + sum_{j != i} theta_ij) / 2.
inline IsingModel binary_to_spin(const IsingModel& binary) {
  if (binary.domain() != Domain::Binary)
    throw WrongDomain("binary_to_spin expects a binary-domain model");
  const int n = binary.n();
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      row += binary.theta(i, j);
      out[static_cast<std::size_t>(i) * n + j] = 0.25 * binary.theta(i, j);
    }
    out[static_cast<std::size_t>(i) * n + i] = 0.5 * (binary.theta(i, i) + row);
  }
  return IsingModel(n, std::move(out), Domain::Spin);
}

}  // namespace basket
