#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "basket/errors.hpp"

namespace basket {

/// Variable codomain of the model: {0,1} indicators or {-1,+1} spins.
enum class Domain { Binary, Spin };

inline const char* to_string(Domain d) {
  return d == Domain::Binary ? "binary" : "spin";
}

/// Pairwise choice model over n products.
///
/// theta is a symmetric n-by-n matrix: theta(i,i) is the standalone
/// attractiveness of product i, theta(i,j) the pairwise demand dependency.
/// The unnormalized log-weight of a configuration x is
///
///   sum_i theta(i,i) x_i  +  sum_{i != j} x_i theta(i,j) x_j,
///
/// where the second sum runs over ordered pairs, so each symmetric pair
/// contributes twice. Immutable after construction; safe to share across
/// threads.
class IsingModel {
 public:
  IsingModel(int n, std::vector<double> theta_row_major, Domain domain)
      : n_(n), domain_(domain), theta_(std::move(theta_row_major)) {
    if (n_ < 1) throw DimensionMismatch("IsingModel: n must be >= 1");
    if (theta_.size() != static_cast<std::size_t>(n_) * n_)
      throw DimensionMismatch("IsingModel: theta must be n*n");
    for (double v : theta_)
      if (!std::isfinite(v)) throw DimensionMismatch("IsingModel: theta entries must be finite");
    symmetrize();
  }

  int n() const { return n_; }
  Domain domain() const { return domain_; }

  double theta(int i, int j) const { return theta_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& theta_data() const { return theta_; }

  /// Largest |theta(i,j) - theta(j,i)| absorbed by averaging at construction.
  double symmetrization_delta() const { return symmetrization_delta_; }

 private:
  void symmetrize() {
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        const double a = theta_[static_cast<std::size_t>(i) * n_ + j];
        const double b = theta_[static_cast<std::size_t>(j) * n_ + i];
        worst = std::max(worst, std::abs(a - b));
        const double avg = 0.5 * (a + b);
        theta_[static_cast<std::size_t>(i) * n_ + j] = avg;
        theta_[static_cast<std::size_t>(j) * n_ + i] = avg;
      }
    }
    symmetrization_delta_ = worst;
    if (worst > 1e-9)
      std::cerr << "warning: theta asymmetry " << worst << " averaged away at construction\n";
  }

  int n_;
  Domain domain_;
  std::vector<double> theta_;
  double symmetrization_delta_ = 0.0;
};

/// Offered subset of the product portfolio. Members are kept sorted and
/// unique; indices refer to the owning model's products.
class Assortment {
 public:
  Assortment() = default;

  explicit Assortment(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    for (std::size_t a = 0; a < members_.size(); ++a) {
      if (members_[a] < 0) throw DimensionMismatch("Assortment: negative product index");
      if (a > 0 && members_[a] == members_[a - 1])
        throw DimensionMismatch("Assortment: duplicate product index");
    }
  }

  static Assortment full(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
    return Assortment(std::move(m));
  }

  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }
  int member(int a) const { return members_[static_cast<std::size_t>(a)]; }

  bool contains(int product) const {
    return std::binary_search(members_.begin(), members_.end(), product);
  }

  /// Position of product within the member list, or -1.
  int position_of(int product) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), product);
    if (it == members_.end() || *it != product) return -1;
    return static_cast<int>(it - members_.begin());
  }

  Assortment without(int product) const {
    std::vector<int> m;
    m.reserve(members_.size());
    for (int v : members_)
      if (v != product) m.push_back(v);
    return Assortment(std::move(m));
  }

  Assortment with(int product) const {
    if (contains(product)) return *this;
    std::vector<int> m = members_;
    m.push_back(product);
    return Assortment(std::move(m));
  }

  friend bool operator==(const Assortment& a, const Assortment& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<int> members_;
};

/// One customer choice: indicator per offered product, aligned with the
/// assortment's member order. Values are {0,1} in the binary domain and
/// {-1,+1} in the spin domain.
struct Basket {
  std::vector<std::int8_t> values;

  static Basket zeros(int size) { return Basket{std::vector<std::int8_t>(static_cast<std::size_t>(size), 0)}; }

  int size() const { return static_cast<int>(values.size()); }
};

inline void check_conforms(const Basket& x, const Assortment& s, Domain domain) {
  if (x.size() != s.size())
    throw DimensionMismatch("basket length does not match assortment size");
  for (std::int8_t v : x.values) {
    const bool ok = domain == Domain::Binary ? (v == 0 || v == 1) : (v == -1 || v == 1);
    if (!ok) throw DimensionMismatch("basket entry outside the model domain");
  }
}

/// An assortment optimization problem: a binary-domain choice model plus a
/// gross profit margin per product.
struct Instance {
  IsingModel model;
  std::vector<double> profits;

  Instance(IsingModel m, std::vector<double> r) : model(std::move(m)), profits(std::move(r)) {
    if (model.domain() != Domain::Binary)
      throw WrongDomain("Instance requires a binary-domain model");
    if (profits.size() != static_cast<std::size_t>(model.n()))
      throw DimensionMismatch("Instance: profits length must equal n");
    for (double r : profits)
      if (!std::isfinite(r)) throw DimensionMismatch("Instance: profits must be finite");
  }

  int n() const { return model.n(); }
};

}  // namespace basket
