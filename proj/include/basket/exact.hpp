#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "basket/errors.hpp"
#include "basket/model.hpp"

namespace basket {

/// Largest assortment enumerated exactly (2^25 configurations). Beyond this,
/// callers are expected to switch to sampling.
inline constexpr int kDefaultExactLimit = 25;

namespace detail {

inline void check_members(const IsingModel& m, const Assortment& s) {
  if (!s.empty() && s.members().back() >= m.n())
    throw DimensionMismatch("assortment refers to a product outside the model");
}

inline void check_enumerable(const Assortment& s, int limit) {
  if (s.size() > limit)
    throw AssortmentTooLarge("assortment of size " + std::to_string(s.size()) +
                             " exceeds the exact-enumeration limit " + std::to_string(limit) +
                             "; use sampling instead");
}

/// Couplings of the offered products only, in member-local indexing, with
/// zero entries dropped so the Gray-code walk pays O(degree) per flip.
struct LocalCouplings {
  std::vector<double> diag;
  std::vector<std::vector<std::pair<int, double>>> adj;

  LocalCouplings(const IsingModel& m, const Assortment& s) {
    const int k = s.size();
    diag.resize(static_cast<std::size_t>(k));
    adj.resize(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) {
      diag[static_cast<std::size_t>(a)] = m.theta(s.member(a), s.member(a));
      for (int b = 0; b < k; ++b) {
        if (b == a) continue;
        const double w = m.theta(s.member(a), s.member(b));
        if (w != 0.0) adj[static_cast<std::size_t>(a)].emplace_back(b, w);
      }
    }
  }
};

/// Visits every configuration of the offered products exactly once, in
/// reflected-Gray-code order, maintaining the configuration's log-weight
/// incrementally. The callback receives (values, log_weight, flipped) where
/// flipped is the member position toggled to reach this state (-1 for the
/// initial all-low state: all zeros in the binary domain, all -1 for spins).
template <class F>
void for_each_configuration(const IsingModel& m, const Assortment& s, F&& f) {
  const int k = s.size();
  const LocalCouplings lc(m, s);
  const double lo = m.domain() == Domain::Binary ? 0.0 : -1.0;
  const double hi = 1.0;

  std::vector<std::int8_t> x(static_cast<std::size_t>(k), static_cast<std::int8_t>(lo));
  double energy = 0.0;
  if (m.domain() == Domain::Spin) {
    for (int a = 0; a < k; ++a) {
      energy -= lc.diag[static_cast<std::size_t>(a)];
      for (const auto& [b, w] : lc.adj[static_cast<std::size_t>(a)]) energy += w;  // (-1)(-1) per ordered pair
    }
  }
  f(static_cast<const std::vector<std::int8_t>&>(x), energy, -1);

  const std::uint64_t total = k >= 64 ? 0 : (std::uint64_t{1} << k);
  for (std::uint64_t t = 1; t < total; ++t) {
    const int a = std::countr_zero(t);
    const auto sa = static_cast<std::size_t>(a);
    const double old_v = x[sa];
    const double new_v = old_v == hi ? lo : hi;
    double field = lc.diag[sa];
    for (const auto& [b, w] : lc.adj[sa]) field += 2.0 * w * x[static_cast<std::size_t>(b)];
    energy += (new_v - old_v) * field;
    x[sa] = static_cast<std::int8_t>(new_v);
    f(static_cast<const std::vector<std::int8_t>&>(x), energy, a);
  }
}

/// Streaming max-shifted accumulator for ratios sum w*exp(e) / sum exp(e).
/// Keeps everything scaled by exp(-m) with m the running maximum, so terms
/// with log-weights of hundreds never overflow.
class ShiftedRatio {
 public:
  void add(double e, double w) {
    if (e > shift_) {
      const double c = std::exp(shift_ - e);
      den_ *= c;
      num_ *= c;
      shift_ = e;
      den_ += 1.0;
      num_ += w;
    } else {
      const double c = std::exp(e - shift_);
      den_ += c;
      num_ += c * w;
    }
  }

  double ratio() const { return num_ / den_; }
  double log_denominator() const { return shift_ + std::log(den_); }

 private:
  double shift_ = -std::numeric_limits<double>::infinity();
  double den_ = 0.0;
  double num_ = 0.0;
};

}  // namespace detail

/// Log-weight of one configuration: sum_i theta_ii x_i + sum_{i!=j} x_i theta_ij x_j
/// over the offered products (ordered pairs, so symmetric pairs count twice).
inline double configuration_energy(const IsingModel& m, const Assortment& s, const Basket& x) {
  detail::check_members(m, s);
  check_conforms(x, s, m.domain());
  const int k = s.size();
  double e = 0.0;
  for (int a = 0; a < k; ++a) {
    const double xa = x.values[static_cast<std::size_t>(a)];
    if (xa == 0.0) continue;
    e += m.theta(s.member(a), s.member(a)) * xa;
    for (int b = a + 1; b < k; ++b) {
      const double xb = x.values[static_cast<std::size_t>(b)];
      if (xb != 0.0) e += 2.0 * xa * m.theta(s.member(a), s.member(b)) * xb;
    }
  }
  return e;
}

/// Log of the partition function A_theta(S). Empty assortments are legal and
/// give 0 (the empty basket has weight 1).
inline double log_partition(const IsingModel& m, const Assortment& s,
                            int limit = kDefaultExactLimit) {
  detail::check_members(m, s);
  detail::check_enumerable(s, limit);
  detail::ShiftedRatio acc;
  detail::for_each_configuration(
      m, s, [&](const std::vector<std::int8_t>&, double e, int) { acc.add(e, 0.0); });
  return acc.log_denominator();
}

/// Probability of one specific basket given the assortment.
inline double basket_probability(const IsingModel& m, const Assortment& s, const Basket& x,
                                 int limit = kDefaultExactLimit) {
  const double a = log_partition(m, s, limit);
  return std::exp(configuration_energy(m, s, x) - a);
}

/// P(x_k = 1 | S): probability that product k is in a random basket.
inline double marginal_probability(const IsingModel& m, const Assortment& s, int k,
                                   int limit = kDefaultExactLimit) {
  detail::check_members(m, s);
  detail::check_enumerable(s, limit);
  const int pos = s.position_of(k);
  if (pos < 0) throw ProductNotOffered("product " + std::to_string(k) + " is not offered");
  detail::ShiftedRatio acc;
  detail::for_each_configuration(m, s, [&](const std::vector<std::int8_t>& x, double e, int) {
    acc.add(e, x[static_cast<std::size_t>(pos)] == 1 ? 1.0 : 0.0);
  });
  return acc.ratio();
}

/// P(x_l = 1 | x_k = k_value, S). In the binary domain, conditioning on
/// k_value = 0 is the same as removing product k from the assortment.
inline double conditional_marginal(const IsingModel& m, const Assortment& s, int l, int k,
                                   int k_value, int limit = kDefaultExactLimit) {
  detail::check_members(m, s);
  detail::check_enumerable(s, limit);
  if (l == k) throw DimensionMismatch("conditional_marginal requires l != k");
  const int pl = s.position_of(l);
  const int pk = s.position_of(k);
  if (pl < 0 || pk < 0) throw ProductNotOffered("conditioning products must be offered");
  if (k_value != 0 && k_value != 1)
    throw DimensionMismatch("k_value must be 0 or 1");
  const std::int8_t cond =
      k_value == 1 ? std::int8_t{1} : (m.domain() == Domain::Binary ? std::int8_t{0} : std::int8_t{-1});
  detail::ShiftedRatio num, den;
  detail::for_each_configuration(m, s, [&](const std::vector<std::int8_t>& x, double e, int) {
    if (x[static_cast<std::size_t>(pk)] != cond) return;
    den.add(e, 0.0);
    if (x[static_cast<std::size_t>(pl)] == 1) num.add(e, 0.0);
  });
  return std::exp(num.log_denominator() - den.log_denominator());
}

/// Expected profit R(S) of offering assortment S, by exact enumeration:
/// the mean over baskets of the summed margins of purchased products.
inline double expected_profit_exact(const Instance& inst, const Assortment& s,
                                    int limit = kDefaultExactLimit) {
  detail::check_members(inst.model, s);
  detail::check_enumerable(s, limit);
  if (s.empty()) return 0.0;
  const int k = s.size();
  std::vector<double> margins(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a)
    margins[static_cast<std::size_t>(a)] = inst.profits[static_cast<std::size_t>(s.member(a))];
  double revenue = 0.0;
  detail::ShiftedRatio acc;
  detail::for_each_configuration(inst.model, s,
                                 [&](const std::vector<std::int8_t>& x, double e, int flipped) {
                                   if (flipped >= 0) {
                                     const auto sf = static_cast<std::size_t>(flipped);
                                     revenue += x[sf] == 1 ? margins[sf] : -margins[sf];
                                   }
                                   acc.add(e, revenue);
                                 });
  return acc.ratio();
}

/// Full choice distribution over the 2^|S| baskets of S. Entry `mask` is the
/// probability of the basket whose a-th member is purchased iff bit a of
/// `mask` is set. Intended for small assortments (sampler validation).
inline std::vector<double> exact_distribution(const IsingModel& m, const Assortment& s,
                                              int limit = kDefaultExactLimit) {
  detail::check_members(m, s);
  detail::check_enumerable(s, limit);
  const int k = s.size();
  std::vector<double> energies(std::size_t{1} << k);
  std::uint64_t mask = 0;
  detail::for_each_configuration(m, s, [&](const std::vector<std::int8_t>&, double e, int flipped) {
    if (flipped >= 0) mask ^= std::uint64_t{1} << flipped;
    energies[mask] = e;
  });
  double peak = energies[0];
  for (double e : energies) peak = std::max(peak, e);
  double total = 0.0;
  for (double& e : energies) {
    e = std::exp(e - peak);
    total += e;
  }
  for (double& e : energies) e /= total;
  return energies;
}

}  // namespace basket
