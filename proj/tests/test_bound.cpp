#include <doctest.h>

#include <cmath>
#include <numbers>

#include "basket/partition_bound.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace basket;

TEST_CASE("flat model: the bound has a closed form and sits above n log 2") {
  // With zero parameters the inner maximum is attained at v_i = -1/q_i,
  // giving bound = (n/2) log(2 e pi / 3).
  for (int n : {1, 3, 6}) {
    const IsingModel flat(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0),
                          Domain::Spin);
    const double bound = log_partition_upper_bound(flat);
    const double closed = 0.5 * n * std::log(2.0 * std::numbers::e * std::numbers::pi / 3.0);
    CHECK(bound == doctest::Approx(closed).epsilon(1e-9));
    CHECK(bound >= n * std::log(2.0));
  }
}

TEST_CASE("the bound dominates the exact log-partition on random models") {
  SplitMix64 rng(501);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));  // up to 8
    const IsingModel spin = fixtures::random_model(rng, n, Domain::Spin, 0.8, 0.5);
    const double exact = oracle::log_partition(spin, Assortment::full(n).members());
    const double bound = log_partition_upper_bound(spin);
    CHECK(bound >= exact - 1e-6);
  }
}

TEST_CASE("bound requires the spin domain and a workable iteration budget") {
  const IsingModel binary(2, {0.1, 0.0, 0.0, 0.1}, Domain::Binary);
  CHECK_THROWS_AS(log_partition_upper_bound(binary), WrongDomain);

  const IsingModel spin(3, {0.4, 0.2, 0.0, 0.2, -0.3, 0.1, 0.0, 0.1, 0.2}, Domain::Spin);
  BoundOptions opts;
  opts.max_iter = 0;
  CHECK_THROWS_AS(log_partition_upper_bound(spin, opts), InnerSolveFailed);
}

TEST_CASE("tighter gradient tolerances do not lower the bound below looser ones") {
  SplitMix64 rng(502);
  const IsingModel spin = fixtures::random_model(rng, 5, Domain::Spin, 0.6, 0.4);
  BoundOptions loose, tight;
  loose.grad_tol = 1e-3;
  tight.grad_tol = 1e-10;
  const double b_loose = log_partition_upper_bound(spin, loose);
  const double b_tight = log_partition_upper_bound(spin, tight);
  // The inner problem is a maximization: a looser stop can only undershoot
  // it, which makes the reported bound larger.
  CHECK(b_tight <= b_loose + 1e-9);
  CHECK(std::abs(b_tight - b_loose) < 1e-3);
}
