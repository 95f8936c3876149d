#include <doctest.h>

#include <cmath>

#include "basket/exact.hpp"
#include "basket/transform.hpp"
#include "fixtures.hpp"

using namespace basket;

TEST_CASE("zero parameters map to zero parameters in both directions") {
  const IsingModel spin(3, std::vector<double>(9, 0.0), Domain::Spin);
  const IsingModel binary = spin_to_binary(spin);
  CHECK(binary.domain() == Domain::Binary);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(binary.theta(i, j) == 0.0);
  const IsingModel back = binary_to_spin(binary);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(back.theta(i, j) == 0.0);
}

TEST_CASE("two-product worked example") {
  const IsingModel spin(2, {1.0, 0.5, 0.5, 1.0}, Domain::Spin);
  const IsingModel binary = spin_to_binary(spin);
  CHECK(binary.theta(0, 0) == doctest::Approx(0.0));
  CHECK(binary.theta(1, 1) == doctest::Approx(0.0));
  CHECK(binary.theta(0, 1) == doctest::Approx(2.0));
  CHECK(binary.theta(1, 0) == doctest::Approx(2.0));

  const IsingModel back = binary_to_spin(binary);
  CHECK(back.theta(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(back.theta(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(back.theta(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("domain tags are enforced") {
  const IsingModel spin(1, {0.2}, Domain::Spin);
  const IsingModel binary(1, {0.2}, Domain::Binary);
  CHECK_THROWS_AS(spin_to_binary(binary), WrongDomain);
  CHECK_THROWS_AS(binary_to_spin(spin), WrongDomain);
}

TEST_CASE("round trip reproduces parameters entrywise") {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const IsingModel binary = fixtures::random_model(rng, 6, Domain::Binary, 2.0, 1.5);
    const IsingModel rebuilt = spin_to_binary(binary_to_spin(binary));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(rebuilt.theta(i, j) == doctest::Approx(binary.theta(i, j)).epsilon(1e-12));
  }
}

TEST_CASE("spin and transformed binary models give identical choice probabilities") {
  SplitMix64 rng(103);
  for (int trial = 0; trial < 5; ++trial) {
    const IsingModel spin = fixtures::random_model(rng, 6, Domain::Spin, 0.8, 0.4);
    const IsingModel binary = spin_to_binary(spin);
    const Assortment s = Assortment::full(6);
    const std::vector<double> p_spin = exact_distribution(spin, s);
    const std::vector<double> p_binary = exact_distribution(binary, s);
    REQUIRE(p_spin.size() == 64);
    for (std::size_t mask = 0; mask < 64; ++mask)
      CHECK(p_spin[mask] == doctest::Approx(p_binary[mask]).epsilon(1e-10));
  }
}
