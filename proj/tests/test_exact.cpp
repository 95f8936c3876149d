#include <doctest.h>

#include <cmath>

#include "basket/exact.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace basket;

namespace {
double sigma(double t) { return 1.0 / (1.0 + std::exp(-t)); }
}  // namespace

TEST_CASE("log_partition: one neutral product gives log 2") {
  const IsingModel m(1, {0.0}, Domain::Binary);
  CHECK(log_partition(m, Assortment::full(1)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("log_partition: empty assortment is 0") {
  const IsingModel m(2, {1.0, 0.5, 0.5, -1.0}, Domain::Binary);
  CHECK(log_partition(m, Assortment()) == 0.0);
}

TEST_CASE("log_partition: three-product shop, frozen enumeration value") {
  const Instance shop = fixtures::three_product_shop();
  CHECK(log_partition(shop.model, Assortment::full(3)) ==
        doctest::Approx(16.315096923500445).epsilon(1e-13));
}

TEST_CASE("log_partition: oversized assortments are rejected, limit is configurable") {
  SplitMix64 rng(11);
  const IsingModel m = fixtures::random_model(rng, 6, Domain::Binary);
  CHECK_THROWS_AS(log_partition(m, Assortment::full(6), 5), AssortmentTooLarge);
  CHECK_NOTHROW(log_partition(m, Assortment::full(6), 6));
}

TEST_CASE("basket_probability: trivial symmetric cases") {
  const IsingModel one(1, {0.0}, Domain::Binary);
  CHECK(basket_probability(one, Assortment::full(1), Basket{{1}}) ==
        doctest::Approx(0.5).epsilon(1e-14));

  const IsingModel two(2, {0.0, 0.0, 0.0, 0.0}, Domain::Binary);
  for (std::int8_t a : {0, 1})
    for (std::int8_t b : {0, 1})
      CHECK(basket_probability(two, Assortment::full(2), Basket{{a, b}}) ==
            doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("basket_probability: frozen value and dimension checks") {
  const Instance shop = fixtures::three_product_shop();
  const Assortment s({1, 2});
  CHECK(basket_probability(shop.model, s, Basket{{1, 1}}) ==
        doctest::Approx(0.0033464254621424273).epsilon(1e-12));
  CHECK_THROWS_AS(basket_probability(shop.model, s, Basket{{1}}), DimensionMismatch);
  CHECK_THROWS_AS(basket_probability(shop.model, s, Basket{{1, 2}}), DimensionMismatch);
}

TEST_CASE("probabilities over all baskets sum to 1") {
  SplitMix64 rng(23);
  for (int n : {2, 5, 9, 12}) {
    const IsingModel m = fixtures::random_model(rng, n, Domain::Binary, 2.0, 1.0, 0.6);
    const Assortment s = Assortment::full(n);
    const std::vector<double> p = exact_distribution(m, s);
    double total = 0.0;
    for (double v : p) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Spot-check individual baskets against the distribution vector.
    Basket x = Basket::zeros(n);
    x.values[0] = 1;
    CHECK(basket_probability(m, s, x) == doctest::Approx(p[1]).epsilon(1e-10));
  }
}

TEST_CASE("marginal_probability: trivial, isolated, and frozen cases") {
  const IsingModel one(1, {0.0}, Domain::Binary);
  CHECK(marginal_probability(one, Assortment::full(1), 0) == doctest::Approx(0.5).epsilon(1e-14));

  // Product 2 is isolated: its marginal is sigma(theta_22) in any assortment.
  const IsingModel iso(3, {0.7, -0.4, 0.0, -0.4, 1.1, 0.0, 0.0, 0.0, 0.9}, Domain::Binary);
  for (const Assortment& s : {Assortment({2}), Assortment({0, 2}), Assortment::full(3)})
    CHECK(marginal_probability(iso, s, 2) == doctest::Approx(sigma(0.9)).epsilon(1e-12));

  const Instance shop = fixtures::three_product_shop();
  CHECK(marginal_probability(shop.model, Assortment::full(3), 2) ==
        doctest::Approx(0.27026936311991967).epsilon(1e-12));
  CHECK_THROWS_AS(marginal_probability(shop.model, Assortment({0, 1}), 2), ProductNotOffered);
}

TEST_CASE("conditional_marginal: removal identity and independence") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(6));  // up to 8
    const IsingModel m = fixtures::random_model(rng, n, Domain::Binary, 1.5, 0.8);
    const Assortment s = Assortment::full(n);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (l == k) l = (l + 1) % n;
    CHECK(conditional_marginal(m, s, l, k, 0) ==
          doctest::Approx(marginal_probability(m, s.without(k), l)).epsilon(1e-12));
  }

  // Uncoupled pair: conditioning is a no-op.
  const IsingModel ind(2, {0.4, 0.0, 0.0, -0.3}, Domain::Binary);
  const Assortment both = Assortment::full(2);
  for (int v : {0, 1})
    CHECK(conditional_marginal(ind, both, 0, 1, v) ==
          doctest::Approx(marginal_probability(ind, both, 0)).epsilon(1e-13));

  const Instance shop = fixtures::three_product_shop();
  CHECK(conditional_marginal(shop.model, Assortment::full(3), 1, 0, 1) ==
        doctest::Approx(0.9981909419466929).epsilon(1e-12));
  CHECK_THROWS_AS(conditional_marginal(shop.model, Assortment::full(3), 1, 1, 0),
                  DimensionMismatch);
}

TEST_CASE("expected_profit_exact: frozen three-product values") {
  const Instance shop = fixtures::three_product_shop();
  const double r_full = expected_profit_exact(shop, Assortment::full(3));
  const double r_pair = expected_profit_exact(shop, Assortment({1, 2}));
  CHECK(r_full == doctest::Approx(47.008478085797357).epsilon(1e-12));
  CHECK(r_pair == doctest::Approx(55.0).epsilon(1e-12));
  CHECK(r_full > 46.0);
  CHECK(r_full < 48.0);
  CHECK(r_pair > 54.0);
  CHECK(r_pair < 56.0);
}

TEST_CASE("expected_profit_exact: empty assortment and one-product closed form") {
  const Instance shop = fixtures::three_product_shop();
  CHECK(expected_profit_exact(shop, Assortment()) == 0.0);

  const Instance single(IsingModel(1, {0.8}, Domain::Binary), {3.0});
  CHECK(expected_profit_exact(single, Assortment::full(1)) ==
        doctest::Approx(3.0 * sigma(0.8)).epsilon(1e-13));
}

TEST_CASE("expected profit decomposes into margin-weighted marginals") {
  SplitMix64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = fixtures::random_instance(rng, 7, 1.5, 0.8, 0.7);
    const Assortment s({0, 2, 3, 5, 6});
    double sum = 0.0;
    for (int k : s.members())
      sum += inst.profits[static_cast<std::size_t>(k)] * marginal_probability(inst.model, s, k);
    CHECK(expected_profit_exact(inst, s) == doctest::Approx(sum).epsilon(1e-10));
  }
}

TEST_CASE("uncoupled halves of a portfolio contribute independently") {
  SplitMix64 rng(59);
  for (int trial = 0; trial < 8; ++trial) {
    // Products {0,1,2} and {3,4,5} with no couplings across the split.
    std::vector<double> theta(36, 0.0);
    auto fill_block = [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i)
        for (int j = i; j < hi; ++j) {
          const double w = rng.uniform(-1.0, 1.0);
          theta[static_cast<std::size_t>(i) * 6 + j] = w;
          theta[static_cast<std::size_t>(j) * 6 + i] = w;
        }
    };
    fill_block(0, 3);
    fill_block(3, 6);
    std::vector<double> profits(6);
    for (double& r : profits) r = rng.uniform(0.01, 1.0);
    const Instance inst(IsingModel(6, theta, Domain::Binary), profits);

    const Assortment s({0, 2, 3, 5});
    const Assortment left({0, 2}), right({3, 5});
    CHECK(expected_profit_exact(inst, s) ==
          doctest::Approx(expected_profit_exact(inst, left) + expected_profit_exact(inst, right))
              .epsilon(1e-10));

    // Marginals in one half ignore what the other half offers.
    CHECK(marginal_probability(inst.model, s, 0) ==
          doctest::Approx(marginal_probability(inst.model, left, 0)).epsilon(1e-12));
    CHECK(marginal_probability(inst.model, s.without(5), 0) ==
          doctest::Approx(marginal_probability(inst.model, left, 0)).epsilon(1e-12));
  }
}

TEST_CASE("log_partition grows when adding a nonnegatively coupled product") {
  SplitMix64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> theta(36, 0.0);
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) {
        const double w = rng.uniform(0.0, 1.0);
        theta[static_cast<std::size_t>(i) * 6 + j] = w;
        theta[static_cast<std::size_t>(j) * 6 + i] = w;
      }
    const IsingModel m(6, theta, Domain::Binary);
    const Assortment without({0, 1, 2, 4});
    const Assortment with = without.with(5);
    CHECK(log_partition(m, with) >= log_partition(m, without) - 1e-12);
  }
}

TEST_CASE("exact operations agree with the naive oracle") {
  SplitMix64 rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    for (Domain domain : {Domain::Binary, Domain::Spin}) {
      const IsingModel m = fixtures::random_model(rng, n, domain, 1.2, 0.9);
      const Assortment s = Assortment::full(n);
      CHECK(log_partition(m, s) ==
            doctest::Approx(oracle::log_partition(m, s.members())).epsilon(1e-11));
      CHECK(marginal_probability(m, s, n - 1) ==
            doctest::Approx(oracle::marginal(m, s.members(), n - 1)).epsilon(1e-11));
      const std::vector<double> mine = exact_distribution(m, s);
      const std::vector<double> ref = oracle::all_probabilities(m, s.members());
      for (std::size_t i = 0; i < mine.size(); ++i)
        CHECK(mine[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    }
  }
}
