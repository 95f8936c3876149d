// End-to-end tour on a three-product portfolio: exact profits, preprocessing,
// sampling, and optimization.

#include <cstdio>

#include "basket/decompose.hpp"
#include "basket/exact.hpp"
#include "basket/gibbs.hpp"
#include "basket/optimize.hpp"

int main() {
  using namespace basket;

  // Product 0 likes both others; 1 and 2 repel each other strongly.
  IsingModel model(3,
                   {1.0, 5.0, 2.0,   //
                    5.0, 5.0, -5.0,  //
                    2.0, -5.0, 5.0},
                   Domain::Binary);
  Instance shop(model, {10.0, 10.0, 100.0});

  const Assortment all = Assortment::full(3);
  std::printf("R(all)    = %.3f\n", expected_profit_exact(shop, all));
  std::printf("R({1,2})  = %.3f\n", expected_profit_exact(shop, Assortment({1, 2})));

  SamplerConfig sampler;
  sampler.n_samples = 50000;
  sampler.seed = 7;
  const ProfitEstimate est = estimate_profit(shop, all, sampler);
  std::printf("R(all) by Gibbs: %.3f +- %.3f\n", est.estimate, est.std_error);

  const Decomposition decomp = preprocess(shop);
  std::printf("preprocess: %zu forced in, %zu subproblem(s)\n", decomp.forced_in.size(),
              decomp.subproblems.size());

  const OptimizationResult best = brute_force(shop);
  std::printf("optimum: value %.3f, products {", best.value);
  for (int i = 0; i < best.assortment.size(); ++i)
    std::printf("%s%d", i ? ", " : "", best.assortment.member(i));
  std::printf("}\n");

  AnnealConfig sa;
  sa.k_temps = 300;
  sa.seed = 11;
  const OptimizationResult heur = simulated_annealing(shop, sa, ProfitEvaluator::exact());
  std::printf("annealing: value %.3f after %lld evaluations\n", heur.value,
              static_cast<long long>(heur.evaluations));
  return 0;
}
