#include "strongties/experiment.hpp"

namespace strongties {

ExperimentResult run_policy_experiment(std::int64_t initial_n, const ChildCountDist& policy,
                                       MarriageRatio alpha, std::int32_t generations, Rng& rng,
                                       double utilization) {
  if (initial_n < 2) throw Error("initial population size must be >= 2");
  if (generations < 1) throw Error("generation count must be >= 1");

  ExperimentResult result;
  const Population seed = make_seed_generation(initial_n, alpha, rng);
  const Population* current = &seed;
  for (std::int32_t g = 1; g <= generations; ++g) {
    Population next = evolve_generation(*current, policy, alpha, rng, utilization);
    if (next.empty()) {
      result.died_at = g;
      break;
    }
    StrongTiesNetwork network = build_network(next);
    Metrics metrics = compute_metrics(network);
    result.generations.push_back(
        GenerationResult{std::move(next), std::move(network), std::move(metrics)});
    current = &result.generations.back().population;
  }
  return result;
}

}  // namespace strongties
