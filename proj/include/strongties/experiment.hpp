#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "strongties/graph.hpp"
#include "strongties/netgen.hpp"

namespace strongties {

struct GenerationResult {
  Population population;
  StrongTiesNetwork network;
  Metrics metrics;
};

// Results for the non-empty generations 1..G, in order. If some generation
// came up empty before the horizon, died_at holds its index and
// `generations` holds everything produced before it.
struct ExperimentResult {
  std::vector<GenerationResult> generations;
  std::optional<std::int32_t> died_at;

  bool died() const { return died_at.has_value(); }
};

// Seeds generation 0 (even sex split, no siblings, married at ratio alpha),
// then evolves under the policy for the requested number of generations,
// building the strong-ties network and metrics for each new generation.
// Fully replayable from the rng's seed.
ExperimentResult run_policy_experiment(std::int64_t initial_n, const ChildCountDist& policy,
                                       MarriageRatio alpha, std::int32_t generations, Rng& rng,
                                       double utilization = 1.0);

}  // namespace strongties
