#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "strongties/policy.hpp"
#include "strongties/rng.hpp"

namespace strongties {

enum class Sex : std::uint8_t { male, female };

struct Person {
  std::int64_t id = 0;
  Sex sex = Sex::male;
  std::int64_t family_id = 0;  // the family the person was born into
  std::int32_t generation = 0;
  std::optional<std::int64_t> spouse_id;
};

// One generation. Persons are stored in ascending id order; spouse links
// are symmetric and opposite-sex (monogamy).
struct Population {
  std::vector<Person> persons;
  std::int32_t generation_index = 0;
  double alpha_realized = 0.0;  // married women / total women, 0 if no women

  bool empty() const { return persons.empty(); }
  std::size_t size() const { return persons.size(); }
};

// Married couples as (lower id, higher id) pairs, ascending by lower id.
std::vector<std::pair<std::int64_t, std::int64_t>> married_couples(const Population& pop);

// Marries round-half-even(alpha * min(#men, #women)) couples by uniform
// random matching among the currently unmarried, then records the realized
// ratio. Shared by every generation-producing operation below.
void marry_unmarried(Population& pop, MarriageRatio alpha, Rng& rng);

// Direct sampling mode: draws family sizes from f conditioned on >= 1 child
// (childless families leave no trace in a single-generation network) until
// the head count reaches target_n, keeping the final family whole, then
// marries at ratio alpha. Throws ZeroSupportError if f has all mass on zero.
Population sample_population(const ChildCountDist& f, MarriageRatio alpha,
                             std::int64_t target_n, Rng& rng);

// Evolution mode: each married couple draws a quota from the policy and has
// that many children (scaled down per child with probability 1-utilization
// when utilization < 1); unmarried parents have none. The new generation is
// then married at ratio alpha_next. An all-unmarried parent generation
// yields an empty population, not an error.
Population evolve_generation(const Population& parents, const ChildCountDist& policy,
                             MarriageRatio alpha_next, Rng& rng, double utilization = 1.0);

// Seed cohort for policy experiments: n persons with an even sex split, one
// singleton family each (no sibling structure), married at ratio alpha.
Population make_seed_generation(std::int64_t n, MarriageRatio alpha, Rng& rng);

}  // namespace strongties
