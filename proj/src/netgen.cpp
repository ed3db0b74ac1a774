#include "strongties/netgen.hpp"

#include <algorithm>
#include <cmath>

namespace strongties {

namespace {

// Round half to even: unbiased across seeds and exact on round inputs
// (0.9 * 100 -> 90).
std::int64_t round_half_even(double x) {
  const double fl = std::floor(x);
  const double frac = x - fl;
  const auto lo = static_cast<std::int64_t>(fl);
  if (frac > 0.5) return lo + 1;
  if (frac < 0.5) return lo;
  return lo % 2 == 0 ? lo : lo + 1;
}

Sex draw_sex(Rng& rng) { return rng.next_bool() ? Sex::male : Sex::female; }

}  // namespace

std::vector<std::pair<std::int64_t, std::int64_t>> married_couples(const Population& pop) {
  std::vector<std::pair<std::int64_t, std::int64_t>> couples;
  for (const Person& p : pop.persons) {
    if (p.spouse_id && p.id < *p.spouse_id) couples.emplace_back(p.id, *p.spouse_id);
  }
  std::sort(couples.begin(), couples.end());
  return couples;
}

void marry_unmarried(Population& pop, MarriageRatio alpha, Rng& rng) {
  std::vector<std::size_t> men;
  std::vector<std::size_t> women;
  std::size_t total_women = 0;
  std::size_t married_women = 0;
  for (std::size_t i = 0; i < pop.persons.size(); ++i) {
    const Person& p = pop.persons[i];
    if (p.sex == Sex::female) {
      ++total_women;
      if (p.spouse_id) ++married_women;
    }
    if (p.spouse_id) continue;
    (p.sex == Sex::male ? men : women).push_back(i);
  }
  const auto limit = static_cast<double>(std::min(men.size(), women.size()));
  const std::int64_t want = round_half_even(alpha.value() * limit);
  rng.shuffle(men);
  rng.shuffle(women);
  for (std::int64_t k = 0; k < want; ++k) {
    Person& him = pop.persons[men[static_cast<std::size_t>(k)]];
    Person& her = pop.persons[women[static_cast<std::size_t>(k)]];
    him.spouse_id = her.id;
    her.spouse_id = him.id;
    ++married_women;
  }
  pop.alpha_realized = total_women == 0
                           ? 0.0
                           : static_cast<double>(married_women) / static_cast<double>(total_women);
}

Population sample_population(const ChildCountDist& f, MarriageRatio alpha,
                             std::int64_t target_n, Rng& rng) {
  if (target_n < 1) throw Error("target population size must be >= 1");
  const auto& w = f.weights();
  double tail = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) tail += w[i];
  if (tail <= kProbabilityTolerance) {
    throw ZeroSupportError("family size distribution has all mass on zero children");
  }

  // Family size conditioned on >= 1 child.
  std::vector<double> cdf(w.size() - 1);
  double acc = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    acc += w[i] / tail;
    cdf[i - 1] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);

  Population pop;
  pop.generation_index = 0;
  std::int64_t id = 0;
  std::int64_t family = 0;
  while (static_cast<std::int64_t>(pop.persons.size()) < target_n) {
    const double u = rng.next_double();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    const auto family_size = static_cast<std::int64_t>(it - cdf.begin()) + 1;
    for (std::int64_t c = 0; c < family_size; ++c) {
      pop.persons.push_back(Person{id++, draw_sex(rng), family, 0, std::nullopt});
    }
    ++family;
  }
  marry_unmarried(pop, alpha, rng);
  return pop;
}

Population evolve_generation(const Population& parents, const ChildCountDist& policy,
                             MarriageRatio alpha_next, Rng& rng, double utilization) {
  if (!(utilization >= 0.0 && utilization <= 1.0)) {
    throw Error("utilization must be in [0, 1]");
  }
  Population next;
  next.generation_index = parents.generation_index + 1;
  std::int64_t id = 0;
  std::int64_t family = 0;
  for ([[maybe_unused]] const auto& couple : married_couples(parents)) {
    const int quota = sample_quota(policy, rng);
    int born = quota;
    if (utilization < 1.0) {
      born = 0;
      for (int c = 0; c < quota; ++c) {
        if (rng.next_double() < utilization) ++born;
      }
    }
    for (int c = 0; c < born; ++c) {
      next.persons.push_back(
          Person{id++, draw_sex(rng), family, next.generation_index, std::nullopt});
    }
    ++family;
  }
  marry_unmarried(next, alpha_next, rng);
  return next;
}

Population make_seed_generation(std::int64_t n, MarriageRatio alpha, Rng& rng) {
  if (n < 1) throw Error("initial population size must be >= 1");
  Population pop;
  pop.generation_index = 0;
  pop.persons.reserve(static_cast<std::size_t>(n));
  const std::int64_t males = n / 2;
  for (std::int64_t i = 0; i < n; ++i) {
    pop.persons.push_back(Person{i, i < males ? Sex::male : Sex::female, i, 0, std::nullopt});
  }
  marry_unmarried(pop, alpha, rng);
  return pop;
}

}  // namespace strongties
