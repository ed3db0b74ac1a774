#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "strongties/errors.hpp"
#include "strongties/rng.hpp"

namespace strongties {

// Absolute tolerance for probability normalization and prefix-sum
// comparisons. The built-in vectors are short exact decimals, so honest
// inputs sit far inside it.
inline constexpr double kProbabilityTolerance = 1e-9;

// Probability vector over per-family child counts, indexed from zero.
// Serves both as a family size distribution (the observed fractions) and as
// a population control policy (the target fractions). Immutable after
// construction.
class ChildCountDist {
 public:
  // Validates on construction: every weight >= 0 and the sum is 1 within
  // kProbabilityTolerance. Trailing zero weights are kept, so max_children
  // is simply length - 1.
  explicit ChildCountDist(std::vector<double> weights);

  const std::vector<double>& weights() const { return weights_; }
  std::size_t max_children() const { return weights_.size() - 1; }

  // Weight at child count i; zero beyond the stored range.
  double weight(std::size_t i) const { return i < weights_.size() ? weights_[i] : 0.0; }

  // Cumulative weights, last entry clamped up to 1 so inverse-CDF draws
  // always land.
  const std::vector<double>& cumulative() const { return cdf_; }

 private:
  std::vector<double> weights_;
  std::vector<double> cdf_;
};

// Married women divided by total women in a generation. In [0,1].
class MarriageRatio {
 public:
  explicit MarriageRatio(double alpha);
  double value() const { return alpha_; }

 private:
  double alpha_;
};

ChildCountDist validate_dist(std::vector<double> weights);

// Built-in policy vectors: 1C, 0/2C, 2C, 0/3C, C++ (case-insensitive).
ChildCountDist builtin_policy(std::string_view name);

// True iff every prefix sum of `actual` is >= the corresponding prefix sum
// of `policy` within tolerance. The shorter vector is treated as
// zero-padded.
bool check_compliance(const ChildCountDist& actual, const ChildCountDist& policy);

// Draws a per-family child quota K with P[K = i] = policy.weight(i).
int sample_quota(const ChildCountDist& policy, Rng& rng);

// Expected child count, sum of i * weight(i).
double mean_children(const ChildCountDist& dist);

// Next-generation over current-generation size under full quota utilization
// and an even sex split: alpha * mean_children / 2.
double expected_population_ratio(const ChildCountDist& policy, MarriageRatio alpha);

// A family size distribution together with the matching marriage ratio.
struct FamilyDistribution {
  ChildCountDist dist;
  MarriageRatio alpha;
};

// Urban China family sizes, last entry standing in for families with 5 or
// more children (modeled here as exactly 5). alpha = 0.92.
const FamilyDistribution& china_distribution();

// India family sizes, same truncation convention. The 0.92 marriage ratio
// is an estimate, not census data.
const FamilyDistribution& india_distribution();

// Built-in named distributions: china, india (case-insensitive).
FamilyDistribution builtin_distribution(std::string_view name);

}  // namespace strongties
