#include "strongties/policy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

namespace strongties {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ChildCountDist::ChildCountDist(std::vector<double> weights) : weights_(std::move(weights)) {
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] < 0.0) {
      throw NegativeWeightError("negative weight " + describe(weights_[i]) +
                                " at child count " + std::to_string(i));
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    throw NotNormalizedError("weights sum to " + describe(sum) +
                             ", expected 1 within 1e-9");
  }
  cdf_.resize(weights_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    acc += weights_[i];
    cdf_[i] = acc;
  }
  cdf_.back() = std::max(cdf_.back(), 1.0);
}

MarriageRatio::MarriageRatio(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error("marriage ratio must be in [0, 1], got " + describe(alpha));
  }
}

ChildCountDist validate_dist(std::vector<double> weights) {
  return ChildCountDist(std::move(weights));
}

ChildCountDist builtin_policy(std::string_view name) {
  const std::string key = lower(name);
  if (key == "1c") return ChildCountDist({0.0, 1.0});
  if (key == "0/2c") return ChildCountDist({0.5, 0.0, 0.5});
  if (key == "2c") return ChildCountDist({0.0, 0.0, 1.0});
  if (key == "0/3c") return ChildCountDist({1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0});
  if (key == "c++") return ChildCountDist({0.0, 0.0, 0.9, 0.1});
  throw UnknownPolicyError("unknown policy '" + std::string(name) +
                           "' (built-ins: 1C, 0/2C, 2C, 0/3C, C++)");
}

bool check_compliance(const ChildCountDist& actual, const ChildCountDist& policy) {
  const std::size_t n = std::max(actual.weights().size(), policy.weights().size());
  double prefix_actual = 0.0;
  double prefix_policy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    prefix_actual += actual.weight(j);
    prefix_policy += policy.weight(j);
    if (prefix_actual < prefix_policy - kProbabilityTolerance) return false;
  }
  return true;
}

int sample_quota(const ChildCountDist& policy, Rng& rng) {
  const double u = rng.next_double();
  const auto& cdf = policy.cumulative();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin());
}

double mean_children(const ChildCountDist& dist) {
  double mean = 0.0;
  const auto& w = dist.weights();
  for (std::size_t i = 1; i < w.size(); ++i) mean += static_cast<double>(i) * w[i];
  return mean;
}

double expected_population_ratio(const ChildCountDist& policy, MarriageRatio alpha) {
  return alpha.value() * mean_children(policy) / 2.0;
}

const FamilyDistribution& china_distribution() {
  static const FamilyDistribution d{
      ChildCountDist({0.418, 0.269, 0.17, 0.085, 0.039, 0.019}), MarriageRatio(0.92)};
  return d;
}

const FamilyDistribution& india_distribution() {
  // alpha = 0.92 is an estimate; exact figures were not available.
  static const FamilyDistribution d{
      ChildCountDist({0.126, 0.121, 0.199, 0.193, 0.141, 0.22}), MarriageRatio(0.92)};
  return d;
}

FamilyDistribution builtin_distribution(std::string_view name) {
  const std::string key = lower(name);
  if (key == "china") return china_distribution();
  if (key == "india") return india_distribution();
  throw UnknownPolicyError("unknown distribution '" + std::string(name) +
                           "' (built-ins: china, india)");
}

}  // namespace strongties
