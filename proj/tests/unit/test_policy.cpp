#include <doctest.h>

#include <cmath>
#include <vector>

#include "strongties/policy.hpp"

using namespace strongties;

namespace {

// Random distribution over child counts 0..max_children.
ChildCountDist random_dist(Rng& rng, std::size_t max_children) {
  std::vector<double> w(max_children + 1);
  double sum = 0.0;
  for (double& x : w) {
    x = rng.next_double() + 1e-3;
    sum += x;
  }
  for (double& x : w) x /= sum;
  return ChildCountDist(w);
}

// Moves a slice of mass from a random higher index to a random lower one.
// Prefix sums can only grow, so the result prefix-dominates the input.
ChildCountDist shift_mass_down(const ChildCountDist& base, Rng& rng) {
  std::vector<double> w = base.weights();
  for (int tries = 0; tries < 32; ++tries) {
    const std::size_t hi = 1 + rng.next_below(w.size() - 1);
    const std::size_t lo = rng.next_below(hi);
    if (w[hi] <= 0.0) continue;
    const double moved = w[hi] * rng.next_double();
    w[hi] -= moved;
    w[lo] += moved;
    break;
  }
  return ChildCountDist(w);
}

}  // namespace

TEST_CASE("validate_dist accepts proper vectors and keeps trailing zeros") {
  const ChildCountDist d = validate_dist({0.0, 1.0, 0.0});
  CHECK(d.max_children() == 2);
  CHECK(d.weights() == std::vector<double>{0.0, 1.0, 0.0});
  const ChildCountDist point = validate_dist({1.0});
  CHECK(point.max_children() == 0);
}

TEST_CASE("validate_dist rejects bad vectors") {
  CHECK_THROWS_AS(validate_dist({0.5, 0.6}), NotNormalizedError);
  CHECK_THROWS_AS(validate_dist({1.2, -0.2}), NegativeWeightError);
  CHECK_THROWS_AS(validate_dist({}), NotNormalizedError);
}

TEST_CASE("built-in policy vectors") {
  CHECK(builtin_policy("1C").weights() == std::vector<double>{0.0, 1.0});
  CHECK(builtin_policy("0/2C").weights() == std::vector<double>{0.5, 0.0, 0.5});
  CHECK(builtin_policy("2C").weights() == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(builtin_policy("0/3C").weights() ==
        std::vector<double>{1.0 / 3.0, 0.0, 0.0, 2.0 / 3.0});
  CHECK(builtin_policy("C++").weights() == std::vector<double>{0.0, 0.0, 0.9, 0.1});
  CHECK(builtin_policy("c++").weights() == builtin_policy("C++").weights());
  CHECK_THROWS_AS(builtin_policy("4C"), UnknownPolicyError);
}

TEST_CASE("compliance prefix-dominance") {
  const ChildCountDist p03 = builtin_policy("0/3C");
  CHECK(check_compliance(p03, p03));
  // one child per family dominates the two-child target...
  CHECK(check_compliance(validate_dist({0.0, 1.0}), validate_dist({0.0, 0.0, 1.0})));
  // ...but all-three-children fails the two-child target at prefix 2
  CHECK_FALSE(check_compliance(validate_dist({0.0, 0.0, 0.0, 1.0}),
                               validate_dist({0.0, 0.0, 1.0})));
}

TEST_CASE("compliance is reflexive and transitive along dominance chains") {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const ChildCountDist d3 = random_dist(rng, 1 + rng.next_below(6));
    CHECK(check_compliance(d3, d3));
    const ChildCountDist d2 = shift_mass_down(d3, rng);
    const ChildCountDist d1 = shift_mass_down(d2, rng);
    REQUIRE(check_compliance(d1, d2));
    REQUIRE(check_compliance(d2, d3));
    CHECK(check_compliance(d1, d3));
  }
}

TEST_CASE("a policy without 3+ child families forces the same of compliant actuals") {
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> pw(3);
    double sum = 0.0;
    for (double& x : pw) {
      x = rng.next_double();
      sum += x;
    }
    for (double& x : pw) x /= sum;
    const ChildCountDist policy(pw);
    // Candidates that comply by construction carry no tail mass; random
    // candidates with tail mass must be rejected.
    const ChildCountDist compliant = shift_mass_down(policy, rng);
    CHECK(check_compliance(compliant, policy));
    const ChildCountDist actual = random_dist(rng, 5);
    double tail = 0.0;
    for (std::size_t j = 3; j < actual.weights().size(); ++j) tail += actual.weights()[j];
    if (check_compliance(actual, policy)) {
      CHECK(tail <= 2e-9);
    } else if (tail > 2e-9) {
      CHECK_FALSE(check_compliance(actual, policy));
    }
  }
}

TEST_CASE("sample_quota on point masses") {
  Rng rng(1);
  const ChildCountDist one_child = builtin_policy("1C");
  const ChildCountDist childless = validate_dist({1.0});
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_quota(one_child, rng) == 1);
    CHECK(sample_quota(childless, rng) == 0);
  }
}

TEST_CASE("sample_quota frequencies track the weights") {
  const ChildCountDist policy = builtin_policy("0/3C");
  Rng rng(99);
  const int n = 100000;
  std::array<int, 4> counts{};
  for (int i = 0; i < n; ++i) {
    const int q = sample_quota(policy, rng);
    REQUIRE(q >= 0);
    REQUIRE(q <= 3);
    ++counts[static_cast<std::size_t>(q)];
  }
  CHECK(counts[1] == 0);
  CHECK(counts[2] == 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double w = policy.weights()[i];
    const double freq = static_cast<double>(counts[i]) / n;
    CHECK(std::abs(freq - w) <= 4.0 * std::sqrt(w * (1.0 - w) / n));
  }
}

TEST_CASE("mean_children") {
  CHECK(mean_children(builtin_policy("1C")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean_children(builtin_policy("0/3C")) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(mean_children(builtin_policy("C++")) - 2.1) < 1e-12);
}

TEST_CASE("expected population ratio") {
  CHECK(std::abs(expected_population_ratio(builtin_policy("C++"), MarriageRatio(0.92)) - 0.966) <
        1e-12);
  CHECK(std::abs(expected_population_ratio(builtin_policy("1C"), MarriageRatio(0.9)) - 0.45) <
        1e-12);
  CHECK(expected_population_ratio(builtin_policy("0/3C"), MarriageRatio(0.0)) == 0.0);
}

TEST_CASE("expected population ratio is linear in alpha") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const ChildCountDist policy = random_dist(rng, 4);
    const double alpha = rng.next_double();
    const double scale = rng.next_double();
    const double lhs = expected_population_ratio(policy, MarriageRatio(alpha * scale));
    const double rhs = scale * expected_population_ratio(policy, MarriageRatio(alpha));
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("marriage ratio bounds") {
  CHECK_THROWS_AS(MarriageRatio(-0.1), Error);
  CHECK_THROWS_AS(MarriageRatio(1.1), Error);
  CHECK(MarriageRatio(0.0).value() == 0.0);
  CHECK(MarriageRatio(1.0).value() == 1.0);
}

TEST_CASE("built-in national distributions validate and carry alpha 0.92") {
  const FamilyDistribution& china = china_distribution();
  const FamilyDistribution& india = india_distribution();
  CHECK(china.dist.weights() ==
        std::vector<double>{0.418, 0.269, 0.17, 0.085, 0.039, 0.019});
  CHECK(india.dist.weights() ==
        std::vector<double>{0.126, 0.121, 0.199, 0.193, 0.141, 0.22});
  CHECK(china.alpha.value() == 0.92);
  CHECK(india.alpha.value() == 0.92);
  CHECK(std::abs(mean_children(china.dist) - 1.115) < 1e-12);
  CHECK(std::abs(mean_children(india.dist) - 2.762) < 1e-12);
  CHECK(builtin_distribution("CHINA").dist.weights() == china.dist.weights());
  CHECK_THROWS_AS(builtin_distribution("france"), UnknownPolicyError);
}
