#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strongties/policy.hpp"

namespace strongties {

// Plain-text config document: `[section]` headers over `key = value` lines,
// `#` comments, blank lines ignored. Entry order is preserved.
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(std::string_view key) const;
};

std::vector<ConfigSection> parse_config(const std::string& text);

// Shortest round-trip decimal form (so written constants re-read to the
// exact same double).
std::string format_double(double value);

double parse_double(std::string_view text);
std::uint64_t parse_u64(std::string_view text);

// Comma-separated decimals, surrounding brackets optional.
std::vector<double> parse_double_list(std::string_view text);

// A distribution section: a `weights` array and an optional `alpha` scalar.
struct NamedDist {
  std::string name;
  ChildCountDist dist;
  std::optional<double> alpha;
};

std::string write_dist_config(const std::vector<NamedDist>& dists);
std::vector<NamedDist> read_dist_config(const std::string& text);

// The `[experiment]` section of a simulation config file. Every field is
// optional here; the CLI fills in defaults and lets flags override.
struct ExperimentFileConfig {
  std::optional<std::int64_t> initial_n;
  std::optional<double> alpha;
  std::optional<std::string> policy;  // builtin name or inline weights
  std::optional<std::int32_t> generations;
  std::optional<std::uint64_t> seed;
  std::optional<double> utilization;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
};

ExperimentFileConfig read_experiment_config(const std::string& text);

}  // namespace strongties
