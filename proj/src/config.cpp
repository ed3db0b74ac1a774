#include "strongties/config.hpp"

#include <array>
#include <charconv>
#include <sstream>

namespace strongties {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

const std::string* ConfigSection::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<ConfigSection> parse_config(const std::string& text) {
  std::vector<ConfigSection> sections;
  std::istringstream is(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("bad section header at line " + std::to_string(line_no));
      }
      sections.push_back(ConfigSection{std::string(trim(line.substr(1, line.size() - 2))), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected 'key = value' at line " + std::to_string(line_no));
    }
    if (sections.empty()) {
      throw ConfigError("entry before any [section] at line " + std::to_string(line_no));
    }
    sections.back().entries.emplace_back(std::string(trim(line.substr(0, eq))),
                                         std::string(trim(line.substr(eq + 1))));
  }
  return sections;
}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  const std::string_view t = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("bad decimal '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_u64(std::string_view text) {
  const std::string_view t = trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("bad unsigned integer '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::string_view t = trim(text);
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']') throw ConfigError("unterminated list '" + std::string(text) + "'");
    t = trim(t.substr(1, t.size() - 2));
  }
  std::vector<double> values;
  while (!t.empty()) {
    const auto comma = t.find(',');
    const std::string_view field = comma == std::string_view::npos ? t : t.substr(0, comma);
    values.push_back(parse_double(field));
    if (comma == std::string_view::npos) break;
    t = t.substr(comma + 1);
  }
  if (values.empty()) throw ConfigError("empty decimal list");
  return values;
}

std::string write_dist_config(const std::vector<NamedDist>& dists) {
  std::ostringstream os;
  bool first = true;
  for (const NamedDist& d : dists) {
    if (!first) os << "\n";
    first = false;
    os << "[" << d.name << "]\n";
    os << "weights = ";
    for (std::size_t i = 0; i < d.dist.weights().size(); ++i) {
      if (i > 0) os << ", ";
      os << format_double(d.dist.weights()[i]);
    }
    os << "\n";
    if (d.alpha) os << "alpha = " << format_double(*d.alpha) << "\n";
  }
  return os.str();
}

std::vector<NamedDist> read_dist_config(const std::string& text) {
  std::vector<NamedDist> dists;
  for (const ConfigSection& section : parse_config(text)) {
    const std::string* weights = section.find("weights");
    if (weights == nullptr) {
      throw ConfigError("section [" + section.name + "] is missing 'weights'");
    }
    std::optional<double> alpha;
    if (const std::string* a = section.find("alpha")) alpha = parse_double(*a);
    dists.push_back(NamedDist{section.name, validate_dist(parse_double_list(*weights)), alpha});
  }
  return dists;
}

ExperimentFileConfig read_experiment_config(const std::string& text) {
  ExperimentFileConfig cfg;
  for (const ConfigSection& section : parse_config(text)) {
    if (section.name != "experiment") continue;
    for (const auto& [key, value] : section.entries) {
      if (key == "initial_n") cfg.initial_n = static_cast<std::int64_t>(parse_u64(value));
      else if (key == "alpha") cfg.alpha = parse_double(value);
      else if (key == "policy") cfg.policy = value;
      else if (key == "generations") cfg.generations = static_cast<std::int32_t>(parse_u64(value));
      else if (key == "seed") cfg.seed = parse_u64(value);
      else if (key == "utilization") cfg.utilization = parse_double(value);
      else if (key == "out") cfg.out_dir = value;
      else if (key == "format") cfg.format = value;
      else throw ConfigError("unknown experiment key '" + key + "'");
    }
    return cfg;
  }
  throw ConfigError("config has no [experiment] section");
}

}  // namespace strongties
