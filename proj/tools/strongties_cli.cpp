// Command line front end: `analyze` for the branching-process analytics,
// `simulate` for finite network generation, `gw` for Monte Carlo branching
// ensembles. Exit codes: 0 success, 2 input error, 3 population died.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "strongties/branching.hpp"
#include "strongties/config.hpp"
#include "strongties/experiment.hpp"
#include "strongties/graph.hpp"
#include "strongties/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace strongties;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct ResolvedDist {
  std::string label;  // canonical built-in name, file section name, or "inline"
  ChildCountDist dist;
  std::optional<double> default_alpha;
};

std::optional<std::string> canonical_policy_name(const std::string& key) {
  if (key == "1c") return "1C";
  if (key == "0/2c") return "0/2C";
  if (key == "2c") return "2C";
  if (key == "0/3c") return "0/3C";
  if (key == "c++") return "C++";
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

// Named sections in --dist-file win, then built-in policies, then built-in
// distributions, then an inline comma-separated weight list.
ResolvedDist resolve_dist(const std::string& value, const std::string& dist_file) {
  const std::string key = lower(value);
  if (!dist_file.empty()) {
    for (auto& nd : read_dist_config(read_file(dist_file))) {
      if (lower(nd.name) == key) return ResolvedDist{nd.name, std::move(nd.dist), nd.alpha};
    }
  }
  if (const auto canon = canonical_policy_name(key)) {
    return ResolvedDist{*canon, builtin_policy(key), std::nullopt};
  }
  if (key == "china" || key == "india") {
    FamilyDistribution fd = builtin_distribution(key);
    return ResolvedDist{key, std::move(fd.dist), fd.alpha.value()};
  }
  try {
    return ResolvedDist{"inline", validate_dist(parse_double_list(value)), std::nullopt};
  } catch (const ConfigError&) {
    throw UnknownPolicyError("'" + value +
                             "' is not a built-in name or a comma-separated weight list");
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json metrics_json(const Metrics& m) {
  json histogram = json::object();
  for (const auto& [size, count] : m.component_size_histogram) {
    histogram[std::to_string(size)] = count;
  }
  return json{{"node_count", m.node_count},
              {"sibling_edge_count", m.sibling_edge_count},
              {"marital_edge_count", m.marital_edge_count},
              {"component_count", m.component_count},
              {"largest_component_size", m.largest_component_size},
              {"largest_component_fraction", m.largest_component_fraction},
              {"singleton_count", m.singleton_count},
              {"component_size_histogram", histogram}};
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string value;
  std::string dist_file;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  bool as_json = false;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const ResolvedDist rd = resolve_dist(args.value, args.dist_file);
  const std::optional<double> alpha_value = args.alpha ? args.alpha : rd.default_alpha;
  if (!alpha_value) throw Error("--alpha is required (no built-in value for this input)");
  const MarriageRatio alpha(*alpha_value);
  const std::uint64_t seed = resolve_seed(args.seed);

  const DerivedChildDist derived = derive_child_dist(rd.dist, alpha);
  const double mu_closed = mu_closed_form(rd.dist, alpha);
  const Criticality crit = classify(derived);
  const double q = extinction_probability(derived);
  const double mean = mean_children(rd.dist);
  const double ratio = expected_population_ratio(rd.dist, alpha);

  json doc{{"command", "analyze"},
           {"version", std::string(kVersion)},
           {"seed", seed},
           {"config",
            {{"dist", rd.label}, {"weights", rd.dist.weights()}, {"alpha", alpha.value()}}},
           {"result",
            {{"a", derived.a},
             {"residual_folded", derived.residual_folded},
             {"mu", derived.mu},
             {"mu_closed_form", mu_closed},
             {"class", to_string(crit.cls)},
             {"degenerate_chain", crit.degenerate_chain},
             {"extinction_probability", q},
             {"mean_children", mean},
             {"expected_population_ratio", ratio}}}};

  if (args.as_json) {
    std::cout << dump(doc);
  } else {
    std::cout << "dist                " << rd.label << "\n";
    std::cout << "alpha               " << format_double(alpha.value()) << "\n";
    std::cout << "a                   ";
    for (std::size_t j = 0; j < derived.a.size(); ++j) {
      std::cout << (j > 0 ? ", " : "") << format_double(derived.a[j]);
    }
    std::cout << "\n";
    std::cout << "residual folded     " << format_double(derived.residual_folded) << "\n";
    std::cout << "mu                  " << format_double(derived.mu) << "\n";
    std::cout << "class               " << to_string(crit.cls)
              << (crit.degenerate_chain ? " (degenerate chain)" : "") << "\n";
    std::cout << "extinction prob     " << format_double(q) << "\n";
    std::cout << "mean children       " << format_double(mean) << "\n";
    std::cout << "population ratio    " << format_double(ratio) << "\n";
    std::cout << "seed                " << seed << "\n";
  }
  if (!args.out.empty()) {
    fs::create_directories(args.out);
    write_file(fs::path(args.out) / "report.json", dump(doc));
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string value;
  std::string dist_file;
  std::string config_file;
  std::optional<double> alpha;
  std::optional<std::int64_t> n;
  std::optional<std::int32_t> generations;
  std::optional<double> utilization;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool as_json = false;
};

json generation_entry(const Population& pop, const Metrics& metrics,
                      const std::string& graph_file) {
  json entry = metrics_json(metrics);
  entry["generation"] = pop.generation_index;
  entry["alpha_realized"] = pop.alpha_realized;
  entry["graph_file"] = graph_file;
  return entry;
}

void print_generation_line(const json& entry) {
  std::cout << "generation " << entry["generation"].get<std::int64_t>()
            << ": nodes=" << entry["node_count"].get<std::uint64_t>()
            << " sibling_edges=" << entry["sibling_edge_count"].get<std::uint64_t>()
            << " marital_edges=" << entry["marital_edge_count"].get<std::uint64_t>()
            << " components=" << entry["component_count"].get<std::uint64_t>()
            << " largest=" << entry["largest_component_size"].get<std::uint64_t>()
            << " (fraction " << format_double(entry["largest_component_fraction"].get<double>())
            << ")\n";
}

int cmd_simulate_sample(const SimulateArgs& args) {
  if (!args.n) throw Error("--n is required");
  const ResolvedDist rd = resolve_dist(args.value, args.dist_file);
  const std::optional<double> alpha_value = args.alpha ? args.alpha : rd.default_alpha;
  if (!alpha_value) throw Error("--alpha is required (no built-in value for this input)");
  const MarriageRatio alpha(*alpha_value);
  const std::uint64_t seed = resolve_seed(args.seed);
  const std::string out = args.out.value_or(".");
  const GraphFormat format = parse_graph_format(args.format.value_or("edge-csv"));

  Rng rng(seed);
  const Population pop = sample_population(rd.dist, alpha, *args.n, rng);
  const StrongTiesNetwork net = build_network(pop);
  const Metrics metrics = compute_metrics(net);
  const std::string graph_file =
      "gen0." + std::string(graph_format_extension(format));

  json doc{{"command", "simulate-sample"},
           {"version", std::string(kVersion)},
           {"seed", seed},
           {"config",
            {{"dist", rd.label},
             {"weights", rd.dist.weights()},
             {"alpha", alpha.value()},
             {"target_n", *args.n},
             {"out", out},
             {"format", std::string(graph_format_extension(format)) == "csv"
                            ? "edge-csv"
                            : std::string(graph_format_extension(format))}}},
           {"generations", json::array({generation_entry(pop, metrics, graph_file)})},
           {"died_at", nullptr}};

  fs::create_directories(out);
  write_file(fs::path(out) / graph_file, export_network(net, format));
  write_file(fs::path(out) / "metrics.json", dump(doc));

  if (args.as_json) {
    std::cout << dump(doc);
  } else {
    std::cout << "seed " << seed << "\n";
    print_generation_line(doc["generations"][0]);
    std::cout << "wrote " << (fs::path(out) / graph_file).string() << "\n";
    std::cout << "wrote " << (fs::path(out) / "metrics.json").string() << "\n";
  }
  return 0;
}

int cmd_simulate_evolve(SimulateArgs args) {
  if (!args.config_file.empty()) {
    const ExperimentFileConfig file = read_experiment_config(read_file(args.config_file));
    if (!args.n) args.n = file.initial_n;
    if (!args.alpha) args.alpha = file.alpha;
    if (args.value.empty() && file.policy) args.value = *file.policy;
    if (!args.generations) args.generations = file.generations;
    if (!args.seed) args.seed = file.seed;
    if (!args.utilization) args.utilization = file.utilization;
    if (!args.out) args.out = file.out_dir;
    if (!args.format) args.format = file.format;
  }
  if (args.value.empty()) throw Error("--policy is required");
  if (!args.n) throw Error("--n is required");
  const ResolvedDist rd = resolve_dist(args.value, args.dist_file);
  const std::optional<double> alpha_value = args.alpha ? args.alpha : rd.default_alpha;
  if (!alpha_value) throw Error("--alpha is required (no built-in value for this input)");
  const MarriageRatio alpha(*alpha_value);
  const std::int32_t generations = args.generations.value_or(1);
  const double utilization = args.utilization.value_or(1.0);
  const std::uint64_t seed = resolve_seed(args.seed);
  const std::string out = args.out.value_or(".");
  const GraphFormat format = parse_graph_format(args.format.value_or("edge-csv"));

  Rng rng(seed);
  const ExperimentResult result =
      run_policy_experiment(*args.n, rd.dist, alpha, generations, rng, utilization);

  json entries = json::array();
  fs::create_directories(out);
  for (const GenerationResult& gen : result.generations) {
    const std::string graph_file = "gen" + std::to_string(gen.population.generation_index) +
                                   "." + std::string(graph_format_extension(format));
    write_file(fs::path(out) / graph_file, export_network(gen.network, format));
    entries.push_back(generation_entry(gen.population, gen.metrics, graph_file));
  }

  json doc{{"command", "simulate-evolve"},
           {"version", std::string(kVersion)},
           {"seed", seed},
           {"config",
            {{"policy", rd.label},
             {"weights", rd.dist.weights()},
             {"alpha", alpha.value()},
             {"initial_n", *args.n},
             {"generations", generations},
             {"utilization", utilization},
             {"out", out},
             {"format", format == GraphFormat::edge_csv
                            ? "edge-csv"
                            : std::string(graph_format_extension(format))}}},
           {"generations", entries},
           {"died_at", result.died_at ? json(*result.died_at) : json(nullptr)}};

  write_file(fs::path(out) / "metrics.json", dump(doc));

  if (args.as_json) {
    std::cout << dump(doc);
  } else {
    std::cout << "seed " << seed << "\n";
    for (const auto& entry : doc["generations"]) print_generation_line(entry);
    std::cout << "wrote " << (fs::path(out) / "metrics.json").string() << "\n";
  }
  if (result.died()) {
    std::cerr << "population died at generation " << *result.died_at
              << " (partial results kept)\n";
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------- gw

struct GwArgs {
  std::string value;
  std::string dist_file;
  std::optional<double> alpha;
  std::uint64_t runs = 10000;
  std::uint64_t max_levels = 500;
  std::uint64_t max_nodes = 1'000'000;
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
  bool as_json = false;
  std::string out;
};

int cmd_gw(const GwArgs& args) {
  const ResolvedDist rd = resolve_dist(args.value, args.dist_file);
  const std::optional<double> alpha_value = args.alpha ? args.alpha : rd.default_alpha;
  const std::uint64_t seed = resolve_seed(args.seed);
  const SimulationCaps caps{args.max_levels, args.max_nodes};

  // With a marriage ratio the input is a family size distribution and the
  // strong-ties process applies (root draws twice); without one the input is
  // taken as the branching child distribution itself.
  const bool strong_ties = alpha_value.has_value();
  EnsembleSummary ensemble;
  DerivedChildDist node_dist;
  if (strong_ties) {
    const MarriageRatio alpha(*alpha_value);
    node_dist = derive_child_dist(rd.dist, alpha);
    ensemble = run_strong_ties_ensemble(rd.dist, alpha, args.runs, caps, seed, args.threads);
  } else {
    node_dist = as_child_dist(rd.dist);
    ensemble = run_gw_ensemble(node_dist, args.runs, caps, seed, args.threads);
  }
  const double q = extinction_probability(node_dist);
  const double predicted_survival = strong_ties ? 1.0 - q * q : 1.0 - q;
  const double survival = ensemble.survival_frequency();

  json config{{"mode", strong_ties ? "strong-ties" : "galton-watson"},
              {"dist", rd.label},
              {"weights", rd.dist.weights()},
              {"runs", args.runs},
              {"max_levels", args.max_levels},
              {"max_nodes", args.max_nodes}};
  if (strong_ties) config["alpha"] = *alpha_value;

  json doc{{"command", "gw"},
           {"version", std::string(kVersion)},
           {"seed", seed},
           {"config", config},
           {"result",
            {{"survival_frequency", survival},
             {"extinction_frequency", 1.0 - survival},
             {"mean_z", ensemble.mean_z()},
             {"mu", node_dist.mu},
             {"extinction_probability", q},
             {"predicted_survival", predicted_survival}}}};

  if (args.as_json) {
    std::cout << dump(doc);
  } else {
    std::cout << "mode                 " << (strong_ties ? "strong-ties" : "galton-watson")
              << "\n";
    std::cout << "dist                 " << rd.label << "\n";
    if (strong_ties) std::cout << "alpha                " << format_double(*alpha_value) << "\n";
    std::cout << "runs                 " << args.runs << "\n";
    std::cout << "survival frequency   " << format_double(survival) << "\n";
    std::cout << "extinction frequency " << format_double(1.0 - survival) << "\n";
    std::cout << "mu                   " << format_double(node_dist.mu) << "\n";
    std::cout << "analytic extinction  " << format_double(q) << "\n";
    std::cout << "predicted survival   " << format_double(predicted_survival) << "\n";
    const std::vector<double> mean_z = ensemble.mean_z();
    std::cout << "mean Z_t             ";
    for (std::size_t t = 0; t < mean_z.size() && t < 10; ++t) {
      std::cout << (t > 0 ? ", " : "") << format_double(mean_z[t]);
    }
    if (mean_z.size() > 10) std::cout << ", ...";
    std::cout << "\n";
    std::cout << "seed                 " << seed << "\n";
  }
  if (!args.out.empty()) {
    fs::create_directories(args.out);
    write_file(fs::path(args.out) / "report.json", dump(doc));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong-ties social network policy toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  AnalyzeArgs an;
  std::string an_policy;
  std::string an_dist;
  auto* analyze = app.add_subcommand(
      "analyze", "Derived child distribution, criticality and extinction probability");
  analyze->add_option("--policy", an_policy, "built-in policy name or inline weights");
  analyze->add_option("--dist", an_dist, "built-in distribution name or inline weights");
  analyze->add_option("--dist-file", an.dist_file, "config file with named distributions");
  analyze->add_option("--alpha", an.alpha, "marriage ratio in [0,1]");
  analyze->add_option("--seed", an.seed, "seed echoed into the report");
  analyze->add_flag("--json", an.as_json, "structured stdout");
  analyze->add_option("--out", an.out, "directory for report.json");

  SimulateArgs sim;
  std::string sim_policy;
  std::string sim_dist;
  auto* simulate = app.add_subcommand("simulate", "Finite strong-ties network simulation");
  simulate->require_subcommand(1);
  auto* sample = simulate->add_subcommand(
      "sample", "Draw one generation directly from a family size distribution");
  sample->add_option("--dist", sim_dist, "built-in distribution name or inline weights");
  sample->add_option("--dist-file", sim.dist_file, "config file with named distributions");
  sample->add_option("--alpha", sim.alpha, "marriage ratio in [0,1]");
  sample->add_option("--n", sim.n, "target head count");
  sample->add_option("--seed", sim.seed, "simulation seed");
  sample->add_option("--out", sim.out, "output directory (default .)");
  sample->add_option("--format", sim.format, "dot|graphml|edge-csv (default edge-csv)");
  sample->add_flag("--json", sim.as_json, "structured stdout");
  auto* evolve = simulate->add_subcommand(
      "evolve", "Evolve generations under a population control policy");
  evolve->add_option("--policy", sim_policy, "built-in policy name or inline weights");
  evolve->add_option("--dist-file", sim.dist_file, "config file with named distributions");
  evolve->add_option("--config", sim.config_file, "experiment config file ([experiment] section)");
  evolve->add_option("--alpha", sim.alpha, "marriage ratio in [0,1]");
  evolve->add_option("--n", sim.n, "initial population size");
  evolve->add_option("--generations", sim.generations, "number of generations (default 1)");
  evolve->add_option("--utilization", sim.utilization,
                     "per-child probability of using the quota (default 1)");
  evolve->add_option("--seed", sim.seed, "simulation seed");
  evolve->add_option("--out", sim.out, "output directory (default .)");
  evolve->add_option("--format", sim.format, "dot|graphml|edge-csv (default edge-csv)");
  evolve->add_flag("--json", sim.as_json, "structured stdout");

  GwArgs gw;
  std::string gw_policy;
  std::string gw_dist;
  auto* gw_cmd = app.add_subcommand("gw", "Monte Carlo branching-process ensembles");
  gw_cmd->add_option("--policy", gw_policy, "built-in policy name or inline weights");
  gw_cmd->add_option("--dist", gw_dist, "distribution name or inline weights");
  gw_cmd->add_option("--dist-file", gw.dist_file, "config file with named distributions");
  gw_cmd->add_option("--alpha", gw.alpha,
                     "marriage ratio; if present the strong-ties process is simulated");
  gw_cmd->add_option("--runs", gw.runs, "number of runs (default 10000)");
  gw_cmd->add_option("--max-levels", gw.max_levels, "level cap per run (default 500)");
  gw_cmd->add_option("--max-nodes", gw.max_nodes, "total node cap per run (default 1e6)");
  gw_cmd->add_option("--threads", gw.threads,
                     "worker threads; results are identical for any value");
  gw_cmd->add_option("--seed", gw.seed, "master seed for the run streams");
  gw_cmd->add_flag("--json", gw.as_json, "structured stdout");
  gw_cmd->add_option("--out", gw.out, "directory for report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) {
      if (an_policy.empty() == an_dist.empty()) {
        throw Error("exactly one of --policy / --dist is required");
      }
      an.value = an_policy.empty() ? an_dist : an_policy;
      return cmd_analyze(an);
    }
    if (app.got_subcommand(simulate)) {
      if (simulate->got_subcommand(sample)) {
        if (sim_dist.empty()) throw Error("--dist is required");
        sim.value = sim_dist;
        return cmd_simulate_sample(sim);
      }
      sim.value = sim_policy;
      return cmd_simulate_evolve(sim);
    }
    if (app.got_subcommand(gw_cmd)) {
      if (gw_policy.empty() == gw_dist.empty()) {
        throw Error("exactly one of --policy / --dist is required");
      }
      gw.value = gw_policy.empty() ? gw_dist : gw_policy;
      return cmd_gw(gw);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
