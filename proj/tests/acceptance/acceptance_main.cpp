// End-to-end acceptance checklist. Drives the installed CLI binary (path in
// argv[1]) and the library, prints one PASS/FAIL line per criterion with its
// runtime, and exits nonzero if anything failed.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "strongties/branching.hpp"
#include "strongties/experiment.hpp"
#include "strongties/graph.hpp"

#include "../support/generators.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace strongties;

namespace {

std::string g_cli;
fs::path g_tmp;

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CmdResult run_cli(const std::string& args) {
  const fs::path so = g_tmp / "stdout.txt";
  const fs::path se = g_tmp / "stderr.txt";
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " > " + so.string() + " 2> " + se.string();
  const int rc = std::system(cmd.c_str());
  CmdResult result;
  if (rc != -1 && WIFEXITED(rc)) result.exit_code = WEXITSTATUS(rc);
  result.out = slurp(so);
  result.err = slurp(se);
  return result;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }
Outcome pass(std::string detail) { return {true, std::move(detail)}; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

// --------------------------------------------------------------- criteria

Outcome criterion_1_mu_03c() {
  const CmdResult r = run_cli("analyze --policy 0/3C --alpha 0.9 --json");
  if (r.exit_code != 0) return fail("exit code " + std::to_string(r.exit_code));
  const json j = json::parse(r.out);
  const double mu = j["result"]["mu"].get<double>();
  const std::string cls = j["result"]["class"].get<std::string>();
  if (std::abs(mu - 1.2) > 1e-12) return fail("mu=" + fmt(mu));
  if (cls != "supercritical") return fail("class=" + cls);
  return pass("mu=" + fmt(mu) + " class=" + cls);
}

Outcome criterion_2_mu_cpp() {
  const CmdResult r = run_cli("analyze --policy C++ --alpha 0.92 --json");
  if (r.exit_code != 0) return fail("exit code " + std::to_string(r.exit_code));
  const json j = json::parse(r.out);
  const double mu = j["result"]["mu"].get<double>();
  const double ratio = j["result"]["expected_population_ratio"].get<double>();
  if (std::abs(mu - 1.012) > 1e-12) return fail("mu=" + fmt(mu));
  if (std::abs(ratio - 0.966) > 1e-12) return fail("ratio=" + fmt(ratio));
  return pass("mu=" + fmt(mu) + " ratio=" + fmt(ratio) + " (3.4% reduction)");
}

Outcome criterion_3_two_child_ceiling() {
  Rng gen(771177);
  double max_mu = 0.0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> w(3);
    double sum = 0.0;
    for (double& x : w) {
      x = gen.next_double();
      sum += x;
    }
    for (double& x : w) x /= sum;
    const ChildCountDist f(w);
    const double alpha = gen.next_double();  // [0, 1)
    const DerivedChildDist d = derive_child_dist(f, MarriageRatio(alpha));
    if (!(d.mu < 1.0)) return fail("mu=" + fmt(d.mu) + " at case " + std::to_string(i));
    max_mu = std::max(max_mu, d.mu);
    const double freq = survival_frequency(f, MarriageRatio(alpha), 1000,
                                           SimulationCaps{500, 1'000'000},
                                           900000 + static_cast<std::uint64_t>(i), 4);
    if (freq != 0.0) return fail("survival " + fmt(freq) + " at case " + std::to_string(i));
  }
  return pass("1000 cases, all mu<1 (max " + fmt(max_mu) + "), all survival 0");
}

Outcome criterion_4_compliance_rejection() {
  std::vector<ChildCountDist> actuals;
  const double tails[] = {0.01, 0.1, 0.3, 0.6, 0.9};
  const double heads[][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  for (double t : tails) {
    for (const auto& h : heads) {
      const double head_sum = h[0] + h[1] + h[2];
      actuals.push_back(ChildCountDist{{(1 - t) * h[0] / head_sum, (1 - t) * h[1] / head_sum,
                                        (1 - t) * h[2] / head_sum, t}});
    }
  }
  std::vector<ChildCountDist> policies;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; i + j <= 10; ++j) {
      policies.push_back(ChildCountDist{{i / 10.0, j / 10.0, (10 - i - j) / 10.0}});
    }
  }
  int pairs = 0;
  for (const ChildCountDist& actual : actuals) {
    for (const ChildCountDist& policy : policies) {
      ++pairs;
      if (check_compliance(actual, policy)) {
        return fail("accepted a 3+-child actual against a <=2-child policy");
      }
    }
  }
  if (pairs < 1000) return fail("only " + std::to_string(pairs) + " pairs");
  return pass(std::to_string(pairs) + " pairs all rejected");
}

Outcome criterion_5_one_child_fragmentation() {
  const fs::path out = g_tmp / "c5";
  for (int seed = 1; seed <= 100; ++seed) {
    const CmdResult r = run_cli("simulate evolve --policy 1C --n 200 --alpha 0.9"
                                " --generations 1 --seed " + std::to_string(seed) +
                                " --out " + out.string() + " --json");
    if (r.exit_code != 0) return fail("exit code " + std::to_string(r.exit_code));
    const json j = json::parse(r.out);
    const json& gen = j["generations"][0];
    if (gen["node_count"].get<std::uint64_t>() != 90) {
      return fail("seed " + std::to_string(seed) + ": " +
                  std::to_string(gen["node_count"].get<std::uint64_t>()) + " offspring");
    }
    if (gen["sibling_edge_count"].get<std::uint64_t>() != 0) {
      return fail("seed " + std::to_string(seed) + ": sibling edges present");
    }
    if (gen["largest_component_size"].get<std::uint64_t>() > 2) {
      return fail("seed " + std::to_string(seed) + ": component above size 2");
    }
  }
  return pass("100 seeds: 90 offspring, 0 sibling edges, components <= 2");
}

Outcome criterion_6_population_equivalence() {
  const int seeds = 1000;
  auto offspring_stats = [&](const char* policy_name, std::uint64_t stream) {
    const ChildCountDist policy = builtin_policy(policy_name);
    double sum = 0.0;
    double sumsq = 0.0;
    bool all_90 = true;
    for (int s = 0; s < seeds; ++s) {
      Rng rng = Rng::for_run(stream, static_cast<std::uint64_t>(s));
      const Population parents = make_seed_generation(200, MarriageRatio(0.9), rng);
      const Population next = evolve_generation(parents, policy, MarriageRatio(0.9), rng);
      const auto n = static_cast<double>(next.size());
      all_90 = all_90 && next.size() == 90;
      sum += n;
      sumsq += n * n;
    }
    const double mean = sum / seeds;
    const double var = sumsq / seeds - mean * mean;
    return std::tuple<double, double, bool>(mean, std::sqrt(var / seeds), all_90);
  };
  const auto [mean_1c, se_1c, deterministic_90] = offspring_stats("1C", 601);
  const auto [mean_02c, se_02c, unused_02] = offspring_stats("0/2C", 602);
  const auto [mean_03c, se_03c, unused_03] = offspring_stats("0/3C", 603);
  if (!deterministic_90 || mean_1c != 90.0) return fail("1C mean=" + fmt(mean_1c));
  if (std::abs(mean_02c - mean_1c) > 3.0 * se_02c) {
    return fail("0/2C mean=" + fmt(mean_02c) + " se=" + fmt(se_02c));
  }
  if (std::abs(mean_03c - 180.0) > 3.0 * se_03c) {
    return fail("0/3C mean=" + fmt(mean_03c) + " se=" + fmt(se_03c));
  }
  return pass("1C=90 exact, 0/2C mean=" + fmt(mean_02c) + ", 0/3C mean=" + fmt(mean_03c));
}

Outcome criterion_7_china_india_contrast() {
  int india_wins = 0;
  const int pairs = 200;
  for (int i = 0; i < pairs; ++i) {
    // paired seeds: both countries consume an identical stream
    Rng rng_china = Rng::for_run(4711, static_cast<std::uint64_t>(i));
    Rng rng_india = Rng::for_run(4711, static_cast<std::uint64_t>(i));
    const Population china =
        sample_population(china_distribution().dist, MarriageRatio(0.92), 150, rng_china);
    const Population india =
        sample_population(india_distribution().dist, MarriageRatio(0.92), 150, rng_india);
    const double frac_china = compute_metrics(build_network(china)).largest_component_fraction;
    const double frac_india = compute_metrics(build_network(india)).largest_component_fraction;
    if (frac_india > frac_china) ++india_wins;
  }
  if (india_wins < 190) return fail(std::to_string(india_wins) + "/200 india wins");
  return pass(std::to_string(india_wins) + "/200 pairs with larger india giant component");
}

Outcome criterion_8_extinction_consistency() {
  const ChildCountDist f = builtin_policy("0/3C");
  const double q = extinction_probability(derive_child_dist(f, MarriageRatio(0.9)));
  const EnsembleSummary ens = run_strong_ties_ensemble(f, MarriageRatio(0.9), 100000,
                                                       SimulationCaps{500, 10000}, 20260808, 4);
  const double extinct_freq = 1.0 - ens.survival_frequency();
  const double predicted = q * q;
  if (std::abs(extinct_freq - predicted) > 0.01) {
    return fail("empirical=" + fmt(extinct_freq) + " q*^2=" + fmt(predicted));
  }
  return pass("empirical=" + fmt(extinct_freq) + " vs q*^2=" + fmt(predicted));
}

Outcome criterion_9_component_oracle() {
  Rng rng(4040091);
  for (int i = 0; i < 1000; ++i) {
    const StrongTiesNetwork net = build_network(testsupport::random_population(rng, 50));
    if (connected_components(net) != testsupport::bfs_components(net)) {
      return fail("labeling mismatch at network " + std::to_string(i));
    }
  }
  return pass("1000 random networks, union-find == reachability");
}

Outcome criterion_10_determinism() {
  // analyze: identical stdout
  const std::string analyze_args = "analyze --policy 0/3C --alpha 0.9 --seed 11 --json";
  if (run_cli(analyze_args).out != run_cli(analyze_args).out) return fail("analyze stdout");

  // simulate: identical artifacts when rerun into the same directory
  const fs::path out = g_tmp / "c10";
  const std::string evolve_args = "simulate evolve --policy 0/3C --n 200 --alpha 0.9"
                                  " --generations 2 --seed 12 --format dot --out " +
                                  out.string() + " --json";
  const CmdResult first = run_cli(evolve_args);
  if (first.exit_code != 0) return fail("evolve exit " + std::to_string(first.exit_code));
  const std::string metrics_1 = slurp(out / "metrics.json");
  const std::string gen1_1 = slurp(out / "gen1.dot");
  fs::remove_all(out);
  const CmdResult second = run_cli(evolve_args);
  if (first.out != second.out) return fail("evolve stdout differs");
  if (metrics_1 != slurp(out / "metrics.json")) return fail("metrics.json differs");
  if (gen1_1 != slurp(out / "gen1.dot")) return fail("gen1.dot differs");
  if (gen1_1.empty()) return fail("gen1.dot missing");

  // sample: identical artifacts
  const fs::path sout = g_tmp / "c10s";
  const std::string sample_args = "simulate sample --dist china --n 157 --alpha 0.92 --seed 7"
                                  " --out " + sout.string() + " --json";
  const std::string sample_1 = run_cli(sample_args).out;
  const std::string csv_1 = slurp(sout / "gen0.csv");
  fs::remove_all(sout);
  if (sample_1 != run_cli(sample_args).out) return fail("sample stdout differs");
  if (csv_1 != slurp(sout / "gen0.csv")) return fail("gen0.csv differs");

  // gw: identical report regardless of the thread count
  const std::string gw_base =
      "gw --policy 0/3C --alpha 0.9 --runs 20000 --max-nodes 10000 --seed 5 --json";
  const std::string gw_1 = run_cli(gw_base + " --threads 1").out;
  const std::string gw_4 = run_cli(gw_base + " --threads 4").out;
  if (gw_1 != gw_4) return fail("gw output depends on thread count");
  if (gw_1.empty()) return fail("gw produced no output");
  return pass("analyze/simulate/sample byte-identical; gw identical across 1 vs 4 threads");
}

// extra coverage for the exit-code contract, outside the numbered criteria
Outcome supplemental_exit_codes() {
  const CmdResult bad = run_cli("analyze --dist 0.5,0.6 --alpha 0.9");
  if (bad.exit_code != 2) return fail("invalid dist gave exit " + std::to_string(bad.exit_code));
  if (bad.err.find("sum") == std::string::npos) return fail("diagnostic does not name the invariant");
  const CmdResult died = run_cli("simulate evolve --policy 2C --n 200 --alpha 0 --out " +
                                 (g_tmp / "sup").string());
  if (died.exit_code != 3) return fail("dead population gave exit " + std::to_string(died.exit_code));
  const CmdResult unknown = run_cli("analyze --policy 9C --alpha 0.5");
  if (unknown.exit_code != 2) return fail("unknown policy gave exit " + std::to_string(unknown.exit_code));
  return pass("exit 2 with diagnostic on invalid input, exit 3 on died population");
}

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_tests <path-to-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  g_tmp = fs::temp_directory_path() /
          ("strongties-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(g_tmp);

  const std::vector<Criterion> criteria{
      {"analyze 0/3C alpha=0.9: mu=1.2, supercritical", 1.0, criterion_1_mu_03c},
      {"analyze C++ alpha=0.92: mu=1.012, ratio=0.966", 1.0, criterion_2_mu_cpp},
      {"support<=2 distributions: mu<1 and zero survival", 60.0, criterion_3_two_child_ceiling},
      {"compliance rejects 3+-child actuals under <=2-child policies", 1.0,
       criterion_4_compliance_rejection},
      {"1C evolve: 90 offspring, no sibling edges, pairs only (100 seeds)", 5.0,
       criterion_5_one_child_fragmentation},
      {"policy pairs: 0/2C matches 1C at 90, 0/3C at 180", 30.0,
       criterion_6_population_equivalence},
      {"india giant component beats china in >=95% of paired runs", 60.0,
       criterion_7_china_india_contrast},
      {"strong-ties extinction frequency matches q*^2 (1e5 runs)", 120.0,
       criterion_8_extinction_consistency},
      {"union-find equals brute-force reachability (1000 networks)", 10.0,
       criterion_9_component_oracle},
      {"byte-identical replay, thread-count independent", 60.0, criterion_10_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed <= criteria[i].budget_seconds;
    const bool ok = outcome.pass && in_budget;
    failures += !ok;
    std::ostringstream line;
    line << "[" << (i + 1 < 10 ? " " : "") << i + 1 << "] " << (ok ? "PASS" : "FAIL") << "  "
         << criteria[i].name << " — " << outcome.detail;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " [" << elapsed << "s/" << criteria[i].budget_seconds << "s]";
    std::cout << line.str() << "\n";
  }

  {
    Outcome outcome;
    try {
      outcome = supplemental_exit_codes();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    failures += !outcome.pass;
    std::cout << "[S1] " << (outcome.pass ? "PASS" : "FAIL")
              << "  cli exit-code contract — " << outcome.detail << "\n";
  }

  fs::remove_all(g_tmp);
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
