#include "strongties/branching.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace strongties {

namespace {

// C(n, j) * p^j * (1-p)^(n-j). Term-wise product keeps the extremes
// p in {0, 1} exact (pow(0, 0) == 1).
double binomial_term(int n, int j, double p) {
  double coeff = 1.0;
  for (int i = 0; i < j; ++i) coeff = coeff * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return coeff * std::pow(p, j) * std::pow(1.0 - p, n - j);
}

struct ChildSampler {
  std::vector<double> cdf;

  explicit ChildSampler(const std::vector<double>& a) : cdf(a.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      acc += a[i];
      cdf[i] = acc;
    }
    if (!cdf.empty()) cdf.back() = std::max(cdf.back(), 1.0);
  }

  std::uint64_t draw(Rng& rng) const {
    const double u = rng.next_double();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<std::uint64_t>(it - cdf.begin());
  }
};

void check_caps(SimulationCaps caps) {
  if (caps.max_levels < 1 || caps.max_nodes < 1) {
    throw Error("simulation caps must be >= 1");
  }
}

BranchingOutcome simulate_tree(const ChildSampler& sampler, Rng& rng, SimulationCaps caps,
                               int root_draws) {
  BranchingOutcome out;
  out.z.push_back(1);
  out.total_nodes = 1;
  std::uint64_t level = 0;
  std::uint64_t current = 1;
  while (true) {
    std::uint64_t next = 0;
    if (level == 0) {
      for (int d = 0; d < root_draws; ++d) next += sampler.draw(rng);
    } else {
      for (std::uint64_t i = 0; i < current; ++i) next += sampler.draw(rng);
    }
    ++level;
    out.z.push_back(next);
    out.total_nodes += next;
    if (next == 0) {
      out.extinct = true;
      break;
    }
    if (level >= caps.max_levels || out.total_nodes > caps.max_nodes) {
      out.truncated = true;
      break;
    }
    current = next;
  }
  return out;
}

EnsembleSummary run_ensemble(const ChildSampler& sampler, int root_draws, std::uint64_t runs,
                             SimulationCaps caps, std::uint64_t seed, unsigned threads) {
  check_caps(caps);
  if (runs < 1) throw Error("run count must be >= 1");
  if (threads < 1) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, runs));

  auto work = [&](std::uint64_t lo, std::uint64_t hi, EnsembleSummary& acc) {
    for (std::uint64_t r = lo; r < hi; ++r) {
      Rng rng = Rng::for_run(seed, r);
      const BranchingOutcome out = simulate_tree(sampler, rng, caps, root_draws);
      if (!out.extinct) ++acc.survived;
      if (acc.z_sum.size() < out.z.size()) acc.z_sum.resize(out.z.size(), 0);
      for (std::size_t i = 0; i < out.z.size(); ++i) acc.z_sum[i] += out.z[i];
    }
  };

  EnsembleSummary total;
  total.runs = runs;
  if (threads == 1) {
    work(0, runs, total);
    return total;
  }

  std::vector<EnsembleSummary> parts(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = (runs + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = std::min<std::uint64_t>(static_cast<std::uint64_t>(t) * chunk, runs);
    const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, runs);
    pool.emplace_back(work, lo, hi, std::ref(parts[t]));
  }
  for (auto& th : pool) th.join();

  // Integer accumulators, so the merge order cannot change the result.
  for (const auto& part : parts) {
    total.survived += part.survived;
    if (total.z_sum.size() < part.z_sum.size()) total.z_sum.resize(part.z_sum.size(), 0);
    for (std::size_t i = 0; i < part.z_sum.size(); ++i) total.z_sum[i] += part.z_sum[i];
  }
  return total;
}

}  // namespace

DerivedChildDist derive_child_dist(const ChildCountDist& f, MarriageRatio alpha) {
  const auto& w = f.weights();
  const std::size_t len = w.size() > 1 ? w.size() - 1 : 1;
  std::vector<double> a(len, 0.0);
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (w[k] == 0.0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      a[j] += w[k] * binomial_term(static_cast<int>(k) - 1, static_cast<int>(j), alpha.value());
    }
  }
  double mass = 0.0;
  double mu = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    mass += a[j];
    mu += static_cast<double>(j) * a[j];
  }
  const double residual = std::max(0.0, 1.0 - mass);
  a[0] += residual;
  return DerivedChildDist{std::move(a), mu, residual};
}

double mu_closed_form(const ChildCountDist& f, MarriageRatio alpha) {
  return alpha.value() * (mean_children(f) - 1.0 + f.weight(0));
}

DerivedChildDist as_child_dist(const ChildCountDist& dist) {
  double mu = 0.0;
  const auto& w = dist.weights();
  for (std::size_t j = 1; j < w.size(); ++j) mu += static_cast<double>(j) * w[j];
  return DerivedChildDist{w, mu, 0.0};
}

Criticality classify(const DerivedChildDist& dist) {
  constexpr double tol = 1e-12;
  const double a1 = dist.a.size() > 1 ? dist.a[1] : 0.0;
  if (std::abs(dist.mu - 1.0) <= tol) {
    if (a1 >= 1.0 - tol) return {CriticalityClass::Supercritical, dist.mu, true};
    return {CriticalityClass::Critical, dist.mu, false};
  }
  if (dist.mu < 1.0) return {CriticalityClass::Subcritical, dist.mu, false};
  return {CriticalityClass::Supercritical, dist.mu, false};
}

const char* to_string(CriticalityClass cls) {
  switch (cls) {
    case CriticalityClass::Subcritical: return "subcritical";
    case CriticalityClass::Critical: return "critical";
    case CriticalityClass::Supercritical: return "supercritical";
  }
  return "unknown";
}

double extinction_probability(const DerivedChildDist& dist) {
  const Criticality crit = classify(dist);
  if (crit.cls != CriticalityClass::Supercritical) return 1.0;
  double s = 0.0;
  for (int iteration = 0; iteration < 1'000'000; ++iteration) {
    double phi = 0.0;
    for (std::size_t j = dist.a.size(); j-- > 0;) phi = dist.a[j] + s * phi;
    if (std::abs(phi - s) <= 1e-10) return phi;
    s = phi;
  }
  throw NoConvergenceError("generating-function fixed point did not converge in 1e6 iterations");
}

BranchingOutcome simulate_gw(const DerivedChildDist& dist, Rng& rng, SimulationCaps caps) {
  check_caps(caps);
  return simulate_tree(ChildSampler(dist.a), rng, caps, 1);
}

BranchingOutcome simulate_strong_ties_tree(const ChildCountDist& f, MarriageRatio alpha,
                                           Rng& rng, SimulationCaps caps) {
  check_caps(caps);
  const DerivedChildDist derived = derive_child_dist(f, alpha);
  return simulate_tree(ChildSampler(derived.a), rng, caps, 2);
}

double EnsembleSummary::survival_frequency() const {
  return runs == 0 ? 0.0 : static_cast<double>(survived) / static_cast<double>(runs);
}

std::vector<double> EnsembleSummary::mean_z() const {
  std::vector<double> mean(z_sum.size());
  for (std::size_t i = 0; i < z_sum.size(); ++i) {
    mean[i] = runs == 0 ? 0.0 : static_cast<double>(z_sum[i]) / static_cast<double>(runs);
  }
  return mean;
}

EnsembleSummary run_gw_ensemble(const DerivedChildDist& dist, std::uint64_t runs,
                                SimulationCaps caps, std::uint64_t seed, unsigned threads) {
  return run_ensemble(ChildSampler(dist.a), 1, runs, caps, seed, threads);
}

EnsembleSummary run_strong_ties_ensemble(const ChildCountDist& f, MarriageRatio alpha,
                                         std::uint64_t runs, SimulationCaps caps,
                                         std::uint64_t seed, unsigned threads) {
  const DerivedChildDist derived = derive_child_dist(f, alpha);
  return run_ensemble(ChildSampler(derived.a), 2, runs, caps, seed, threads);
}

double survival_frequency(const ChildCountDist& f, MarriageRatio alpha, std::uint64_t runs,
                          SimulationCaps caps, std::uint64_t seed, unsigned threads) {
  return run_strong_ties_ensemble(f, alpha, runs, caps, seed, threads).survival_frequency();
}

}  // namespace strongties
