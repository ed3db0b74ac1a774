#pragma once

#include <cstdint>
#include <vector>

#include "strongties/policy.hpp"
#include "strongties/rng.hpp"

namespace strongties {

// Offspring distribution of a non-root couple node in the strong-ties tree:
// a node has j tree children when the newly joined spouse comes from a
// family of k >= j+1 children of which exactly j of the other k-1 siblings
// are married. The defining sums cover only families with k >= 1 children
// and therefore leave mass equal to the childless-family fraction
// unassigned; that residual is folded into a[0] so `a` is a proper
// distribution, which leaves the mean untouched.
struct DerivedChildDist {
  std::vector<double> a;
  double mu = 0.0;
  double residual_folded = 0.0;
};

DerivedChildDist derive_child_dist(const ChildCountDist& f, MarriageRatio alpha);

// Same mean through the binomial identity: alpha * (mean_children(f) - 1 + f0).
// Agrees with derive_child_dist(...).mu to within 1e-12.
double mu_closed_form(const ChildCountDist& f, MarriageRatio alpha);

// Wraps a raw offspring vector (already a child distribution, no spouse
// derivation) so the classification and simulation entry points below can
// run on it directly.
DerivedChildDist as_child_dist(const ChildCountDist& dist);

enum class CriticalityClass { Subcritical, Critical, Supercritical };

struct Criticality {
  CriticalityClass cls;
  double mu = 0.0;
  // The deterministic chain P[xi = 1] = 1: mean exactly 1 but the process
  // neither dies nor explodes. The critical-case extinction statement
  // excludes it, so it is reported as supercritical with this flag set.
  bool degenerate_chain = false;
};

// Subcritical if mu < 1, Critical if |mu - 1| <= 1e-12 (and not the
// degenerate chain), Supercritical if mu > 1.
Criticality classify(const DerivedChildDist& dist);

const char* to_string(CriticalityClass cls);

// Smallest fixed point in [0,1] of the generating function sum a_j s^j,
// found by iterating from s = 0 (monotone convergence) with absolute
// tolerance 1e-10 and a cap of 10^6 iterations. Returns exactly 1 for
// subcritical and critical inputs. Throws NoConvergenceError at the cap.
double extinction_probability(const DerivedChildDist& dist);

struct SimulationCaps {
  std::uint64_t max_levels = 500;
  std::uint64_t max_nodes = 1'000'000;
};

// One realized branching trajectory. z[t] is the node count at level t,
// z[0] = 1. `extinct` and `truncated` (a cap was hit first) are mutually
// exclusive.
struct BranchingOutcome {
  std::vector<std::uint64_t> z;
  bool extinct = false;
  bool truncated = false;
  std::uint64_t total_nodes = 0;
};

// Plain branching run: every node, the root included, draws its child
// count i.i.d. from `dist`.
BranchingOutcome simulate_gw(const DerivedChildDist& dist, Rng& rng, SimulationCaps caps);

// Strong-ties variant: the root couple draws twice (both spouses
// contribute married siblings) and every other node draws once from the
// distribution derived from (f, alpha).
BranchingOutcome simulate_strong_ties_tree(const ChildCountDist& f, MarriageRatio alpha,
                                           Rng& rng, SimulationCaps caps);

// Ensemble accumulators are integers so that merging per-run results is
// order-independent and the summary is identical for any thread count.
struct EnsembleSummary {
  std::uint64_t runs = 0;
  std::uint64_t survived = 0;            // hit a cap without going extinct
  std::vector<std::uint64_t> z_sum;      // per-level node-count sums over runs

  double survival_frequency() const;
  std::vector<double> mean_z() const;
};

EnsembleSummary run_gw_ensemble(const DerivedChildDist& dist, std::uint64_t runs,
                                SimulationCaps caps, std::uint64_t seed, unsigned threads = 1);

EnsembleSummary run_strong_ties_ensemble(const ChildCountDist& f, MarriageRatio alpha,
                                         std::uint64_t runs, SimulationCaps caps,
                                         std::uint64_t seed, unsigned threads = 1);

// Fraction of strong-ties runs that hit a cap without extinction; the
// desk-scale stand-in for the emergence of an unbounded component.
double survival_frequency(const ChildCountDist& f, MarriageRatio alpha, std::uint64_t runs,
                          SimulationCaps caps, std::uint64_t seed, unsigned threads = 1);

}  // namespace strongties
