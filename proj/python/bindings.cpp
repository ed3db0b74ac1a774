#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strongties/branching.hpp"
#include "strongties/config.hpp"
#include "strongties/experiment.hpp"
#include "strongties/graph.hpp"
#include "strongties/netgen.hpp"
#include "strongties/policy.hpp"
#include "strongties/version.hpp"

namespace py = pybind11;
using namespace strongties;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Strong-ties social network policy toolkit";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<Error>(m, "Error");

  // ---- policy
  py::class_<ChildCountDist>(m, "ChildCountDist")
      .def(py::init<std::vector<double>>(), py::arg("weights"))
      .def_property_readonly("weights", &ChildCountDist::weights)
      .def_property_readonly("max_children", &ChildCountDist::max_children)
      .def("weight", &ChildCountDist::weight, py::arg("i"))
      .def("__len__", [](const ChildCountDist& d) { return d.weights().size(); })
      .def("__repr__", [](const ChildCountDist& d) {
        std::string out = "ChildCountDist([";
        for (std::size_t i = 0; i < d.weights().size(); ++i) {
          if (i > 0) out += ", ";
          out += format_double(d.weights()[i]);
        }
        return out + "])";
      });

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("for_run", &Rng::for_run, py::arg("seed"), py::arg("run_index"))
      .def("next_u64", &Rng::next_u64)
      .def("next_double", &Rng::next_double)
      .def("next_below", &Rng::next_below, py::arg("bound"))
      .def("next_bool", &Rng::next_bool);

  m.def("validate_dist", &validate_dist, py::arg("weights"));
  m.def("builtin_policy", &builtin_policy, py::arg("name"));
  m.def("check_compliance", &check_compliance, py::arg("actual"), py::arg("policy"));
  m.def("sample_quota", &sample_quota, py::arg("policy"), py::arg("rng"));
  m.def("mean_children", &mean_children, py::arg("dist"));
  m.def(
      "expected_population_ratio",
      [](const ChildCountDist& policy, double alpha) {
        return expected_population_ratio(policy, MarriageRatio(alpha));
      },
      py::arg("policy"), py::arg("alpha"));

  py::class_<FamilyDistribution>(m, "FamilyDistribution")
      .def_readonly("dist", &FamilyDistribution::dist)
      .def_property_readonly("alpha",
                             [](const FamilyDistribution& fd) { return fd.alpha.value(); });
  m.def("builtin_distribution", &builtin_distribution, py::arg("name"));

  // ---- branching
  py::class_<DerivedChildDist>(m, "DerivedChildDist")
      .def_readonly("a", &DerivedChildDist::a)
      .def_readonly("mu", &DerivedChildDist::mu)
      .def_readonly("residual_folded", &DerivedChildDist::residual_folded);

  py::enum_<CriticalityClass>(m, "CriticalityClass")
      .value("Subcritical", CriticalityClass::Subcritical)
      .value("Critical", CriticalityClass::Critical)
      .value("Supercritical", CriticalityClass::Supercritical);

  py::class_<Criticality>(m, "Criticality")
      .def_readonly("cls", &Criticality::cls)
      .def_readonly("mu", &Criticality::mu)
      .def_readonly("degenerate_chain", &Criticality::degenerate_chain);

  py::class_<SimulationCaps>(m, "SimulationCaps")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("max_levels") = 500,
           py::arg("max_nodes") = 1'000'000)
      .def_readwrite("max_levels", &SimulationCaps::max_levels)
      .def_readwrite("max_nodes", &SimulationCaps::max_nodes);

  py::class_<BranchingOutcome>(m, "BranchingOutcome")
      .def_readonly("z", &BranchingOutcome::z)
      .def_readonly("extinct", &BranchingOutcome::extinct)
      .def_readonly("truncated", &BranchingOutcome::truncated)
      .def_readonly("total_nodes", &BranchingOutcome::total_nodes);

  py::class_<EnsembleSummary>(m, "EnsembleSummary")
      .def_readonly("runs", &EnsembleSummary::runs)
      .def_readonly("survived", &EnsembleSummary::survived)
      .def_readonly("z_sum", &EnsembleSummary::z_sum)
      .def("survival_frequency", &EnsembleSummary::survival_frequency)
      .def("mean_z", &EnsembleSummary::mean_z);

  m.def(
      "derive_child_dist",
      [](const ChildCountDist& f, double alpha) {
        return derive_child_dist(f, MarriageRatio(alpha));
      },
      py::arg("f"), py::arg("alpha"));
  m.def(
      "mu_closed_form",
      [](const ChildCountDist& f, double alpha) { return mu_closed_form(f, MarriageRatio(alpha)); },
      py::arg("f"), py::arg("alpha"));
  m.def("as_child_dist", &as_child_dist, py::arg("dist"));
  m.def("classify", &classify, py::arg("dist"));
  m.def("extinction_probability", &extinction_probability, py::arg("dist"));
  m.def("simulate_gw", &simulate_gw, py::arg("dist"), py::arg("rng"),
        py::arg("caps") = SimulationCaps{});
  m.def(
      "simulate_strong_ties_tree",
      [](const ChildCountDist& f, double alpha, Rng& rng, SimulationCaps caps) {
        return simulate_strong_ties_tree(f, MarriageRatio(alpha), rng, caps);
      },
      py::arg("f"), py::arg("alpha"), py::arg("rng"), py::arg("caps") = SimulationCaps{});
  m.def("run_gw_ensemble", &run_gw_ensemble, py::arg("dist"), py::arg("runs"),
        py::arg("caps") = SimulationCaps{}, py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "run_strong_ties_ensemble",
      [](const ChildCountDist& f, double alpha, std::uint64_t runs, SimulationCaps caps,
         std::uint64_t seed, unsigned threads) {
        return run_strong_ties_ensemble(f, MarriageRatio(alpha), runs, caps, seed, threads);
      },
      py::arg("f"), py::arg("alpha"), py::arg("runs"), py::arg("caps") = SimulationCaps{},
      py::arg("seed") = 0, py::arg("threads") = 1);
  m.def(
      "survival_frequency",
      [](const ChildCountDist& f, double alpha, std::uint64_t runs, SimulationCaps caps,
         std::uint64_t seed, unsigned threads) {
        return survival_frequency(f, MarriageRatio(alpha), runs, caps, seed, threads);
      },
      py::arg("f"), py::arg("alpha"), py::arg("runs"), py::arg("caps") = SimulationCaps{},
      py::arg("seed") = 0, py::arg("threads") = 1);

  // ---- netgen
  py::enum_<Sex>(m, "Sex").value("male", Sex::male).value("female", Sex::female);

  py::class_<Person>(m, "Person")
      .def_readonly("id", &Person::id)
      .def_readonly("sex", &Person::sex)
      .def_readonly("family_id", &Person::family_id)
      .def_readonly("generation", &Person::generation)
      .def_readonly("spouse_id", &Person::spouse_id);

  py::class_<Population>(m, "Population")
      .def_readonly("persons", &Population::persons)
      .def_readonly("generation_index", &Population::generation_index)
      .def_readonly("alpha_realized", &Population::alpha_realized)
      .def("__len__", &Population::size);

  m.def("married_couples", &married_couples, py::arg("pop"));
  m.def(
      "sample_population",
      [](const ChildCountDist& f, double alpha, std::int64_t target_n, Rng& rng) {
        return sample_population(f, MarriageRatio(alpha), target_n, rng);
      },
      py::arg("f"), py::arg("alpha"), py::arg("target_n"), py::arg("rng"));
  m.def(
      "evolve_generation",
      [](const Population& parents, const ChildCountDist& policy, double alpha_next, Rng& rng,
         double utilization) {
        return evolve_generation(parents, policy, MarriageRatio(alpha_next), rng, utilization);
      },
      py::arg("parents"), py::arg("policy"), py::arg("alpha_next"), py::arg("rng"),
      py::arg("utilization") = 1.0);
  m.def(
      "make_seed_generation",
      [](std::int64_t n, double alpha, Rng& rng) {
        return make_seed_generation(n, MarriageRatio(alpha), rng);
      },
      py::arg("n"), py::arg("alpha"), py::arg("rng"));

  // ---- graph
  py::enum_<EdgeKind>(m, "EdgeKind")
      .value("sibling", EdgeKind::sibling)
      .value("marital", EdgeKind::marital);

  py::class_<NetworkNode>(m, "NetworkNode")
      .def_readonly("id", &NetworkNode::id)
      .def_readonly("sex", &NetworkNode::sex)
      .def_readonly("family_id", &NetworkNode::family_id);

  py::class_<NetworkEdge>(m, "NetworkEdge")
      .def_readonly("u", &NetworkEdge::u)
      .def_readonly("v", &NetworkEdge::v)
      .def_readonly("kind", &NetworkEdge::kind);

  py::class_<StrongTiesNetwork>(m, "StrongTiesNetwork")
      .def_readonly("nodes", &StrongTiesNetwork::nodes)
      .def_readonly("edges", &StrongTiesNetwork::edges)
      .def_property_readonly("node_count", &StrongTiesNetwork::node_count);

  py::class_<Metrics>(m, "Metrics")
      .def_readonly("node_count", &Metrics::node_count)
      .def_readonly("sibling_edge_count", &Metrics::sibling_edge_count)
      .def_readonly("marital_edge_count", &Metrics::marital_edge_count)
      .def_readonly("component_count", &Metrics::component_count)
      .def_readonly("largest_component_size", &Metrics::largest_component_size)
      .def_readonly("largest_component_fraction", &Metrics::largest_component_fraction)
      .def_readonly("singleton_count", &Metrics::singleton_count)
      .def_readonly("component_size_histogram", &Metrics::component_size_histogram);

  m.def("build_network", &build_network, py::arg("pop"));
  m.def("connected_components", &connected_components, py::arg("net"));
  m.def("compute_metrics", &compute_metrics, py::arg("net"));
  m.def(
      "export_network",
      [](const StrongTiesNetwork& net, const std::string& format) {
        return export_network(net, parse_graph_format(format));
      },
      py::arg("net"), py::arg("format"));
  m.def("import_edge_csv", &import_edge_csv, py::arg("text"));

  // ---- experiment
  py::class_<GenerationResult>(m, "GenerationResult")
      .def_readonly("population", &GenerationResult::population)
      .def_readonly("network", &GenerationResult::network)
      .def_readonly("metrics", &GenerationResult::metrics);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("generations", &ExperimentResult::generations)
      .def_readonly("died_at", &ExperimentResult::died_at)
      .def("died", &ExperimentResult::died);

  m.def(
      "run_policy_experiment",
      [](std::int64_t initial_n, const ChildCountDist& policy, double alpha,
         std::int32_t generations, Rng& rng, double utilization) {
        return run_policy_experiment(initial_n, policy, MarriageRatio(alpha), generations, rng,
                                     utilization);
      },
      py::arg("initial_n"), py::arg("policy"), py::arg("alpha"), py::arg("generations"),
      py::arg("rng"), py::arg("utilization") = 1.0);
}
