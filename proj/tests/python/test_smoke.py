"""Smoke tests for the python bindings against the staged build tree."""

import math

import pytest

import strongties as st


def test_version():
    assert st.__version__


def test_builtin_policy_analytics():
    f = st.builtin_policy("0/3C")
    assert f.weights == pytest.approx([1 / 3, 0.0, 0.0, 2 / 3])
    d = st.derive_child_dist(f, 0.9)
    assert d.mu == pytest.approx(1.2, abs=1e-12)
    assert st.mu_closed_form(f, 0.9) == pytest.approx(1.2, abs=1e-12)
    crit = st.classify(d)
    assert crit.cls == st.CriticalityClass.Supercritical
    q = st.extinction_probability(d)
    assert q == pytest.approx(17 / 27, abs=1e-9)


def test_cpp_policy_population_ratio():
    cpp = st.builtin_policy("C++")
    assert st.expected_population_ratio(cpp, 0.92) == pytest.approx(0.966, abs=1e-12)
    assert st.derive_child_dist(cpp, 0.92).mu == pytest.approx(1.012, abs=1e-12)


def test_compliance():
    p03 = st.builtin_policy("0/3C")
    assert st.check_compliance(p03, p03)
    assert not st.check_compliance(
        st.validate_dist([0.0, 0.0, 0.0, 1.0]), st.builtin_policy("2C")
    )


def test_invalid_dist_raises():
    with pytest.raises(st.Error):
        st.validate_dist([0.5, 0.6])


def test_evolution_is_deterministic():
    def run():
        rng = st.Rng(99)
        parents = st.make_seed_generation(200, 0.9, rng)
        return st.evolve_generation(parents, st.builtin_policy("0/3C"), 0.9, rng)

    a, b = run(), run()
    assert len(a) == len(b)
    assert [p.id for p in a.persons] == [p.id for p in b.persons]
    assert [p.family_id for p in a.persons] == [p.family_id for p in b.persons]


def test_one_child_experiment_fragments():
    rng = st.Rng(1)
    result = st.run_policy_experiment(200, st.builtin_policy("1C"), 0.9, 1, rng)
    assert not result.died()
    metrics = result.generations[0].metrics
    assert metrics.node_count == 90
    assert metrics.sibling_edge_count == 0
    assert metrics.largest_component_size <= 2


def test_network_export():
    rng = st.Rng(7)
    pop = st.sample_population(st.builtin_distribution("china").dist, 0.92, 60, rng)
    net = st.build_network(pop)
    dot = st.export_network(net, "dot")
    assert "color=blue" in dot or "color=red" in dot
    csv = st.export_network(net, "edge-csv")
    back = st.import_edge_csv(csv)
    assert len(back.edges) == len(net.edges)


def test_survival_frequency_subcritical():
    freq = st.survival_frequency(
        st.builtin_policy("2C"), 0.9, 500, st.SimulationCaps(), seed=3, threads=2
    )
    assert freq == 0.0


def test_mean_z_matches_mu():
    ens = st.run_strong_ties_ensemble(
        st.builtin_policy("0/3C"), 0.9, 4000, st.SimulationCaps(500, 5000), seed=11
    )
    mean_z = ens.mean_z()
    assert mean_z[0] == 1.0
    assert math.isclose(mean_z[1], 2.4, abs_tol=0.1)
