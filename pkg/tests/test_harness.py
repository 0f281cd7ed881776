"""Generators, campaigns, special-case correspondences, and the CLI."""

import json
import subprocess
import sys

import pytest

from hyperbernardi.campaign import (arborescence_duality, campaign_verify_all,
                                    check_conjectures, fuzz_conjectures,
                                    verify_noncrossing)
from hyperbernardi.docio import GraphFormatError, parse_graph, serialize_graph
from hyperbernardi.fixtures import (Fixture, load, noncrossing_setup,
                                    running_graph)
from hyperbernardi.generators import random_bipartite, random_ordinary
from hyperbernardi.graph import RibbonBipartiteGraph, bip


def test_random_bipartite_deterministic():
    a = random_bipartite(1, 3, 3, 8)
    b = random_bipartite(1, 3, 3, 8)
    assert serialize_graph(a) == serialize_graph(b)
    assert serialize_graph(a) != serialize_graph(random_bipartite(2, 3, 3, 8))


def test_random_instances_connected():
    for seed in range(1000):
        g = random_bipartite(seed, 4, 4, 10)
        assert len(g.edge_ids) <= 10
        assert len(g.emeralds) <= 4 and len(g.violets) <= 4
        # construction is connected by design; the constructor enforces it
    for seed in range(50):
        h = random_ordinary(seed, 6, 9)
        assert len(h.edges) <= 9 and len(h.nodes) <= 6


def test_degenerate_bounds():
    g = random_bipartite(0, 1, 1, 1)
    assert len(g.edge_ids) == 1
    with pytest.raises(ValueError):
        random_bipartite(0, 3, 3, 1)


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 2)])
def test_noncrossing_correspondence(m, n):
    rep = verify_noncrossing(m, n)
    assert rep["count_ok"] and rep["set_equal"] and rep["lexicographic"], rep


def test_noncrossing_setup_shape():
    g = noncrossing_setup(2, 3)
    assert len(g.emeralds) == 3 and len(g.violets) == 4
    assert g.base_node == "a0" and g.base_edge == "a0b3"


def test_arborescence_duality_examples(running_fixture, c4_fixture):
    rep = arborescence_duality(running_fixture.graph)
    assert rep["equal"] and rep["arborescences"] == 7
    # the cycle: both faces work, two trees each
    for r0 in (0, 1):
        rep = arborescence_duality(c4_fixture.graph, r0)
        assert rep["equal"] and rep["arborescences"] == 2


def test_arborescence_duality_tree_graph():
    g = RibbonBipartiteGraph(["e0"], ["v0", "v1"],
                             {"a": ("e0", "v0"), "b": ("e0", "v1")}, None,
                             base_node="v0", base_edge="a")
    rep = arborescence_duality(g)
    assert rep["equal"] and rep["arborescences"] == 1


def test_arborescence_duality_needs_plane():
    from hyperbernardi.fixtures import torus_k4
    with pytest.raises(ValueError, match="genus"):
        arborescence_duality(bip(torus_k4()))


def test_campaign_all_pass(knot_fixture):
    rep = campaign_verify_all(knot_fixture.graph)
    assert not rep.failed and not rep.flagged, rep.summary()
    h = next(c for c in rep.checks if c["name"] == "h-vector-equals-interior")
    assert h["h"] == [1, 3, 3]
    payload = rep.to_json()
    assert payload["input_hash"] and "tool_version" in payload


def test_campaign_all_pass_c4(c4_fixture):
    rep = campaign_verify_all(c4_fixture.graph)
    assert not rep.failed and not rep.flagged, rep.summary()
    scan = next(c for c in rep.checks
                if c["name"] == "ehrhart-lattice-scan-oracle")
    assert scan["dp"][:3] == [1, 4, 9]


def test_campaign_refuses_oversized():
    g = noncrossing_setup(3, 3)  # 16 edges
    with pytest.raises(ValueError, match="max-edges"):
        campaign_verify_all(g)


def test_conjectures_pass_for_graphs():
    for seed in range(10):
        h = random_ordinary(seed, 4, 6)
        rep = check_conjectures(bip(h))
        interior_check = next(c for c in rep.checks
                              if c["name"] == "conjecture-interior-cutV")
        # a theorem, not a conjecture, for subdivisions of graphs
        assert interior_check["status"] == "pass", seed


def test_fuzz_smoke_and_replay():
    rep1 = fuzz_conjectures(range(20), 4, 4, 9)
    rep2 = fuzz_conjectures(range(20), 4, 4, 9)
    assert not rep1.flagged
    assert json.dumps(rep1.checks) == json.dumps(rep2.checks)
    rep3 = fuzz_conjectures(range(5), 4, 4, 9, graphs_only=True)
    assert not rep3.flagged


def test_fixture_registry_enforces_provenance(running_fixture):
    with pytest.raises(ValueError, match="provenance"):
        Fixture(name="bad", provenance="derived", graph=running_fixture.graph,
                expected={"x": 1})
    with pytest.raises(ValueError, match="provenance"):
        Fixture(name="bad", provenance="rumor", graph=running_fixture.graph)
    assert load("running").name == "running"
    with pytest.raises(KeyError):
        load("nope")


# -- command line -----------------------------------------------------------


def run_cli(*argv, expect=0):
    proc = subprocess.run([sys.executable, "-m", "hyperbernardi.cli", *argv],
                          capture_output=True, text=True)
    assert proc.returncode == expect, (proc.returncode, proc.stdout, proc.stderr)
    return proc


@pytest.fixture(scope="module")
def graph_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "running.graph"
    path.write_text(serialize_graph(running_graph().graph))
    return str(path)


def test_cli_info(graph_file):
    proc = run_cli("info", "--graph", graph_file, "--json")
    payload = json.loads(proc.stdout)
    assert payload["edges"] == 9 and payload["spanning_trees"] == 50


def test_cli_interior(graph_file):
    proc = run_cli("interior", "--graph", graph_file)
    assert proc.stdout.strip() == "1 + 3*x + 3*x^2"
    proc = run_cli("exterior", "--graph", graph_file, "--json")
    assert json.loads(proc.stdout)["exterior"] == [1, 2, 3, 1]


def test_cli_hypertrees(graph_file):
    proc = run_cli("hypertrees", "--graph", graph_file, "--side", "E")
    assert len(proc.stdout.strip().splitlines()) == 7


def test_cli_bernardi_trace(graph_file):
    proc = run_cli("bernardi", "--graph", graph_file,
                   "--hypertree", "e0=0,e1=0,e2=0,e3=2",
                   "--variant", "htE-cutV", "--trace")
    assert "result tree:" in proc.stdout
    assert "removed" in proc.stdout and "kept" in proc.stdout


def test_cli_bernardi_bad_hypertree(graph_file):
    proc = run_cli("bernardi", "--graph", graph_file,
                   "--hypertree", "e0=9", "--variant", "htE-cutV", expect=2)
    assert "error:" in proc.stderr


def test_cli_jaeger(graph_file):
    proc = run_cli("jaeger", "--graph", graph_file, "--cut", "V", "--list")
    assert len(proc.stdout.strip().splitlines()) == 7
    proc = run_cli("jaeger", "--graph", graph_file, "--characterize")
    assert "agreement" in proc.stdout


def test_cli_polytope(graph_file):
    proc = run_cli("polytope", "--graph", graph_file, "--verify", "dissection",
                   "--json")
    assert json.loads(proc.stdout)["ok"] is True
    proc = run_cli("polytope", "--graph", graph_file, "--verify", "triangulation")
    # the all-counterclockwise setup happens to triangulate
    assert "pass" in proc.stdout
    run_cli("polytope", "--graph", graph_file, "--verify", "shelling")
    run_cli("polytope", "--graph", graph_file, "--verify", "kato", "--kmax", "8")


def test_cli_verify(graph_file):
    proc = run_cli("verify", "--graph", graph_file, "--json")
    payload = json.loads(proc.stdout)
    assert all(c["status"] in ("pass", "skipped") for c in payload["checks"])


def test_cli_fuzz():
    proc = run_cli("fuzz", "--instances", "6", "--seed", "3", "--json")
    payload = json.loads(proc.stdout)
    summary = payload["checks"][-1]
    assert summary["flagged"] == 0 and summary["instances"] == 6


def test_cli_jaeger_orders(graph_file):
    proc = run_cli("jaeger", "--graph", graph_file, "--orders", "--json")
    payload = json.loads(proc.stdout)
    entry = payload["orders"][0]
    assert set(entry) >= {"tree", "violet_edge_order", "emerald_edge_order",
                          "violet_class_order", "emerald_class_order",
                          "semi_passive_emerald_order"}
    assert len(entry["violet_edge_order"]) == 9


def test_exit_code_mapping():
    import argparse
    from hyperbernardi.campaign import FAIL, FLAG, PASS, CampaignReport
    from hyperbernardi.cli import (EXIT_CONJECTURE_FLAG, EXIT_PASS,
                                   EXIT_THEOREM_FAILURE, _report_exit)
    args = argparse.Namespace(json=True)
    ok = CampaignReport()
    ok.add("x", PASS)
    assert _report_exit(args, ok) == EXIT_PASS
    flagged = CampaignReport()
    flagged.add("x", FLAG)
    assert _report_exit(args, flagged) == EXIT_CONJECTURE_FLAG
    failed = CampaignReport()
    failed.add("x", FAIL)
    failed.add("y", FLAG)
    assert _report_exit(args, failed) == EXIT_THEOREM_FAILURE


def test_cli_fuzz_parallel_matches_serial():
    serial = json.loads(run_cli("fuzz", "--instances", "6", "--seed", "3",
                                "--json").stdout)
    parallel = json.loads(run_cli("fuzz", "--instances", "6", "--seed", "3",
                                  "--jobs", "2", "--json").stdout)
    assert serial["checks"] == parallel["checks"]


def test_cli_input_errors(tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("not a graph document\n")
    run_cli("info", "--graph", str(bad), expect=2)
    run_cli("info", "--graph", str(tmp_path / "missing.graph"), expect=2)
    big = tmp_path / "big.graph"
    big.write_text(serialize_graph(noncrossing_setup(3, 3)))
    run_cli("verify", "--graph", str(big), expect=2)


def test_corrupted_rotation_rejected(graph_file):
    text = open(graph_file).read()
    corrupted = text.replace("v0: e0v0 e3v0 e2v0", "v0: e0v0 e3v0 e3v0")
    assert corrupted != text
    with pytest.raises(GraphFormatError, match="permutation"):
        parse_graph(corrupted)
