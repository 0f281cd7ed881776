"""Hypertree feasibility, activities, and the two polynomials."""

import random
from fractions import Fraction
from itertools import product

import pytest

from hyperbernardi.docio import format_polynomial
from hyperbernardi.exactla import in_convex_hull
from hyperbernardi.fixtures import c4
from hyperbernardi.generators import random_bipartite, random_ordinary
from hyperbernardi.graph import EMERALD, VIOLET, RibbonBipartiteGraph, RibbonGraph, bip
from hyperbernardi.hypertree import (Poly, break_divisors, can_transfer,
                                     degree_vector, enumerate_hypertrees,
                                     exterior_polynomial, external_inactivity,
                                     interior_polynomial, internal_inactivity,
                                     is_hypertree, tutte_check,
                                     tutte_x_polynomial)


def doubled_edge():
    return RibbonGraph({"a": ("u", "w"), "b": ("u", "w")}, None, "u", "a")


def star_graph(k=4):
    edges = {f"s{i}": ("hub", f"v{i}") for i in range(k)}
    return RibbonBipartiteGraph(["hub"], [f"v{i}" for i in range(k)],
                                edges, None, "hub", "s0")


def test_degree_vector_c4(c4_fixture):
    g = c4_fixture.graph
    assert degree_vector(g, frozenset({"c1", "c2", "c4"}), EMERALD) == \
        {"e1": 1, "e2": 0}
    with pytest.raises(ValueError):
        degree_vector(g, frozenset({"c1", "c2", "c3", "c4"}), EMERALD)


def test_degree_vector_sums(running_fixture):
    g = running_fixture.graph
    for tree in g.spanning_trees():
        f = degree_vector(g, tree, EMERALD)
        assert sum(f.values()) == len(g.violets) - 1


def test_degree_vector_star():
    g = star_graph(5)
    f = degree_vector(g, frozenset(g.edge_ids), EMERALD)
    assert f == {"hub": 4}
    assert degree_vector(g, frozenset(g.edge_ids), VIOLET) == \
        {f"v{i}": 0 for i in range(5)}


def test_is_hypertree_running(running_fixture):
    g = running_fixture.graph
    assert is_hypertree(g, EMERALD, {"e0": 0, "e1": 0, "e2": 0, "e3": 2})
    assert not is_hypertree(g, EMERALD, {"e0": 2, "e1": 0, "e2": 0, "e3": 0})
    # sum constraint violated
    assert not is_hypertree(g, EMERALD, {"e0": 1, "e1": 1, "e2": 1, "e3": 0})
    with pytest.raises(ValueError):
        is_hypertree(g, EMERALD, {"e0": 2})


def test_is_hypertree_brute_force_agreement():
    for seed in range(25):
        g = random_bipartite(seed, 4, 4, 9)
        realized = {tuple(sorted(degree_vector(g, t, EMERALD).items()))
                    for t in g.spanning_trees()}
        max_deg = {x: g.degree(x) for x in g.emeralds}
        span = [range(max_deg[x]) for x in sorted(g.emeralds)]
        names = sorted(g.emeralds)
        for combo in product(*span):
            f = dict(zip(names, combo))
            want = tuple(sorted(f.items())) in realized
            assert is_hypertree(g, EMERALD, f) == want, (seed, f)


def test_enumerate_hypertrees(running_fixture, c4_fixture):
    g = running_fixture.graph
    assert len(enumerate_hypertrees(g, EMERALD)) == 7
    assert len(enumerate_hypertrees(g, VIOLET)) == 7
    assert enumerate_hypertrees(c4_fixture.graph, EMERALD) == \
        [{"e1": 0, "e2": 1}, {"e1": 1, "e2": 0}]


def test_enumerate_hypertrees_tree_graph():
    g = star_graph(3)
    assert enumerate_hypertrees(g, EMERALD) == [{"hub": 2}]


def test_can_transfer(process_fixture, c4_fixture):
    g = process_fixture.graph
    f = process_fixture.value("hypertree")
    # shifting one unit from the left to the top node stays a hypertree
    assert can_transfer(g, EMERALD, f, "L", "T")
    assert is_hypertree(g, EMERALD, process_fixture.value("receiving_transfer_possible"))
    assert not can_transfer(g, EMERALD, {"L": 0, "T": 1, "R": 2}, "L", "T")
    c = c4_fixture.graph
    assert can_transfer(c, EMERALD, {"e1": 0, "e2": 1}, "e2", "e1")
    with pytest.raises(ValueError):
        can_transfer(c, EMERALD, {"e1": 0, "e2": 1}, "e1", "e1")


def test_activities_process_example(process_fixture):
    g = process_fixture.graph
    f = process_fixture.value("hypertree")
    order = process_fixture.value("induced_order_on_E")
    count, inactive = internal_inactivity(g, EMERALD, f, order)
    assert count == 1 and inactive == frozenset({"R"})
    count, inactive = external_inactivity(g, EMERALD, f, order)
    assert count == 1 and inactive == frozenset({"T"})


def test_smallest_node_always_active():
    for seed in range(10):
        g = random_bipartite(seed, 3, 3, 8)
        order = sorted(g.emeralds)
        for f in enumerate_hypertrees(g, EMERALD):
            _, inactive_i = internal_inactivity(g, EMERALD, f, order)
            _, inactive_e = external_inactivity(g, EMERALD, f, order)
            assert order[0] not in inactive_i
            assert order[0] not in inactive_e


def test_interior_polynomial_values(running_fixture, c4_fixture,
                                    single_edge_fixture):
    g = running_fixture.graph
    assert interior_polynomial(g, EMERALD) == Poly((1, 3, 3))
    assert interior_polynomial(g, VIOLET) == Poly((1, 3, 3))
    assert interior_polynomial(c4_fixture.graph, EMERALD) == Poly((1, 1))
    assert interior_polynomial(single_edge_fixture.graph, EMERALD) == Poly((1,))
    assert interior_polynomial(star_graph(4), EMERALD) == Poly((1,))


def test_order_independence(running_fixture):
    g = running_fixture.graph
    base_i = interior_polynomial(g, EMERALD)
    base_x = exterior_polynomial(g, EMERALD)
    rng = random.Random(7)
    for _ in range(10):
        order = list(g.emeralds)
        rng.shuffle(order)
        assert interior_polynomial(g, EMERALD, order=order) == base_i
        assert exterior_polynomial(g, EMERALD, order=order) == base_x


def test_hypertree_class_size_invariants():
    for seed in range(15):
        g = random_bipartite(seed, 4, 4, 10)
        b_e = enumerate_hypertrees(g, EMERALD)
        b_v = enumerate_hypertrees(g, VIOLET)
        assert len(b_e) == len(b_v)
        poly = interior_polynomial(g, EMERALD, hypertrees=b_e)
        assert poly.coefficient_sum() == len(b_e)
        assert poly.coeffs[0] == 1
        assert poly.degree <= min(len(g.emeralds), len(g.violets)) - 1


def test_hypertrees_are_hull_lattice_points(running_fixture):
    graphs = [running_fixture.graph]
    graphs += [random_bipartite(seed, 4, 3, 8) for seed in (2, 5)]
    for g in graphs:
        b_e = enumerate_hypertrees(g, EMERALD)
        names = list(g.emeralds)
        pts = [tuple(Fraction(f[x]) for x in names) for f in b_e]
        keys = {tuple(f[x] for x in names) for f in b_e}
        total = len(g.violets) - 1
        for combo in product(range(total + 1), repeat=len(names)):
            if sum(combo) != total:
                continue
            inside = in_convex_hull(pts, tuple(Fraction(c) for c in combo))
            assert inside == (combo in keys), combo


def test_tutte_doubled_edge(c4_fixture):
    de = doubled_edge()
    assert tutte_x_polynomial(de) == Poly((1, 1))  # T(x, y) = x + y at y = 1
    assert tutte_check(de)
    assert interior_polynomial(bip(de), EMERALD) == \
        interior_polynomial(c4_fixture.graph, EMERALD)


def test_tutte_tree_graph():
    path = RibbonGraph({"a": ("u0", "u1"), "b": ("u1", "u2")}, None, "u0", "a")
    assert tutte_x_polynomial(path) == Poly((0, 0, 1))  # x^(n-1)
    assert tutte_check(path)


def test_tutte_random_graphs():
    for seed in range(12):
        h = random_ordinary(seed, 5, 8)
        assert tutte_check(h), seed


def test_break_divisors():
    de = doubled_edge()
    assert break_divisors(de) == {(0, 1), (1, 0)}
    path = RibbonGraph({"a": ("u0", "u1"), "b": ("u1", "u2")}, None, "u0", "a")
    assert break_divisors(path) == {(0, 0, 0)}
    for seed in range(8):
        h = random_ordinary(seed, 5, 7)
        assert len(break_divisors(h)) == h.count_spanning_trees()


def test_poly_formatting():
    assert format_polynomial((1, 3, 3)) == "1 + 3*x + 3*x^2"
    assert format_polynomial((1, 1)) == "1 + x"
    assert format_polynomial((0, 0, 2)) == "2*x^2"
    assert format_polynomial(()) == "0"
    assert Poly((1, 3, 3, 0)) == Poly((1, 3, 3))
    assert str(Poly((1, 0, 1))) == "1 + x^2"
