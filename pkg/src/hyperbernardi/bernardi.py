"""The four hypergraphical Bernardi processes and their polynomials.

A process walks the ribbon bipartite graph guided by a hypertree on one
color class (the ht side).  Edges are examined as current edges at
their cut-side endpoint: if the hypertree stays realizable without the
edge it is removed, otherwise it is kept and traversed together with
the following edge at the far endpoint.  The run stops right before any
edge would be traversed a second time from the same direction.

Each run performs online checks of the structural guarantees (each edge
current once, traversed subgraph acyclic, kept/traversed edges never
removed); a violation raises TheoremViolation and means either a bug or
a genuine counterexample, which the campaign machinery re-verifies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import EMERALD, VIOLET, RibbonBipartiteGraph, UnionFind
from .hypertree import (Poly, _oracle, _side_key, enumerate_hypertrees,
                        external_inactivity, internal_inactivity)


class TheoremViolation(AssertionError):
    """An invariant that is a theorem failed during execution."""


@dataclass(frozen=True)
class ProcessVariant:
    ht_side: str
    cut_side: str

    def __str__(self):
        tag = {EMERALD: "E", VIOLET: "V"}
        return f"ht{tag[self.ht_side]}-cut{tag[self.cut_side]}"

    @classmethod
    def parse(cls, text: str) -> "ProcessVariant":
        table = {str(v): v for v in VARIANTS}
        if text not in table:
            raise ValueError(f"unknown variant {text!r}; choose from {sorted(table)}")
        return table[text]


HT_E_CUT_V = ProcessVariant(EMERALD, VIOLET)
HT_E_CUT_E = ProcessVariant(EMERALD, EMERALD)
HT_V_CUT_V = ProcessVariant(VIOLET, VIOLET)
HT_V_CUT_E = ProcessVariant(VIOLET, EMERALD)
VARIANTS = (HT_E_CUT_V, HT_E_CUT_E, HT_V_CUT_V, HT_V_CUT_E)


@dataclass(frozen=True)
class BernardiStep:
    edge: str
    decision: str          # "removed" or "kept"
    live_before: int       # current-graph edge count when examined
    traversals: tuple[tuple[str, str], ...]  # (edge, from-color) records


@dataclass(frozen=True)
class BernardiRun:
    variant: ProcessVariant
    hypertree: tuple[tuple[str, int], ...]
    steps: tuple[BernardiStep, ...]
    result_tree: frozenset[str]
    current_edge_order: tuple[str, ...]
    first_incident_current: dict[str, int]
    first_reached: dict[str, int]

    def hypertree_dict(self) -> dict[str, int]:
        return dict(self.hypertree)


def run_bernardi(g: RibbonBipartiteGraph, f: dict[str, int],
                 variant: ProcessVariant, paranoid: bool = False) -> BernardiRun:
    """Execute one Bernardi process run.

    ``paranoid`` disables memoization and kept-edge pinning in the
    feasibility oracle (used to re-verify flagged conjecture outcomes).
    """
    cut = variant.cut_side
    far = EMERALD if cut == VIOLET else VIOLET
    oracle = _oracle(g, variant.ht_side)
    f_key = _side_key(g, variant.ht_side, f)
    if not oracle.feasible(f_key, frozenset(g.edge_ids), frozenset(),
                           memo=not paranoid):
        raise ValueError("input vector is not a hypertree")

    live = set(g.edge_ids)
    kept: set[str] = set()
    traversed: set[tuple[str, str]] = set()   # (edge, from-color)
    tree_uf = UnionFind(g.nodes)              # traversed subgraph, no-cycle check
    traversed_edges: set[str] = set()
    steps: list[BernardiStep] = []
    order: list[str] = []
    seen_current: set[str] = set()
    first_incident: dict[str, int] = {}
    first_reached: dict[str, int] = {}

    def reach(node: str):
        first_reached.setdefault(node, len(order))

    def record_traversal(edge: str, from_color: str):
        key = (edge, from_color)
        if key in traversed:
            raise AssertionError("second same-direction traversal executed")
        traversed.add(key)
        if edge not in traversed_edges:
            traversed_edges.add(edge)
            a, b = g.edges[edge]
            if not tree_uf.union(a, b):
                raise TheoremViolation(
                    f"traversed subgraph acquired a cycle at {edge!r}")
        reach(g.other_end(edge, g.end_of_color(edge, from_color)))

    # initialization: if the base node's color is not the cut color, the
    # base edge is pre-traversed from that side and the walk starts with
    # the edge following it at the far endpoint.
    reach(g.base_node)
    if g.color(g.base_node) == cut:
        cur = g.base_edge
    else:
        record_traversal(g.base_edge, far)
        b1 = g.other_end(g.base_edge, g.base_node)
        cur = g.next_edge(b1, g.base_edge, frozenset(live))

    limit = 4 * len(g.edge_ids) + 4
    while True:
        if (cur, cut) in traversed:
            break  # the re-examination would re-traverse: stop right before
        if cur in seen_current:
            raise TheoremViolation(f"edge {cur!r} became current twice")
        seen_current.add(cur)
        near = g.end_of_color(cur, cut)
        for node in g.edges[cur]:
            first_incident.setdefault(node, len(order))
        order.append(cur)
        live_before = len(live)

        live_f = frozenset(live - {cur})
        required = frozenset(kept) if not paranoid else frozenset()
        if oracle.feasible(f_key, live_f, required, memo=not paranoid):
            if cur in kept or cur in traversed_edges:
                raise TheoremViolation(f"kept/traversed edge {cur!r} removed")
            nxt = g.next_edge(near, cur, frozenset(live))
            live.discard(cur)
            steps.append(BernardiStep(cur, "removed", live_before, ()))
            if nxt == cur:
                raise AssertionError("removal isolated the current node")
            cur = nxt
        else:
            kept.add(cur)
            record_traversal(cur, cut)
            far_node = g.end_of_color(cur, far)
            follow = g.next_edge(far_node, cur, frozenset(live))
            if (follow, far) in traversed:
                steps.append(BernardiStep(cur, "kept", live_before,
                                          ((cur, cut),)))
                break  # stop right before the second far-side traversal
            record_traversal(follow, far)
            steps.append(BernardiStep(cur, "kept", live_before,
                                      ((cur, cut), (follow, far))))
            w = g.end_of_color(follow, cut)
            cur = g.next_edge(w, follow, frozenset(live))
        if len(order) > limit:
            raise AssertionError("process failed to terminate")

    if seen_current != set(g.edge_ids):
        raise TheoremViolation("some edge never became current")
    result = frozenset(live)
    if not g.is_spanning_tree(result):
        raise TheoremViolation("final current graph is not a spanning tree")
    vals = g.degree_vector(result, variant.ht_side)
    if any(vals[x] != f[x] for x in vals):
        raise TheoremViolation("result tree does not realize the hypertree")
    _check_cut_side_arcs(g, order, variant.cut_side)

    return BernardiRun(
        variant=variant,
        hypertree=tuple(sorted(f.items())),
        steps=tuple(steps),
        result_tree=result,
        current_edge_order=tuple(order),
        first_incident_current=first_incident,
        first_reached=first_reached)


def _check_cut_side_arcs(g: RibbonBipartiteGraph, order: list[str], cut: str) -> None:
    """Current edges at each cut-side node follow its full rotation,
    starting at the earliest (consecutive arc discipline)."""
    rank = {e: i for i, e in enumerate(order)}
    for x in g.side_nodes(cut):
        rot = g.rotations[x]
        by_time = sorted(rot, key=lambda e: rank[e])
        start = rot.index(by_time[0])
        expected = tuple(rot[(start + k) % len(rot)] for k in range(len(rot)))
        if tuple(by_time) != expected:
            raise TheoremViolation(
                f"current edges at {x!r} broke the cyclic-order discipline")


def induced_class_order(run: BernardiRun, g: RibbonBipartiteGraph,
                        side: str) -> tuple[str, ...]:
    """Class nodes ordered by their earliest incident current edge."""
    nodes = g.side_nodes(side)
    return tuple(sorted(nodes, key=lambda x: run.first_incident_current[x]))


def embedding_inactivities(g: RibbonBipartiteGraph, f: dict[str, int],
                           variant: ProcessVariant,
                           run: BernardiRun | None = None) -> tuple[int, int]:
    """(internal, external) inactivity of f against its own run's order."""
    if run is None:
        run = run_bernardi(g, f, variant)
    order = induced_class_order(run, g, variant.ht_side)
    internal, _ = internal_inactivity(g, variant.ht_side, f, order)
    external, _ = external_inactivity(g, variant.ht_side, f, order)
    return internal, external


def bernardi_interior(g: RibbonBipartiteGraph, side: str,
                      variant: ProcessVariant, hypertrees=None) -> Poly:
    if variant.ht_side != side:
        raise ValueError("variant must carry its hypertree on the requested side")
    if hypertrees is None:
        hypertrees = enumerate_hypertrees(g, side)
    counts: dict[int, int] = {}
    for f in hypertrees:
        internal, _ = embedding_inactivities(g, f, variant)
        counts[internal] = counts.get(internal, 0) + 1
    top = max(counts) if counts else 0
    return Poly([counts.get(i, 0) for i in range(top + 1)])


def bernardi_exterior(g: RibbonBipartiteGraph, side: str,
                      variant: ProcessVariant, hypertrees=None) -> Poly:
    if variant.ht_side != side:
        raise ValueError("variant must carry its hypertree on the requested side")
    if hypertrees is None:
        hypertrees = enumerate_hypertrees(g, side)
    counts: dict[int, int] = {}
    for f in hypertrees:
        _, external = embedding_inactivities(g, f, variant)
        counts[external] = counts.get(external, 0) + 1
    top = max(counts) if counts else 0
    return Poly([counts.get(i, 0) for i in range(top + 1)])


def check_composition(g: RibbonBipartiteGraph, f: dict[str, int]) -> dict[str, bool]:
    """The three composition identities for a hypertree f on E.

    (a) run ht:E cut:V, feed the induced hypertree on V to ht:V cut:V;
    (b) run ht:E cut:E on the reversed setup;
    (c) feed the induced hypertree on V to ht:V cut:E on the reversed
    setup.  All three must reproduce the same tree.
    """
    base_run = run_bernardi(g, f, HT_E_CUT_V)
    t = base_run.result_tree
    f_v = g.degree_vector(t, VIOLET)
    rev = g.reversed_setup()
    return {
        "htV-cutV-on-fV": run_bernardi(g, f_v, HT_V_CUT_V).result_tree == t,
        "htE-cutE-reversed": run_bernardi(rev, f, HT_E_CUT_E).result_tree == t,
        "htV-cutE-reversed": run_bernardi(rev, f_v, HT_V_CUT_E).result_tree == t,
    }


def graph_specialization_check(graph_g, tree_of_g: frozenset[str]) -> bool:
    """For an ordinary ribbon graph and one of its spanning trees, both
    ht:E processes induce the tour order of the tree on the edge class."""
    from .graph import bip
    bg = bip(graph_g)
    f = {e: (1 if e in tree_of_g else 0) for e in graph_g.edge_ids}
    tour = graph_g.tour_of_tree(tree_of_g)
    want = tour.edge_order()
    for variant in (HT_E_CUT_E, HT_E_CUT_V):
        run = run_bernardi(bg, f, variant)
        got = induced_class_order(run, bg, EMERALD)
        if got != want:
            return False
    return True
