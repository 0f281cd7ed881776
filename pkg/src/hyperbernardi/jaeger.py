"""Jaeger trees: recognition, direct enumeration, tree and T-orders,
internally semi-passive edges, and the activity matching for graphs.

A spanning tree is a V-cut (E-cut) Jaeger tree when its tour skips every
non-tree edge for the first time at the violet (emerald) endpoint.  The
violet tour of a V-cut tree uses the given setup; its emerald tour uses
the reversed setup with base edge b0b1- (and symmetrically for E-cut
trees, whose emerald tour lives in the given setup).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import EMERALD, VIOLET, RibbonBipartiteGraph, Tour, UnionFind
from .hypertree import internal_inactivity

VCUT = VIOLET
ECUT = EMERALD


def is_jaeger_tree(g: RibbonBipartiteGraph, tree: frozenset[str], cut: str) -> bool:
    """Each non-tree edge must be first skipped at its ``cut``-colored end."""
    tour = g.tour_of_tree(tree)
    seen: set[str] = set()
    for node, edge in tour.pairs:
        if edge in tree or edge in seen:
            continue
        seen.add(edge)
        if g.color(node) != cut:
            return False
    return True


def enumerate_jaeger_trees(g: RibbonBipartiteGraph, cut: str) -> list[frozenset[str]]:
    """All ``cut``-cut Jaeger trees by a branching tour search.

    An undecided edge met at a cut-colored node branches, cut first and
    keep second, which emits the trees exactly in the violet (emerald)
    tree order.  At the opposite color the edge is forced into the tree.
    Branches whose live graph can no longer span, or whose kept edges
    close a cycle, are pruned.
    """
    start = (g.base_node, g.base_edge)
    limit = 2 * len(g.edge_ids) + 1
    out: list[frozenset[str]] = []

    IN, OUT = 1, 2

    def live_connected(status: dict[str, int]) -> bool:
        uf = UnionFind(g.nodes)
        for e in g.edge_ids:
            if status.get(e) != OUT:
                a, b = g.edges[e]
                uf.union(a, b)
        return uf.components == 1

    def keeps_acyclic(status: dict[str, int]) -> bool:
        uf = UnionFind(g.nodes)
        for e, s in status.items():
            if s == IN:
                a, b = g.edges[e]
                if not uf.union(a, b):
                    return False
        return True

    def walk(node: str, edge: str, status: dict[str, int], steps: int) -> None:
        while True:
            if steps > 0 and (node, edge) == start:
                if len(status) == len(g.edge_ids):
                    tree = frozenset(e for e, s in status.items() if s == IN)
                    if g.is_spanning_tree(tree):
                        out.append(tree)
                return
            if steps > limit:
                raise AssertionError("branching tour failed to close")
            s = status.get(edge)
            if s is None:
                if g.color(node) == cut:
                    # cut branch first: emission order = tree order
                    cut_status = dict(status)
                    cut_status[edge] = OUT
                    if live_connected(cut_status):
                        walk(node, g.next_edge(node, edge), cut_status, steps + 1)
                    keep_status = dict(status)
                    keep_status[edge] = IN
                    if keeps_acyclic(keep_status):
                        far = g.other_end(edge, node)
                        walk(far, g.next_edge(far, edge), keep_status, steps + 1)
                    return
                status = dict(status)
                status[edge] = IN
                if not keeps_acyclic(status):
                    return
                s = IN
            if s == IN:
                node = g.other_end(edge, node)
                edge = g.next_edge(node, edge)
            else:
                edge = g.next_edge(node, edge)
            steps += 1

    walk(g.base_node, g.base_edge, {}, 0)
    return out


def tour_setup(g: RibbonBipartiteGraph, cut: str, flavor: str) -> RibbonBipartiteGraph:
    """The setup whose tour realizes the requested flavor for cut-``cut``
    Jaeger trees: the given one when flavor matches the cut color, the
    reversed one (base edge b0b1-) otherwise."""
    return g if flavor == cut else g.reversed_setup()


def flavor_tour(g: RibbonBipartiteGraph, tree: frozenset[str], cut: str,
                flavor: str) -> tuple[Tour, RibbonBipartiteGraph]:
    setup = tour_setup(g, cut, flavor)
    return setup.tour_of_tree(tree), setup


def compare_trees(g: RibbonBipartiteGraph, t1: frozenset[str], t2: frozenset[str],
                  flavor: str, cut: str) -> int:
    """-1, 0, +1 in the flavor order; the tree containing the first
    divergent edge is the larger one."""
    if t1 == t2:
        return 0
    edge = divergence_edge(g, t1, t2, cut=cut, flavor=flavor)
    return 1 if edge in t1 else -1


def divergence_edge(g: RibbonBipartiteGraph, t1: frozenset[str], t2: frozenset[str],
                    cut: str = VCUT, flavor: str | None = None) -> str:
    """The edge at which the flavor tours of two distinct trees diverge."""
    flavor = cut if flavor is None else flavor
    tour1, setup = flavor_tour(g, t1, cut, flavor)
    tour2, _ = flavor_tour(g, t2, cut, flavor)
    for (p1, p2) in zip(tour1.pairs, tour2.pairs):
        if p1 != p2:
            raise AssertionError("tours diverged without an edge decision")
        edge = p1[1]
        if (edge in t1) != (edge in t2):
            return edge
    raise ValueError("identical trees have no divergence")


@dataclass(frozen=True)
class TOrder:
    flavor: str
    edge_order: tuple[str, ...]
    class_order: tuple[str, ...]

    def edge_rank(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.edge_order)}

    def node_rank(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.class_order)}


def t_order(g: RibbonBipartiteGraph, tree: frozenset[str], flavor: str,
            cut: str | None = None) -> TOrder:
    """Edges by first occurrence with a flavor-colored current node, plus
    the class order induced by smallest incident edges.

    ``cut`` names the setup in which the tree is a Jaeger tree; by
    default it is inferred by recognition.
    """
    if cut is None:
        if is_jaeger_tree(g, tree, VCUT):
            cut = VCUT
        elif is_jaeger_tree(g, tree, ECUT):
            cut = ECUT
        else:
            raise ValueError("tree is not a Jaeger tree; pass cut explicitly")
    tour, setup = flavor_tour(g, tree, cut, flavor)
    order: list[str] = []
    seen: set[str] = set()
    for node, edge in tour.pairs:
        if setup.color(node) == flavor and edge not in seen:
            seen.add(edge)
            order.append(edge)
    if len(order) != len(g.edge_ids):
        raise AssertionError("tour missed an edge on the flavor side")
    class_nodes = g.side_nodes(EMERALD if flavor == EMERALD else VIOLET)
    rank = {e: i for i, e in enumerate(order)}
    first = {x: min(rank[e] for e in g.incident(x)) for x in class_nodes}
    induced = tuple(sorted(class_nodes, key=lambda x: first[x]))
    return TOrder(flavor, tuple(order), induced)


def semi_passive_edges(g: RibbonBipartiteGraph, tree: frozenset[str],
                       edge_order) -> frozenset[str]:
    """Tree edges standing opposite to the minimum of their own base cut.

    Standing opposite means the two edges have endpoints of different
    colors in each component of tree - edge.  Base-free by definition.
    """
    rank = {e: i for i, e in enumerate(edge_order)}
    out = set()
    for eps in sorted(tree):
        side_a, _ = g.tree_components(tree, eps)
        cut_edges = g.fundamental_cut(tree, eps)
        smallest = min(cut_edges, key=lambda e: rank[e])
        if smallest == eps:
            continue
        em_a = g.emerald_end(eps) in side_a
        em_b = g.emerald_end(smallest) in side_a
        if em_a != em_b:
            out.add(eps)
    return frozenset(out)


def characterize_edge(g: RibbonBipartiteGraph, trees_in_violet_order,
                      index: int, eps: str) -> dict[str, bool]:
    """The five equivalent descriptions of a semi-passive tree edge, for
    a V-cut Jaeger tree given with its violet-order prefix.

    Raises TheoremViolation when the five disagree.
    """
    from .bernardi import TheoremViolation

    trees = list(trees_in_violet_order)
    tree = trees[index]
    if eps not in tree:
        raise ValueError("edge must belong to the tree")

    first_difference = any(
        divergence_edge(g, earlier, tree, cut=VCUT) == eps
        for earlier in trees[:index])

    em_order = t_order(g, tree, EMERALD, cut=VCUT)
    semi_passive = eps in semi_passive_edges(g, tree, em_order.edge_order)

    base_side, _ = g.tree_components(tree, eps)
    violet_in_base = g.violet_end(eps) in base_side
    f_e = g.degree_vector(tree, EMERALD)
    _, inactive = internal_inactivity(g, EMERALD, f_e, em_order.class_order)
    cond_three = violet_in_base and g.emerald_end(eps) in inactive

    vi_order = t_order(g, tree, VIOLET, cut=VCUT)
    vrank = vi_order.edge_rank()
    cut_edges = g.fundamental_cut(tree, eps)
    not_largest = eps != max(cut_edges, key=lambda e: vrank[e])

    cond_five = violet_in_base and any(
        g.emerald_end(e) in base_side for e in cut_edges - {eps})

    report = {
        "first_difference": first_difference,
        "semi_passive_emerald_order": semi_passive,
        "violet_in_base_and_inactive_end": cond_three,
        "not_largest_in_cut_violet_order": not_largest,
        "base_cut_witness": cond_five,
    }
    if len(set(report.values())) != 1:
        raise TheoremViolation(
            f"five-way characterization disagrees for {eps!r}: {report}")
    return report


def graph_activity_matching(graph_g, tree: frozenset[str]) -> dict:
    """For an ordinary ribbon graph and a V-cut Jaeger tree of its
    subdivision: semi-passive edges under the violet T-order match the
    internally inactive nodes of both induced hypertrees, one-to-one by
    incidence."""
    from .graph import bip

    bg = bip(graph_g)
    if not is_jaeger_tree(bg, tree, VCUT):
        raise ValueError("tree must be a V-cut Jaeger tree of the subdivision")
    vi_order = t_order(bg, tree, VIOLET, cut=VCUT)
    semi = semi_passive_edges(bg, tree, vi_order.edge_order)

    f_e = bg.degree_vector(tree, EMERALD)
    f_v = bg.degree_vector(tree, VIOLET)
    # the violet T-order induces orders on both classes by smallest
    # incident edge
    rank = vi_order.edge_rank()
    order_e = tuple(sorted(bg.emeralds, key=lambda x: min(rank[e] for e in bg.incident(x))))
    order_v = vi_order.class_order
    _, inactive_e = internal_inactivity(bg, EMERALD, f_e, order_e)
    _, inactive_v = internal_inactivity(bg, VIOLET, f_v, order_v)

    em_ends = sorted(bg.emerald_end(e) for e in semi)
    vi_ends = sorted(bg.violet_end(e) for e in semi)
    matched = (em_ends == sorted(inactive_e)
               and vi_ends == sorted(inactive_v)
               and len(set(em_ends)) == len(semi)
               and len(set(vi_ends)) == len(semi))
    return {
        "semi_passive": semi,
        "inactive_emerald": inactive_e,
        "inactive_violet": inactive_v,
        "matched": matched,
        "count": len(semi),
    }
