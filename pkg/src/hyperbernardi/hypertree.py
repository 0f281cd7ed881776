"""Hypertrees, transfers of valence, activities, and the interior and
exterior polynomials.

A hypertree on one color class assigns a nonnegative integer to each
node of that class so that some spanning tree has degree value+1 there.
Feasibility is decided by exact backtracking over per-node edge choices
with union-find pruning; the subset inequality sum f(E') <= |N(E')| - 1
is only used as a necessary rejection filter (singletons and the full
class), never assumed sufficient.
"""

from __future__ import annotations

from itertools import combinations

from .graph import EMERALD, VIOLET, RibbonBipartiteGraph, RibbonGraph, UnionFind, bip


class Poly:
    """Dense nonnegative-integer coefficient sequence, index = exponent."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(int(x) for x in coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        from .docio import format_polynomial
        return format_polynomial(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient_sum(self) -> int:
        return sum(self.coeffs)

    def to_json(self):
        return list(self.coeffs)


def _side_key(g: RibbonBipartiteGraph, side: str, f: dict[str, int]):
    nodes = g.side_nodes(side)
    if set(f) != set(nodes):
        raise ValueError(f"hypertree must be indexed by the {side} nodes")
    return tuple(f[x] for x in nodes)


def _opposite(side: str) -> str:
    return VIOLET if side == EMERALD else EMERALD


class _Feasibility:
    """Degree-constrained spanning tree search on one graph and side.

    ``required`` edges are pinned into the tree (used by the Bernardi
    step, where kept edges are known to lie in every realization).
    Results are memoized on (f, live, required) bitmask keys.
    """

    def __init__(self, g: RibbonBipartiteGraph, side: str):
        self.g = g
        self.side = side
        self.side_nodes = g.side_nodes(side)
        self.opp_nodes = g.side_nodes(_opposite(side))
        pos = 0 if side == EMERALD else 1
        self.inc = {x: tuple(e for e in g.edge_ids if g.edges[e][pos] == x)
                    for x in self.side_nodes}

    def feasible(self, f_key, live: frozenset[str], required: frozenset[str],
                 memo=True) -> bool:
        g = self.g
        cache = g._feas_cache
        key = (self.side, f_key, live, required)
        if memo and key in cache:
            return cache[key]

        ok = self._search(f_key, live, required)
        if memo:
            cache[key] = ok
        return ok

    def _search(self, f_key, live, required) -> bool:
        g = self.g
        need = {x: f_key[i] + 1 for i, x in enumerate(self.side_nodes)}
        if any(v < 1 for v in need.values()):
            return False
        # sum over the whole class: a necessary equality
        if sum(need.values()) != len(self.opp_nodes) - 1 + len(self.side_nodes):
            return False
        # singleton instances of the neighborhood inequality = degree caps
        inc_live = {x: [e for e in self.inc[x] if e in live] for x in self.side_nodes}
        req_at = {x: [e for e in inc_live[x] if e in required] for x in self.side_nodes}
        for x in self.side_nodes:
            if need[x] > len(inc_live[x]) or len(req_at[x]) > need[x]:
                return False
        for v in self.opp_nodes:
            if g.degree(v, live) == 0:
                return False

        uf = UnionFind(g.nodes)
        for e in required:
            a, b = g.edges[e]
            if not uf.union(a, b):
                return False  # pinned edges already contain a cycle

        order = sorted(self.side_nodes,
                       key=lambda x: (len(inc_live[x]) - need[x], x))
        total_left = [0] * (len(order) + 1)
        for i in range(len(order) - 1, -1, -1):
            total_left[i] = total_left[i + 1] + need[order[i]]

        def rec(i: int) -> bool:
            if uf.components - 1 > total_left[i]:
                return False
            if i == len(order):
                return uf.components == 1
            x = order[i]
            pinned = req_at[x]
            free = [e for e in inc_live[x] if e not in required]
            k = need[x] - len(pinned)
            mark = uf.snapshot()
            # pinned edges were unioned up front; only free choices vary
            for combo in combinations(free, k):
                good = True
                for e in combo:
                    a, b = self.g.edges[e]
                    if not uf.union(a, b):
                        good = False
                        break
                if good and rec(i + 1):
                    return True
                uf.rollback(mark)
            return False

        return rec(0)


def _oracle(g: RibbonBipartiteGraph, side: str) -> _Feasibility:
    key = ("_oracle", side)
    if key not in g._feas_cache:
        g._feas_cache[key] = _Feasibility(g, side)
    return g._feas_cache[key]


def is_hypertree(g: RibbonBipartiteGraph, side: str, f: dict[str, int],
                 live: frozenset[str] | None = None,
                 required: frozenset[str] = frozenset(),
                 memo: bool = True) -> bool:
    """Does some spanning tree of the (live) graph realize ``f``?"""
    f_key = _side_key(g, side, f)
    if any(v < 0 for v in f_key):
        return False
    if live is None:
        live = frozenset(g.edge_ids)
    return _oracle(g, side).feasible(f_key, live, required, memo=memo)


def degree_vector(g: RibbonBipartiteGraph, tree: frozenset[str], side: str) -> dict[str, int]:
    if not g.is_spanning_tree(tree):
        raise ValueError("not a spanning tree")
    return g.degree_vector(tree, side)


def enumerate_hypertrees(g: RibbonBipartiteGraph, side: str) -> list[dict[str, int]]:
    """All hypertrees on ``side``, via a sweep over spanning trees.

    Deterministic: sorted by value tuples.
    """
    nodes = g.side_nodes(side)
    seen = set()
    for t in g.spanning_trees():
        vals = g.degree_vector(t, side)
        seen.add(tuple(vals[x] for x in nodes))
    return [dict(zip(nodes, key)) for key in sorted(seen)]


def find_realization(g: RibbonBipartiteGraph, side: str, f: dict[str, int]) -> frozenset[str] | None:
    """Some spanning tree realizing f, or None (brute-force helper)."""
    key = _side_key(g, side, f)
    nodes = g.side_nodes(side)
    for t in g.spanning_trees():
        vals = g.degree_vector(t, side)
        if tuple(vals[x] for x in nodes) == key:
            return t
    return None


def can_transfer(g: RibbonBipartiteGraph, side: str, f: dict[str, int],
                 src: str, dst: str) -> bool:
    """Can one unit of valence move from src to dst, staying a hypertree?"""
    nodes = g.side_nodes(side)
    if src not in nodes or dst not in nodes:
        raise ValueError("transfer endpoints must lie in the hypertree's class")
    if src == dst:
        raise ValueError("transfer endpoints must differ")
    if f[src] == 0:
        return False
    shifted = dict(f)
    shifted[src] -= 1
    shifted[dst] += 1
    return is_hypertree(g, side, shifted)


def internal_inactivity(g: RibbonBipartiteGraph, side: str, f: dict[str, int],
                        order) -> tuple[int, frozenset[str]]:
    """Count nodes that can transfer valence to some smaller node.

    Returns (count, the inactive set).  ``order`` lists the class from
    smallest to largest.
    """
    order = list(order)
    inactive = set()
    for i, x in enumerate(order):
        if any(can_transfer(g, side, f, x, y) for y in order[:i]):
            inactive.add(x)
    return len(inactive), frozenset(inactive)


def external_inactivity(g: RibbonBipartiteGraph, side: str, f: dict[str, int],
                        order) -> tuple[int, frozenset[str]]:
    """Count nodes that may receive a transfer from some smaller node."""
    order = list(order)
    inactive = set()
    for i, x in enumerate(order):
        if any(can_transfer(g, side, f, y, x) for y in order[:i]):
            inactive.add(x)
    return len(inactive), frozenset(inactive)


def interior_polynomial(g: RibbonBipartiteGraph, side: str, order=None,
                        hypertrees=None) -> Poly:
    """Generating function of internal inactivity over all hypertrees.

    Independent of ``order`` (default: sorted node names); callers who
    want the order-independence asserted can recompute with shuffles.
    """
    if order is None:
        order = list(g.side_nodes(side))
    if hypertrees is None:
        hypertrees = enumerate_hypertrees(g, side)
    counts: dict[int, int] = {}
    for f in hypertrees:
        k, _ = internal_inactivity(g, side, f, order)
        counts[k] = counts.get(k, 0) + 1
    top = max(counts) if counts else 0
    return Poly([counts.get(i, 0) for i in range(top + 1)])


def exterior_polynomial(g: RibbonBipartiteGraph, side: str, order=None,
                        hypertrees=None) -> Poly:
    if order is None:
        order = list(g.side_nodes(side))
    if hypertrees is None:
        hypertrees = enumerate_hypertrees(g, side)
    counts: dict[int, int] = {}
    for f in hypertrees:
        k, _ = external_inactivity(g, side, f, order)
        counts[k] = counts.get(k, 0) + 1
    top = max(counts) if counts else 0
    return Poly([counts.get(i, 0) for i in range(top + 1)])


# -- ordinary graphs ------------------------------------------------------

def tutte_x_polynomial(g: RibbonGraph) -> Poly:
    """T(x, 1) of a connected multigraph by deletion-contraction.

    Works on (vertex set, edge multiset) pairs; loops created by
    contraction contribute a factor of T(loop, 1) = 1.
    """
    def rec(vertices: tuple, edges: tuple) -> dict[int, int]:
        # edges: tuple of (edge_id, u, v) with u, v in vertices
        plain = [(e, u, v) for (e, u, v) in edges if u != v]
        if not plain:
            return {0: 1}
        e, u, v = plain[0]
        rest = tuple(t for t in edges if t[0] != e)
        # bridge test: does rest connect u and v?
        uf = UnionFind(vertices)
        for _, a, b in rest:
            if a != b:
                uf.union(a, b)
        if uf.find(u) != uf.find(v):
            sub = rec(vertices, rest)  # contraction == deletion + x factor
            return {k + 1: c for k, c in sub.items()}
        deleted = rec(vertices, rest)
        merged = tuple(x for x in vertices if x != v)
        contracted_edges = tuple(
            (eid, u if a == v else a, u if b == v else b) for (eid, a, b) in rest)
        contracted = rec(merged, contracted_edges)
        out = dict(deleted)
        for k, c in contracted.items():
            out[k] = out.get(k, 0) + c
        return out

    start = tuple((e, a, b) for e, (a, b) in sorted(g.edges.items()))
    coeffs = rec(g.nodes, start)
    top = max(coeffs) if coeffs else 0
    return Poly([coeffs.get(i, 0) for i in range(top + 1)])


def tutte_check(g: RibbonGraph) -> bool:
    """Interior polynomial of the subdivision vs xi^{|V|-1} T(1/xi, 1)."""
    t = tutte_x_polynomial(g)
    n = len(g.nodes)
    flipped = [0] * n
    for k, c in enumerate(t.coeffs):
        flipped[n - 1 - k] = c
    interior = interior_polynomial(bip(g), EMERALD)
    return interior == Poly(flipped)


def break_divisors(g: RibbonGraph) -> set[tuple[int, ...]]:
    """Integer vectors z on V with d - 1 - z a hypertree on V in bip(g)."""
    bg = bip(g)
    deg = {x: g.degree(x) for x in g.nodes}
    out = set()
    for f in enumerate_hypertrees(bg, VIOLET):
        out.add(tuple(deg[x] - 1 - f[x] for x in g.nodes))
    return out
