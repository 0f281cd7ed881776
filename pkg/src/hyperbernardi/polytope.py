"""Exact root-polytope geometry.

The root polytope of a bipartite graph is the convex hull of the points
e + v over its edges; maximal simplices correspond to spanning trees.
Everything here runs over exact rationals: marker containment, the
separating functionals that certify pairwise interior-disjointness of a
dissection, facet-coverage for shelling orders, Ehrhart counting and
the binomial-basis fit.

Parallel edges collapse to one polytope vertex, so the geometric
operations require a simple bipartite graph.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exactla import binomial, det_bareiss, invert_matrix, solve_exact
from .graph import EMERALD, VIOLET, RibbonBipartiteGraph

Point = tuple[Fraction, ...]


def _require_simple(g: RibbonBipartiteGraph) -> None:
    if len({g.edges[e] for e in g.edge_ids}) != len(g.edge_ids):
        raise ValueError("root-polytope geometry needs a simple bipartite graph")


def node_index(g: RibbonBipartiteGraph) -> dict[str, int]:
    return {x: i for i, x in enumerate(g.nodes)}


def vertex_point(g: RibbonBipartiteGraph, edge: str) -> Point:
    idx = node_index(g)
    coords = [Fraction(0)] * len(g.nodes)
    a, b = g.edges[edge]
    coords[idx[a]] += 1
    coords[idx[b]] += 1
    return tuple(coords)


def marker(g: RibbonBipartiteGraph, f: dict[str, int], side: str = EMERALD) -> Point:
    """The marker point of a hypertree: f/|opp| + i_side/(|E||V|) + i_opp/|opp|."""
    idx = node_index(g)
    n_e = len(g.emeralds)
    n_v = len(g.violets)
    coords = [Fraction(0)] * len(g.nodes)
    if side == EMERALD:
        for x in g.emeralds:
            coords[idx[x]] = Fraction(f[x], n_v) + Fraction(1, n_e * n_v)
        for x in g.violets:
            coords[idx[x]] = Fraction(1, n_v)
    else:
        for x in g.violets:
            coords[idx[x]] = Fraction(f[x], n_e) + Fraction(1, n_e * n_v)
        for x in g.emeralds:
            coords[idx[x]] = Fraction(1, n_e)
    return tuple(coords)


class TreeSimplex:
    """The maximal simplex of a spanning tree, with a precomputed affine
    barycentric-coordinate functional for fast exact containment."""

    def __init__(self, g: RibbonBipartiteGraph, tree: frozenset[str]):
        self.g = g
        self.tree_edges = tuple(sorted(tree))
        self.vertices = [vertex_point(g, e) for e in self.tree_edges]
        n = len(g.nodes)
        k = len(self.tree_edges)
        # columns = vertices, plus the affine row of ones
        self._rows = [[self.vertices[j][i] for j in range(k)] for i in range(n)]
        self._rows.append([Fraction(1)] * k)
        ata = [[sum(self._rows[r][i] * self._rows[r][j] for r in range(n + 1))
                for j in range(k)] for i in range(k)]
        inv = invert_matrix(ata)
        # P maps the stacked vector (point, 1) to barycentric coordinates
        self._proj = [[sum(inv[i][l] * self._rows[r][l] for l in range(k))
                       for r in range(n + 1)] for i in range(k)]

    def barycentric(self, p: Point) -> tuple[Fraction, ...] | None:
        """Coordinates of p in the simplex basis; None when p is outside
        the affine hull."""
        stacked = list(p) + [Fraction(1)]
        lam = tuple(sum(row[r] * stacked[r] for r in range(len(stacked)))
                    for row in self._proj)
        # verify the least-squares solution actually solves the system
        for r, row in enumerate(self._rows):
            if sum(row[i] * lam[i] for i in range(len(lam))) != stacked[r]:
                return None
        return lam

    def contains(self, p: Point, strict: bool) -> bool:
        lam = self.barycentric(p)
        if lam is None:
            return False
        if strict:
            return all(c > 0 for c in lam)
        return all(c >= 0 for c in lam)


def simplex_contains(g: RibbonBipartiteGraph, tree: frozenset[str], p: Point,
                     strict: bool) -> bool:
    return TreeSimplex(g, tree).contains(p, strict)


def trees_compatible(g: RibbonBipartiteGraph, t1: frozenset[str],
                     t2: frozenset[str]) -> bool:
    """No cycle alternates between the two trees (shared edges may serve
    on either side); equivalent to the simplices meeting in a common face."""
    _require_simple(g)
    if t1 == t2:
        return True

    def usable(edge: str, parity: int) -> bool:
        return edge in (t1 if parity == 0 else t2)

    nodes = g.nodes
    for start in nodes:
        # depth-first search over simple alternating closed walks
        stack = [(start, 0, [start], [])]
        while stack:
            node, parity, path, edges_used = stack.pop()
            for e in g.incident(node):
                if not usable(e, parity):
                    continue
                if e in edges_used:
                    continue
                nxt = g.other_end(e, node)
                if nxt == start and len(edges_used) >= 1:
                    if (len(edges_used) + 1) % 2 == 0:
                        return False  # alternating cycle found
                    continue
                if nxt in path:
                    continue
                stack.append((nxt, 1 - parity, path + [nxt],
                              edges_used + [e]))
    return True


def separating_functional(g: RibbonBipartiteGraph, later_tree: frozenset[str],
                          eps: str) -> dict[str, int]:
    """The +/-1 node weights from the base cut of ``eps`` in the later
    tree: +1 on emeralds outside / violets inside the component of the
    violet endpoint, -1 elsewhere.  Edge value = sum of its endpoints,
    so eps maps to +2 and all other later-tree edges to 0."""
    from .graph import UnionFind
    uf = UnionFind(g.nodes)
    for e in later_tree:
        if e != eps:
            a, b = g.edges[e]
            uf.union(a, b)
    root = uf.find(g.violet_end(eps))
    side1 = {x for x in g.nodes if uf.find(x) == root}
    weights = {}
    for x in g.emeralds:
        weights[x] = -1 if x in side1 else 1
    for x in g.violets:
        weights[x] = 1 if x in side1 else -1
    return weights


def functional_on_edge(g: RibbonBipartiteGraph, weights: dict[str, int],
                       edge: str) -> int:
    a, b = g.edges[edge]
    return weights[a] + weights[b]


def certify_disjoint_interiors(g: RibbonBipartiteGraph,
                               earlier: frozenset[str], later: frozenset[str],
                               eps: str) -> bool:
    """Check the separating-functional certificate for an ordered pair of
    trees whose tours diverge at ``eps`` (an edge of the later tree)."""
    weights = separating_functional(g, later, eps)
    if functional_on_edge(g, weights, eps) != 2:
        return False
    if any(functional_on_edge(g, weights, e) != 0 for e in later if e != eps):
        return False
    return all(functional_on_edge(g, weights, e) <= 0 for e in earlier)


def verify_dissection(g: RibbonBipartiteGraph, trees,
                      certify_pairs: bool = True) -> dict:
    """Marker counts and placement for a claimed dissection.

    Checks that the tree count matches both hypertree counts, that each
    emerald and violet marker lies strictly inside exactly one simplex,
    and (optionally, intended for small instances) that tour-divergence
    functionals certify pairwise interior-disjointness.  The pair
    certificates assume the trees are V-cut Jaeger trees listed in
    violet order.
    """
    from .hypertree import enumerate_hypertrees
    from .jaeger import divergence_edge

    _require_simple(g)
    trees = [frozenset(t) for t in trees]
    simplices = [TreeSimplex(g, t) for t in trees]
    b_e = enumerate_hypertrees(g, EMERALD)
    b_v = enumerate_hypertrees(g, VIOLET)
    report: dict = {
        "tree_count": len(trees),
        "hypertree_count_emerald": len(b_e),
        "hypertree_count_violet": len(b_v),
        "counts_match": len(trees) == len(b_e) == len(b_v),
        "witnesses": [],
    }

    placement_ok = True
    for side, family in ((EMERALD, b_e), (VIOLET, b_v)):
        for f in family:
            p = marker(g, f, side)
            hits = [i for i, s in enumerate(simplices) if s.contains(p, strict=True)]
            if len(hits) != 1:
                placement_ok = False
                report["witnesses"].append(
                    {"kind": "marker", "side": side, "hypertree": dict(f),
                     "strictly_inside": hits})
    report["markers_in_unique_simplex"] = placement_ok

    if certify_pairs:
        certified = True
        for i, j in combinations(range(len(trees)), 2):
            eps = divergence_edge(g, trees[i], trees[j], cut=VIOLET)
            earlier, later = (trees[i], trees[j]) if eps in trees[j] else (trees[j], trees[i])
            if not certify_disjoint_interiors(g, earlier, later, eps):
                certified = False
                report["witnesses"].append(
                    {"kind": "pair", "trees": [sorted(earlier), sorted(later)],
                     "divergence": eps})
        report["interiors_disjoint_certified"] = certified
    else:
        certified = None
        report["interiors_disjoint_certified"] = None

    pairwise_compatible = all(
        trees_compatible(g, a, b) for a, b in combinations(trees, 2))
    report["is_triangulation"] = report["counts_match"] and placement_ok and pairwise_compatible
    report["is_dissection"] = bool(
        report["counts_match"] and placement_ok and (certified is not False))
    return report


# -- facet coverage for shelling checks ------------------------------------


def _split_piece(piece: list[Point], values: list[Fraction]) -> tuple[list[Point], list[Point]]:
    """Split conv(piece) by the affine functional whose vertex values are
    given; returns vertex lists (redundancy allowed) of both halves."""
    pos = [p for p, v in zip(piece, values) if v >= 0]
    neg = [p for p, v in zip(piece, values) if v <= 0]
    for (p, vp) in zip(piece, values):
        if vp <= 0:
            continue
        for (q, vq) in zip(piece, values):
            if vq >= 0:
                continue
            t = vp / (vp - vq)  # in (0, 1): crossing point on the segment
            cross = tuple(a + t * (b - a) for a, b in zip(p, q))
            pos.append(cross)
            neg.append(cross)
    return pos, neg


def facet_cover_status(piece: list[Point], simplices: list[TreeSimplex],
                       budget: int = 20000) -> str:
    """Exact coverage of conv(piece) by a union of simplices.

    Returns "covered", "disjoint" (interior misses every simplex), or
    recurses by splitting along a barycentric hyperplane that separates
    the piece's vertices.  All points must lie in the simplices' common
    affine hull.
    """
    stack = [piece]
    all_covered = True
    all_disjoint = True
    work = 0
    while stack:
        work += 1
        if work > budget:
            raise RuntimeError("facet coverage recursion budget exceeded")
        cur = stack.pop()
        bary = []
        contained = False
        for s in simplices:
            lam = [s.barycentric(p) for p in cur]
            if any(l is None for l in lam):
                raise ValueError("point outside the affine hull")
            bary.append(lam)
            if all(all(c >= 0 for c in l) for l in lam):
                contained = True
                break
        if contained:
            all_disjoint = False
            continue
        # look for a hyperplane that strictly separates the vertices
        split = None
        for lam in bary:
            k = len(lam[0])
            for i in range(k):
                vals = [l[i] for l in lam]
                if any(v > 0 for v in vals) and any(v < 0 for v in vals):
                    split = vals
                    break
            if split:
                break
        if split is None:
            # piece is on one closed side of every hyperplane: since no
            # simplex contains it, its interior misses them all
            all_covered = False
            continue
        a, b = _split_piece(cur, split)
        stack.append(a)
        stack.append(b)
    if all_covered:
        return "covered"
    if all_disjoint:
        return "disjoint"
    return "mixed"


def geometric_shelling_check(g: RibbonBipartiteGraph, trees) -> dict:
    """Facet-by-facet geometric verification of the shelling order.

    For each tree in violet order and each tree edge: a facet whose edge
    is internally semi-passive (emerald T-order) must be covered by the
    earlier simplices; a semi-active facet's interior must be disjoint
    from them (certified by the tour-divergence functionals).
    """
    from .jaeger import divergence_edge, semi_passive_edges, t_order

    _require_simple(g)
    trees = [frozenset(t) for t in trees]
    simplices = [TreeSimplex(g, t) for t in trees]
    failures = []
    for i, tree in enumerate(trees):
        em_order = t_order(g, tree, EMERALD, cut=VIOLET)
        semi = semi_passive_edges(g, tree, em_order.edge_order)
        divergences = {}
        for j in range(i):
            eps = divergence_edge(g, trees[j], tree, cut=VIOLET)
            if eps not in tree or eps in trees[j]:
                failures.append({"kind": "divergence-side", "tree": i, "earlier": j})
                continue
            divergences[j] = eps
        for eps in sorted(tree):
            facet = [vertex_point(g, e) for e in sorted(tree - {eps})]
            if eps in semi:
                status = facet_cover_status(facet, simplices[:i])
                if status != "covered":
                    failures.append({"kind": "uncovered-facet", "tree": i,
                                     "edge": eps, "status": status})
            else:
                for j in range(i):
                    eps_j = divergences.get(j)
                    if eps_j == eps or eps_j is None:
                        failures.append({"kind": "active-facet-hit",
                                         "tree": i, "earlier": j, "edge": eps})
                        continue
                    weights = separating_functional(g, tree, eps_j)
                    bad = (functional_on_edge(g, weights, eps_j) != 2
                           or any(functional_on_edge(g, weights, e) > 0
                                  for e in trees[j]))
                    if bad:
                        failures.append({"kind": "separation-failed",
                                         "tree": i, "earlier": j, "edge": eps})
    return {"ok": not failures, "failures": failures}


def shelling_h_vector(g: RibbonBipartiteGraph, trees) -> tuple[int, ...]:
    """Combinatorial h-vector: a_i counts trees with i internally
    semi-passive edges under their own emerald T-order.  The input must
    be the V-cut Jaeger trees in violet order."""
    from .jaeger import semi_passive_edges, t_order

    counts: dict[int, int] = {}
    trees = [frozenset(t) for t in trees]
    for i, tree in enumerate(trees):
        em_order = t_order(g, tree, EMERALD, cut=VIOLET)
        k = len(semi_passive_edges(g, tree, em_order.edge_order))
        if i == 0 and k != 0:
            raise AssertionError("first tree of a shelling has no covered facets")
        counts[k] = counts.get(k, 0) + 1
    top = max(counts) if counts else 0
    return tuple(counts.get(i, 0) for i in range(top + 1))


# -- volumes ---------------------------------------------------------------


def normalized_simplex_volume(g: RibbonBipartiteGraph, tree: frozenset[str]) -> int:
    """|det| of the edge-difference matrix in a lattice basis of the
    direction space of aff(Q_G); equals 1 exactly when the simplex is
    unimodular (which Ehrhart counting relies on)."""
    idx = node_index(g)
    drop = {idx[g.emeralds[0]], idx[g.violets[0]]}
    cols = [i for i in range(len(g.nodes)) if i not in drop]
    verts = [vertex_point(g, e) for e in sorted(tree)]
    base = verts[0]
    rows = [[int(v[c] - base[c]) for c in cols] for v in verts[1:]]
    return abs(det_bareiss(rows))


# -- Ehrhart ---------------------------------------------------------------


def ehrhart_values(g: RibbonBipartiteGraph, kmax: int) -> list[int]:
    """Lattice points of the dilates k*Q_G for k = 0..kmax.

    Counted as distinct endpoint-degree vectors of k-edge multisets;
    this relies on the maximal simplices being unimodular, which
    normalized_simplex_volume checks and the lattice-scan oracle
    cross-checks on small instances.
    """
    _require_simple(g)
    idx = node_index(g)
    n = len(g.nodes)
    edge_vecs = []
    for e in g.edge_ids:
        a, b = g.edges[e]
        v = [0] * n
        v[idx[a]] += 1
        v[idx[b]] += 1
        edge_vecs.append(tuple(v))
    values = [1]
    layer = {tuple([0] * n)}
    for _ in range(kmax):
        nxt = set()
        for p in layer:
            for v in edge_vecs:
                nxt.add(tuple(a + b for a, b in zip(p, v)))
        layer = nxt
        values.append(len(layer))
    return values


def ehrhart_values_scan(g: RibbonBipartiteGraph, kmax: int) -> list[int]:
    """Independent oracle: scan integer points of the bounding slab and
    test exact membership in k*Q_G via some spanning-tree simplex."""
    _require_simple(g)
    simplices = [TreeSimplex(g, t) for t in g.spanning_trees()]
    n_e = len(g.emeralds)
    n_v = len(g.violets)

    def compositions(total: int, parts: int):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    values = []
    for k in range(kmax + 1):
        if k == 0:
            values.append(1)
            continue
        count = 0
        for epart in compositions(k, n_e):
            for vpart in compositions(k, n_v):
                p = tuple(Fraction(x) for x in epart + vpart)
                scaled = tuple(x / k for x in p)
                if any(s.contains(scaled, strict=False) for s in simplices):
                    count += 1
        values.append(count)
    return values


def fit_binomial_coefficients(values, d: int) -> tuple[int, ...]:
    """Solve epsilon(k) = sum_i a_i * C(d+k-i, d) for k = 0..d.

    The system is triangular; the solution must be integral and
    nonnegative or the counting upstream is broken.
    """
    if len(values) < d + 1:
        raise ValueError(f"need values for k = 0..{d}")
    a: list[Fraction] = []
    for k in range(d + 1):
        acc = Fraction(values[k])
        for i, ai in enumerate(a):
            acc -= ai * binomial(d + k - i, d)
        coeff = binomial(d, d)  # C(d + k - k, d) = 1
        a.append(acc / coeff)
    out = []
    for ai in a:
        if ai.denominator != 1 or ai < 0:
            raise AssertionError(f"binomial fit not a nonnegative integer: {a}")
        out.append(int(ai))
    # consistency on any extra supplied values
    for k in range(d + 1, len(values)):
        pred = sum(out[i] * binomial(d + k - i, d) for i in range(len(out)))
        if pred != values[k]:
            raise AssertionError(f"binomial fit fails at k={k}: {pred} != {values[k]}")
    return tuple(out)


def kato_series_check(interior_coeffs, g: RibbonBipartiteGraph, order: int,
                      values=None) -> bool:
    """`I(x) / (1-x)^(|E|+|V|-1)` must reproduce the Ehrhart values."""
    m = len(g.emeralds) + len(g.violets) - 1
    if values is None:
        values = ehrhart_values(g, order)
    coeffs = list(interior_coeffs)
    for k in range(order + 1):
        series = sum(c * binomial(m - 1 + k - j, m - 1)
                     for j, c in enumerate(coeffs) if k - j >= 0)
        if series != values[k]:
            return False
    return True


# -- simplex intersection oracle (compatibility <=> common face) -----------


def _affine_chart(g: RibbonBipartiteGraph):
    """Drop one emerald and one violet coordinate: a unimodular chart of
    the direction space of aff(Q_G)."""
    idx = node_index(g)
    drop = {idx[g.emeralds[0]], idx[g.violets[0]]}
    cols = [i for i in range(len(g.nodes)) if i not in drop]
    return cols


def intersection_is_common_face(g: RibbonBipartiteGraph, t1: frozenset[str],
                                t2: frozenset[str]) -> bool:
    """Exact geometric test: Q_T1 intersect Q_T2 equals the simplex on the
    shared edges.  Vertices of the intersection are enumerated by brute
    force over active constraint subsets in an affine chart."""
    _require_simple(g)
    cols = _affine_chart(g)
    d = len(cols)
    s1, s2 = TreeSimplex(g, t1), TreeSimplex(g, t2)

    # affine functionals lam_i(x) for both simplices, as functions of the
    # chart coordinates: lam(x) = proj . (point(x), 1) where the dropped
    # coordinates are recovered from the affine-hull equations.
    idx = node_index(g)
    drop_e = idx[g.emeralds[0]]
    drop_v = idx[g.violets[0]]
    e_cols = [idx[x] for x in g.emeralds if idx[x] != drop_e]
    v_cols = [idx[x] for x in g.violets if idx[x] != drop_v]

    def lift(chart: tuple[Fraction, ...]) -> Point:
        full = [Fraction(0)] * len(g.nodes)
        for c, val in zip(cols, chart):
            full[c] = val
        full[drop_e] = Fraction(1) - sum(full[c] for c in e_cols)
        full[drop_v] = Fraction(1) - sum(full[c] for c in v_cols)
        return tuple(full)

    def functional_rows(simplex: TreeSimplex):
        rows = []
        zero = lift(tuple(Fraction(0) for _ in cols))
        lam0 = simplex.barycentric(zero)
        for i in range(len(simplex.tree_edges)):
            grad = []
            for c in range(d):
                unit = tuple(Fraction(int(j == c)) for j in range(d))
                lam = simplex.barycentric(lift(unit))
                grad.append(lam[i] - lam0[i])
            rows.append((grad, lam0[i]))
        return rows

    constraints = functional_rows(s1) + functional_rows(s2)

    def value(con, chart):
        grad, c0 = con
        return c0 + sum(a * b for a, b in zip(grad, chart))

    verts: set[tuple[Fraction, ...]] = set()
    for subset in combinations(range(len(constraints)), d):
        rows = [constraints[i][0] for i in subset]
        rhs = [-constraints[i][1] for i in subset]
        try:
            sol = solve_exact([list(r) for r in rows], rhs)
        except ValueError:
            continue
        if sol is None:
            continue
        if all(value(c, sol) >= 0 for c in constraints):
            verts.add(sol)

    expected = set()
    for e in t1 & t2:
        p = vertex_point(g, e)
        expected.add(tuple(p[c] for c in cols))
    return verts == expected
