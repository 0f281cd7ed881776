"""Ribbon graphs, ribbon bipartite graphs, and tours of spanning trees.

A ribbon structure assigns to every node a cyclic order of its incident
edges.  Parallel edges are allowed (each edge has its own id), loops are
not.  Graphs are immutable after construction; "deleting" edges is done
through a ``live`` edge subset passed to the query methods, which
inherits the cyclic orders by restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exactla import det_bareiss

EMERALD = "emerald"
VIOLET = "violet"

TRAVERSED = "traversed"
SKIPPED = "skipped"


class ValidationError(ValueError):
    """Raised when a graph violates a structural invariant."""


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in items}
        self.components = len(self.parent)
        self._trail: list[tuple[str, str]] = []

    def find(self, x):
        # no path compression so that rollback stays trivial
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        """Merge the classes of a and b; False if already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        self._trail.append((rb, ra))
        return True

    def snapshot(self) -> int:
        return len(self._trail)

    def rollback(self, mark: int) -> None:
        while len(self._trail) > mark:
            rb, ra = self._trail.pop()
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]
            self.components += 1


@dataclass(frozen=True)
class Tour:
    """Tour of a spanning tree: each incident (node, edge) pair once."""

    pairs: tuple[tuple[str, str], ...]
    actions: tuple[str, ...]  # TRAVERSED / SKIPPED, aligned with pairs

    def edge_order(self) -> tuple[str, ...]:
        """Edges by first occurrence as current edge."""
        seen: dict[str, None] = {}
        for _, e in self.pairs:
            seen.setdefault(e, None)
        return tuple(seen)

    def first_index(self) -> dict[tuple[str, str], int]:
        return {p: i for i, p in enumerate(self.pairs)}


class RibbonGraph:
    """Loopless multigraph with rotation system, base node and base edge."""

    bipartite = False

    def __init__(self, edges: dict[str, tuple[str, str]],
                 rotations: dict[str, tuple[str, ...]] | None,
                 base_node: str, base_edge: str,
                 nodes: tuple[str, ...] | None = None):
        self.edges = {e: (str(a), str(b)) for e, (a, b) in edges.items()}
        node_set = set()
        for e, (a, b) in self.edges.items():
            if a == b:
                raise ValidationError(f"loop edge {e!r} at {a!r}")
            node_set.update((a, b))
        if nodes is not None:
            node_set.update(nodes)
        self.nodes = tuple(sorted(node_set))
        self.edge_ids = tuple(sorted(self.edges))
        self.edge_pos = {e: i for i, e in enumerate(self.edge_ids)}
        if not self.edges:
            raise ValidationError("graph must have at least one edge")

        incident: dict[str, list[str]] = {x: [] for x in self.nodes}
        for e in self.edge_ids:
            a, b = self.edges[e]
            incident[a].append(e)
            incident[b].append(e)
        self._incident_sorted = {x: tuple(v) for x, v in incident.items()}

        if rotations is None:
            rotations = {}
        rot: dict[str, tuple[str, ...]] = {}
        for x in self.nodes:
            given = rotations.get(x)
            if given is None:
                # default: order of appearance in the (sorted) edge list
                rot[x] = self._incident_sorted[x]
            else:
                given = tuple(given)
                if sorted(given) != sorted(self._incident_sorted[x]):
                    raise ValidationError(
                        f"rotation at {x!r} is not a permutation of its incident edges")
                rot[x] = given
        self.rotations = rot

        if base_node not in set(self.nodes):
            raise ValidationError(f"base node {base_node!r} not in graph")
        if base_edge not in self.edges or base_node not in self.edges[base_edge]:
            raise ValidationError("base edge must be incident to the base node")
        self.base_node = base_node
        self.base_edge = base_edge

        if not self._connected(frozenset(self.edge_ids)):
            raise ValidationError("graph is not connected")

        self._feas_cache: dict = {}  # used by hypertree oracle

    # -- basic queries ---------------------------------------------------

    def other_end(self, edge: str, node: str) -> str:
        a, b = self.edges[edge]
        if node == a:
            return b
        if node == b:
            return a
        raise ValueError(f"edge {edge!r} not incident to {node!r}")

    def incident(self, node: str, live: frozenset[str] | None = None) -> tuple[str, ...]:
        rot = self.rotations[node]
        if live is None:
            return rot
        return tuple(e for e in rot if e in live)

    def degree(self, node: str, live: frozenset[str] | None = None) -> int:
        return len(self.incident(node, live))

    def _rotation_step(self, node: str, edge: str, step: int,
                       live: frozenset[str] | None) -> str:
        rot = self.rotations[node]
        if edge not in rot:
            raise ValueError(f"edge {edge!r} not incident to {node!r}")
        if live is not None and edge not in live:
            raise ValueError(f"edge {edge!r} not live")
        n = len(rot)
        i = rot.index(edge)
        for k in range(1, n + 1):
            cand = rot[(i + step * k) % n]
            if live is None or cand in live:
                return cand
        raise AssertionError("unreachable: edge itself is live")

    def next_edge(self, node: str, edge: str, live: frozenset[str] | None = None) -> str:
        """The edge following ``edge`` at ``node`` in the inherited order."""
        return self._rotation_step(node, edge, +1, live)

    def prev_edge(self, node: str, edge: str, live: frozenset[str] | None = None) -> str:
        return self._rotation_step(node, edge, -1, live)

    def _connected(self, live: frozenset[str]) -> bool:
        uf = UnionFind(self.nodes)
        for e in live:
            a, b = self.edges[e]
            uf.union(a, b)
        return uf.components == 1

    def is_spanning_tree(self, tree: frozenset[str]) -> bool:
        if len(tree) != len(self.nodes) - 1:
            return False
        uf = UnionFind(self.nodes)
        for e in tree:
            a, b = self.edges[e]
            if not uf.union(a, b):
                return False
        return uf.components == 1

    # -- spanning trees --------------------------------------------------

    def spanning_trees(self):
        """All spanning trees, lexicographic by sorted edge-id tuples."""
        n = len(self.nodes)
        for combo in combinations(self.edge_ids, n - 1):
            t = frozenset(combo)
            if self.is_spanning_tree(t):
                yield t

    def count_spanning_trees(self) -> int:
        """Kirchhoff matrix-tree count (independent oracle)."""
        idx = {x: i for i, x in enumerate(self.nodes)}
        n = len(self.nodes)
        lap = [[0] * n for _ in range(n)]
        for a, b in self.edges.values():
            i, j = idx[a], idx[b]
            lap[i][i] += 1
            lap[j][j] += 1
            lap[i][j] -= 1
            lap[j][i] -= 1
        minor = [row[1:] for row in lap[1:]]
        return det_bareiss(minor)

    def fundamental_cut(self, tree: frozenset[str], edge: str) -> frozenset[str]:
        """Edges joining the two components of tree - edge."""
        if edge not in tree:
            raise ValueError("fundamental cut needs a tree edge")
        uf = UnionFind(self.nodes)
        for e in tree:
            if e != edge:
                a, b = self.edges[e]
                uf.union(a, b)
        root = uf.find(self.edges[edge][0])
        return frozenset(e for e in self.edge_ids
                         if (uf.find(self.edges[e][0]) == root)
                         != (uf.find(self.edges[e][1]) == root))

    def fundamental_cycle(self, tree: frozenset[str], edge: str) -> frozenset[str]:
        """The unique cycle of tree + edge."""
        if edge in tree:
            raise ValueError("fundamental cycle needs a non-tree edge")
        a, b = self.edges[edge]
        # path from a to b in the tree (BFS on tree edges)
        adj: dict[str, list[tuple[str, str]]] = {x: [] for x in self.nodes}
        for e in tree:
            u, v = self.edges[e]
            adj[u].append((v, e))
            adj[v].append((u, e))
        prev: dict[str, tuple[str, str]] = {}
        frontier = [a]
        seen = {a}
        while frontier and b not in seen:
            nxt = []
            for u in frontier:
                for v, e in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        prev[v] = (u, e)
                        nxt.append(v)
            frontier = nxt
        path = []
        node = b
        while node != a:
            node, e = prev[node]
            path.append(e)
        return frozenset(path) | {edge}

    def tree_components(self, tree: frozenset[str], edge: str) -> tuple[frozenset[str], frozenset[str]]:
        """Node sets of the two components of tree - edge; base side first."""
        uf = UnionFind(self.nodes)
        for e in tree:
            if e != edge:
                a, b = self.edges[e]
                uf.union(a, b)
        root = uf.find(self.base_node)
        base_side = frozenset(x for x in self.nodes if uf.find(x) == root)
        other = frozenset(self.nodes) - base_side
        return base_side, other

    # -- tour of a spanning tree ------------------------------------------

    def tour_of_tree(self, tree: frozenset[str],
                     base_node: str | None = None,
                     base_edge: str | None = None) -> Tour:
        """Walk around the tree starting at the base pair.

        Non-tree current edge (x, xy): next pair is (x, xy+).  Tree edge:
        next pair is (y, yx+).  Stops right before the base pair recurs.
        """
        if not self.is_spanning_tree(tree):
            raise ValueError("not a spanning tree")
        b0 = self.base_node if base_node is None else base_node
        e0 = self.base_edge if base_edge is None else base_edge
        pairs: list[tuple[str, str]] = []
        actions: list[str] = []
        node, edge = b0, e0
        limit = 2 * len(self.edges) + 1
        while True:
            pairs.append((node, edge))
            if edge in tree:
                actions.append(TRAVERSED)
                node = self.other_end(edge, node)
                edge = self.next_edge(node, edge)
            else:
                actions.append(SKIPPED)
                edge = self.next_edge(node, edge)
            if (node, edge) == (b0, e0):
                break
            if len(pairs) > limit:
                raise AssertionError("tour failed to close")
        return Tour(tuple(pairs), tuple(actions))

    # -- faces / genus -----------------------------------------------------

    def faces(self) -> list[tuple[tuple[str, str], ...]]:
        """Face boundary walks as orbits of the face-tracing permutation.

        Darts are (tail node, edge).  The successor of (u, e) is
        (v, next_edge(v, e)) where v is the head of e.  With rotations
        read counterclockwise this lists each face's darts with the face
        on the right of the dart's direction of motion.
        """
        darts = [(u, e) for e in self.edge_ids for u in self.edges[e]]
        remaining = set(darts)
        out = []
        for start in sorted(darts):
            if start not in remaining:
                continue
            walk = []
            d = start
            while d in remaining:
                remaining.discard(d)
                walk.append(d)
                u, e = d
                v = self.other_end(e, u)
                d = (v, self.next_edge(v, e))
            out.append(tuple(walk))
        return out

    def genus(self) -> int:
        f = len(self.faces())
        v = len(self.nodes)
        e = len(self.edges)
        euler = v - e + f
        if euler % 2 != 0:
            raise AssertionError("Euler characteristic must be even")
        return (2 - euler) // 2


class RibbonBipartiteGraph(RibbonGraph):
    """Two-colored ribbon multigraph; edges join emerald to violet."""

    bipartite = True

    def __init__(self, emeralds, violets,
                 edges: dict[str, tuple[str, str]],
                 rotations: dict[str, tuple[str, ...]] | None,
                 base_node: str, base_edge: str):
        emeralds = tuple(sorted(str(x) for x in emeralds))
        violets = tuple(sorted(str(x) for x in violets))
        if set(emeralds) & set(violets):
            raise ValidationError("a node cannot be both emerald and violet")
        color = {x: EMERALD for x in emeralds}
        color.update({x: VIOLET for x in violets})
        norm = {}
        for e, (a, b) in edges.items():
            a, b = str(a), str(b)
            if a not in color or b not in color:
                raise ValidationError(f"edge {e!r} uses an undeclared node")
            if color[a] == color[b]:
                raise ValidationError(f"edge {e!r} joins two {color[a]} nodes")
            norm[e] = (a, b) if color[a] == EMERALD else (b, a)
        self.emeralds = emeralds
        self.violets = violets
        self._color = color
        super().__init__(norm, rotations, base_node, base_edge,
                         nodes=emeralds + violets)

    # -- color helpers ----------------------------------------------------

    def color(self, node: str) -> str:
        return self._color[node]

    def side_nodes(self, side: str) -> tuple[str, ...]:
        if side == EMERALD:
            return self.emeralds
        if side == VIOLET:
            return self.violets
        raise ValueError(f"unknown side {side!r}")

    def emerald_end(self, edge: str) -> str:
        return self.edges[edge][0]

    def violet_end(self, edge: str) -> str:
        return self.edges[edge][1]

    def end_of_color(self, edge: str, color: str) -> str:
        return self.edges[edge][0] if color == EMERALD else self.edges[edge][1]

    # -- derived graphs ----------------------------------------------------

    def transpose(self) -> "RibbonBipartiteGraph":
        """Swap colors; rotations and base are untouched."""
        return RibbonBipartiteGraph(
            self.violets, self.emeralds,
            dict(self.edges), dict(self.rotations),
            self.base_node, self.base_edge)

    def reversed_setup(self) -> "RibbonBipartiteGraph":
        """All rotations reversed; base edge becomes b0b1- (computed here,
        in the original structure)."""
        rev = {x: tuple(reversed(r)) for x, r in self.rotations.items()}
        new_base_edge = self.prev_edge(self.base_node, self.base_edge)
        return RibbonBipartiteGraph(
            self.emeralds, self.violets, dict(self.edges), rev,
            self.base_node, new_base_edge)

    def with_base(self, base_node: str, base_edge: str) -> "RibbonBipartiteGraph":
        return RibbonBipartiteGraph(
            self.emeralds, self.violets, dict(self.edges),
            dict(self.rotations), base_node, base_edge)

    def with_rotations(self, rotations: dict[str, tuple[str, ...]]) -> "RibbonBipartiteGraph":
        rot = dict(self.rotations)
        rot.update(rotations)
        return RibbonBipartiteGraph(
            self.emeralds, self.violets, dict(self.edges), rot,
            self.base_node, self.base_edge)

    def subgraph(self, node_subset, base_node: str, base_edge: str) -> "RibbonBipartiteGraph":
        """Induced subgraph on a node subset, rotations inherited."""
        keep = set(node_subset)
        edges = {e: (a, b) for e, (a, b) in self.edges.items()
                 if a in keep and b in keep}
        rot = {x: tuple(e for e in self.rotations[x] if e in edges)
               for x in self.nodes if x in keep}
        return RibbonBipartiteGraph(
            [x for x in self.emeralds if x in keep],
            [x for x in self.violets if x in keep],
            edges, rot, base_node, base_edge)

    def degree_vector(self, tree: frozenset[str], side: str) -> dict[str, int]:
        """The hypertree realized by ``tree`` on ``side``: degree - 1."""
        vals = {x: -1 for x in self.side_nodes(side)}
        pos = 0 if side == EMERALD else 1
        for e in tree:
            vals[self.edges[e][pos]] += 1
        return vals


def bip(g: RibbonGraph) -> RibbonBipartiteGraph:
    """Subdivision of an ordinary ribbon graph into a ribbon bipartite graph.

    The vertices of ``g`` become violet nodes, its edges become emerald
    nodes of degree two, and each edge splits into two half-edges named
    ``"<edge>|<vertex>"``.  Degree-two nodes admit a unique cyclic order,
    so the ribbon structure extends uniquely; the base pair carries over
    to the half-edge at the base node.
    """
    clash = set(g.nodes) & set(g.edge_ids)
    if clash:
        raise ValidationError(f"vertex/edge name clash: {sorted(clash)}")
    halves = {}
    for e, (a, b) in g.edges.items():
        halves[f"{e}|{a}"] = (e, a)
        halves[f"{e}|{b}"] = (e, b)
    rotations = {}
    for x in g.nodes:
        rotations[x] = tuple(f"{e}|{x}" for e in g.rotations[x])
    return RibbonBipartiteGraph(
        emeralds=g.edge_ids, violets=g.nodes, edges=halves,
        rotations=rotations, base_node=g.base_node,
        base_edge=f"{g.base_edge}|{g.base_node}")
