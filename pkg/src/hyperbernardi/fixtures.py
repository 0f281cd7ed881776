"""Named test instances with provenance-tagged expected values.

Provenance discipline:

* ``paper-exact``   -- stated in prose (labels, orders, decision lists,
                       polynomial values); authoritative.
* ``figure-transcription`` -- read off a drawing (coordinates, marked
                       trees, rotation arrows); recorded with notes and
                       rebuilt from the coordinates by angle sweeps so
                       the transcription is reproducible.
* ``derived``       -- computed here by an independent oracle.

Every expected value in a fixture carries one of these tags; the
registry refuses untagged values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .graph import RibbonBipartiteGraph, RibbonGraph

PROVENANCE_TAGS = ("paper-exact", "figure-transcription", "derived")


@dataclass
class Fixture:
    name: str
    provenance: str
    graph: object
    notes: str = ""
    expected: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCE_TAGS:
            raise ValueError(f"unknown provenance tag {self.provenance!r}")
        for key, item in self.expected.items():
            if (not isinstance(item, tuple) or len(item) != 2
                    or item[1] not in PROVENANCE_TAGS):
                raise ValueError(f"expected value {key!r} lacks a provenance tag")

    def value(self, key: str):
        return self.expected[key][0]


def rotations_from_coordinates(coords: dict[str, tuple[float, float]],
                               edges: dict[str, tuple[str, str]],
                               direction) -> dict[str, tuple[str, ...]]:
    """Cyclic orders by angle sweep around each node.

    ``direction`` maps a node to "ccw" or "cw" (or is a single string).
    Counterclockwise = increasing angle in standard orientation.
    """
    incident: dict[str, list[str]] = {x: [] for x in coords}
    for e, (a, b) in edges.items():
        incident[a].append(e)
        incident[b].append(e)
    out = {}
    for x, inc in incident.items():
        def angle(e):
            a, b = edges[e]
            other = b if a == x else a
            dx = coords[other][0] - coords[x][0]
            dy = coords[other][1] - coords[x][1]
            return math.atan2(dy, dx)
        ordered = sorted(inc, key=angle)
        mode = direction if isinstance(direction, str) else direction[x]
        if mode == "cw":
            ordered = list(reversed(ordered))
        elif mode != "ccw":
            raise ValueError(f"direction must be ccw/cw, got {mode!r}")
        out[x] = tuple(ordered)
    return out


# -- C4: the 4-cycle (subdivision of a doubled edge) ------------------------

def c4() -> Fixture:
    edges = {"c1": ("e1", "v1"), "c2": ("e2", "v1"),
             "c3": ("e2", "v2"), "c4": ("e1", "v2")}
    rotations = {"v1": ("c1", "c2"), "e2": ("c2", "c3"),
                 "v2": ("c3", "c4"), "e1": ("c4", "c1")}
    g = RibbonBipartiteGraph(["e1", "e2"], ["v1", "v2"], edges, rotations,
                             base_node="v1", base_edge="c1")
    return Fixture(
        name="c4", provenance="derived", graph=g,
        notes="Smallest even cycle; equals the subdivision of two parallel "
              "edges on two vertices.",
        expected={
            "hypertrees_emerald": ([{"e1": 1, "e2": 0}, {"e1": 0, "e2": 1}], "derived"),
            "interior": ((1, 1), "derived"),
            "vcut_jaeger_violet_order": ([frozenset({"c2", "c3", "c4"}),
                                          frozenset({"c1", "c2", "c4"})], "derived"),
            "h_vector": ((1, 1), "derived"),
            "ehrhart_prefix": ([1, 4, 9], "derived"),
        })


# -- the running seven-node graph (three violet, four emerald nodes) --------

_RUN_COORDS = {"e0": (0.0, 0.1), "v1": (3.0, 2.0), "v0": (-3.0, 2.0),
               "e1": (3.0, 5.0), "e2": (-3.0, 5.0), "v2": (0.0, 6.9),
               "e3": (0.0, 3.55)}

_RUN_EDGES = {"e0v0": ("e0", "v0"), "e0v1": ("e0", "v1"),
              "e1v1": ("e1", "v1"), "e1v2": ("e1", "v2"),
              "e2v0": ("e2", "v0"), "e2v2": ("e2", "v2"),
              "e3v0": ("e3", "v0"), "e3v1": ("e3", "v1"),
              "e3v2": ("e3", "v2")}


def running_graph() -> Fixture:
    """The nine-edge running example with the all-counterclockwise plane
    rotation (FIX-A)."""
    rot = rotations_from_coordinates(_RUN_COORDS, _RUN_EDGES, "ccw")
    g = RibbonBipartiteGraph(["e0", "e1", "e2", "e3"], ["v0", "v1", "v2"],
                             _RUN_EDGES, rot, base_node="v0", base_edge="e0v0")
    left_tree = frozenset({"e0v0", "e1v1", "e1v2", "e2v2", "e3v0", "e3v2"})
    right_tree = frozenset({"e0v1", "e1v1", "e1v2", "e2v2", "e3v0", "e3v2"})
    return Fixture(
        name="running", provenance="figure-transcription", graph=g,
        notes="Plane drawing with counterclockwise rotation everywhere; "
              "rotations rebuilt from the drawing coordinates.",
        expected={
            "hypertree_count": (7, "paper-exact"),
            "interior": ((1, 3, 3), "paper-exact"),
            "left_tree": (left_tree, "figure-transcription"),
            "right_tree": (right_tree, "figure-transcription"),
            "left_tree_emerald_t_order": (
                ("e0v1", "e0v0", "e3v1", "e3v2", "e1v1",
                 "e1v2", "e2v0", "e2v2", "e3v0"), "paper-exact"),
            "left_tree_violet_t_order": (
                ("e2v0", "e3v0", "e2v2", "e1v2", "e0v1",
                 "e3v1", "e1v1", "e3v2", "e0v0"), "paper-exact"),
            "left_tree_order_on_E": (("e0", "e3", "e1", "e2"), "paper-exact"),
            "left_tree_order_on_V": (("v0", "v2", "v1"), "paper-exact"),
            "faces_planar": (4, "derived"),
        })


def running_graph_knot_setup() -> Fixture:
    """FIX-A with counterclockwise rotation at violet and clockwise at
    emerald nodes; same base.  Its seven V-cut Jaeger trees, in shelling
    order, were read off the seven panels of the ribbon-surface figure."""
    direction = {x: ("ccw" if x.startswith("v") else "cw") for x in _RUN_COORDS}
    rot = rotations_from_coordinates(_RUN_COORDS, _RUN_EDGES, direction)
    g = RibbonBipartiteGraph(["e0", "e1", "e2", "e3"], ["v0", "v1", "v2"],
                             _RUN_EDGES, rot, base_node="v0", base_edge="e0v0")
    shelling = [
        frozenset({"e0v1", "e1v1", "e1v2", "e2v2", "e2v0", "e3v1"}),
        frozenset({"e0v1", "e1v2", "e2v2", "e2v0", "e3v2", "e3v1"}),
        frozenset({"e0v1", "e1v1", "e2v0", "e3v0", "e3v2", "e3v1"}),
        frozenset({"e0v1", "e1v1", "e1v2", "e2v0", "e3v0", "e3v2"}),
        frozenset({"e0v0", "e0v1", "e1v2", "e2v2", "e2v0", "e3v2"}),
        frozenset({"e0v0", "e0v1", "e1v2", "e2v0", "e3v0", "e3v2"}),
        frozenset({"e0v0", "e0v1", "e1v1", "e1v2", "e2v0", "e3v0"}),
    ]
    return Fixture(
        name="running-knot", provenance="figure-transcription", graph=g,
        notes="Rotation rule stated in prose (ccw at violet, cw at emerald "
              "over the same drawing); the seven trees and their order "
              "transcribed from the figure panels.",
        expected={
            "vcut_jaeger_violet_order": (shelling, "figure-transcription"),
            "h_vector": ((1, 3, 3), "paper-exact"),
            "incompatible_pair": ((1, 2), "paper-exact"),  # 0-based: 2nd, 3rd
        })


def process_example() -> Fixture:
    """The walk-through instance (FIX-B): same underlying graph with the
    transposed coloring, clockwise at emerald and counterclockwise at
    violet nodes, base at the left emerald node with the vertical edge."""
    coords = {"L": (-3.0, 2.0), "R": (3.0, 2.0), "T": (0.0, 6.9),
              "B": (0.0, 0.1), "UL": (-3.0, 5.0), "UR": (3.0, 5.0),
              "C": (0.0, 3.55)}
    edges = {"L-B": ("L", "B"), "L-UL": ("L", "UL"), "L-C": ("L", "C"),
             "R-B": ("R", "B"), "R-UR": ("R", "UR"), "R-C": ("R", "C"),
             "T-UL": ("T", "UL"), "T-UR": ("T", "UR"), "T-C": ("T", "C")}
    direction = {x: ("cw" if x in ("L", "R", "T") else "ccw") for x in coords}
    rot = rotations_from_coordinates(coords, edges, direction)
    g = RibbonBipartiteGraph(["L", "R", "T"], ["B", "UL", "UR", "C"],
                             edges, rot, base_node="L", base_edge="L-UL")
    return Fixture(
        name="process-example", provenance="figure-transcription", graph=g,
        notes="Nodes named left/right/top and bottom/upper-left/upper-right/"
              "center; rotation directions and base stated in prose, "
              "coordinates shared with the running drawing.",
        expected={
            "hypertree": ({"L": 1, "T": 0, "R": 2}, "paper-exact"),
            "htE_cutE_decisions": (
                ("kept", "removed", "removed", "kept", "removed",
                 "kept", "kept", "kept", "kept"), "paper-exact"),
            "htE_cutE_steps": (9, "paper-exact"),
            "induced_order_on_E": (("L", "T", "R"), "paper-exact"),
            "embedding_inactivities": ((1, 1), "paper-exact"),
            "htE_cutV_first_current": ("T-UL", "paper-exact"),
            "htE_cutV_second_current": ("L-UL", "paper-exact"),
            "receiving_transfer_possible": ({"L": 0, "T": 1, "R": 2}, "paper-exact"),
        })


def tour_example() -> Fixture:
    """Ordinary four-vertex graph whose tree tour is listed in prose."""
    coords = {"v1": (8.0, 0.0), "v2": (4.0, 1.5), "v3": (0.0, 0.0),
              "v4": (4.0, -1.5)}
    edges = {"e1": ("v1", "v2"), "e2": ("v2", "v3"), "e3": ("v3", "v4"),
             "e4": ("v4", "v1"), "e5": ("v2", "v4")}
    rot = rotations_from_coordinates(coords, edges, "ccw")
    g = RibbonGraph(edges, rot, base_node="v1", base_edge="e1")
    return Fixture(
        name="tour-example", provenance="paper-exact", graph=g,
        notes="Plane-positive ribbon structure; the full tour of the tree "
              "{e1, e3, e5} is listed in the caption.",
        expected={
            "tree": (frozenset({"e1", "e3", "e5"}), "paper-exact"),
            "tour_pairs": ((("v1", "e1"), ("v2", "e2"), ("v2", "e5"),
                            ("v4", "e3"), ("v3", "e2"), ("v3", "e3"),
                            ("v4", "e4"), ("v4", "e5"), ("v2", "e1"),
                            ("v1", "e4")), "paper-exact"),
            "edge_order": (("e1", "e2", "e5", "e3", "e4"), "paper-exact"),
        })


def numbered_order_example() -> Fixture:
    """FIX-A tree with the 0..8 edge numbering whose two internally
    semi-passive edges are highlighted in the drawing."""
    fx = running_graph()
    numbering = ("e0v1", "e0v0", "e3v1", "e3v2", "e1v1",
                 "e1v2", "e2v0", "e2v2", "e3v0")
    return Fixture(
        name="numbered-order", provenance="figure-transcription", graph=fx.graph,
        notes="Edge numbering 0..8 and red (semi-passive) edges transcribed "
              "from the drawing; the numbering coincides with the emerald "
              "T-order of the marked tree.",
        expected={
            "tree": (frozenset({"e0v0", "e1v1", "e1v2", "e2v2",
                                "e3v0", "e3v2"}), "figure-transcription"),
            "edge_order": (numbering, "figure-transcription"),
            "semi_passive": (frozenset({"e1v2", "e3v0"}), "figure-transcription"),
        })


def k5_setup() -> Fixture:
    """Complete graph on five vertices with the mixed rotation (FIX-D):
    clockwise at two vertices, counterclockwise at three; base at the top
    vertex with the upper-left edge.  Two V-cut Jaeger trees of the
    subdivision, read off the panels, are incompatible."""
    coords = {"p1": (2.0, 0.0), "p2": (10.0, 0.0), "p3": (12.0, 6.0),
              "p4": (6.0, 10.0), "p5": (0.0, 6.0)}
    pairs = [("p1", "p2"), ("p2", "p3"), ("p3", "p4"), ("p4", "p5"),
             ("p5", "p1"), ("p1", "p3"), ("p3", "p5"), ("p5", "p2"),
             ("p2", "p4"), ("p4", "p1")]
    edges = {f"{a}{b}": (a, b) for a, b in pairs}
    direction = {"p1": "ccw", "p2": "ccw", "p3": "cw", "p4": "ccw", "p5": "cw"}
    rot = rotations_from_coordinates(coords, edges, direction)
    g = RibbonGraph(edges, rot, base_node="p4", base_edge="p4p5")

    def tree(half_pairs):
        return frozenset(f"{e}|{v}" for e, v in half_pairs)

    tree_a = tree([("p1p2", "p1"), ("p1p2", "p2"), ("p2p3", "p2"),
                   ("p2p3", "p3"), ("p3p4", "p4"), ("p4p5", "p5"),
                   ("p5p1", "p5"), ("p5p1", "p1"), ("p1p3", "p3"),
                   ("p3p5", "p3"), ("p5p2", "p5"), ("p2p4", "p2"),
                   ("p2p4", "p4"), ("p4p1", "p1")])
    tree_b = tree([("p1p2", "p2"), ("p2p3", "p2"), ("p2p3", "p3"),
                   ("p3p4", "p4"), ("p4p5", "p5"), ("p5p1", "p1"),
                   ("p5p1", "p5"), ("p1p3", "p1"), ("p1p3", "p3"),
                   ("p3p5", "p3"), ("p5p2", "p2"), ("p2p4", "p4"),
                   ("p4p1", "p4"), ("p4p1", "p1")])
    return Fixture(
        name="k5", provenance="figure-transcription", graph=g,
        notes="Rotation directions read from the drawn arrows (cw at the "
              "right and left vertices, ccw at the other three); the two "
              "trees from the second and third panels.",
        expected={
            "tree_a": (tree_a, "figure-transcription"),
            "tree_b": (tree_b, "figure-transcription"),
            "incompatible": (True, "paper-exact"),
        })


def matching_example() -> Fixture:
    """Ordinary graph (four vertices, five edges) with a V-cut Jaeger
    tree of its subdivision whose violet T-order numbering, semi-passive
    edges and inactive nodes are all marked in the drawing."""
    coords = {"w1": (0.0, 0.0), "w2": (4.0, -2.0), "w3": (8.0, 0.0),
              "w4": (4.0, 2.0)}
    edges = {"g1": ("w1", "w2"), "g2": ("w2", "w3"), "g3": ("w1", "w4"),
             "g4": ("w3", "w4"), "g5": ("w2", "w4")}
    rot = rotations_from_coordinates(coords, edges, "ccw")
    g = RibbonGraph(edges, rot, base_node="w1", base_edge="g1")
    tree = frozenset({"g2|w3", "g1|w2", "g3|w1", "g3|w4", "g4|w4",
                      "g5|w4", "g2|w2", "g5|w2"})
    numbering = ("g1|w1", "g3|w1", "g5|w4", "g1|w2", "g2|w2",
                 "g4|w3", "g2|w3", "g5|w2", "g4|w4", "g3|w4")
    return Fixture(
        name="matching-example", provenance="figure-transcription", graph=g,
        notes="Positive plane rotation; base point left of the leftmost "
              "vertex; tree, 0..9 numbering, red edges and circled nodes "
              "transcribed from the drawing.",
        expected={
            "tree": (tree, "figure-transcription"),
            "violet_t_order": (numbering, "figure-transcription"),
            "semi_passive": (frozenset({"g3|w4", "g5|w2"}), "figure-transcription"),
            "inactive_violet": (frozenset({"w2", "w4"}), "figure-transcription"),
            "inactive_emerald": (frozenset({"g3", "g5"}), "figure-transcription"),
        })


def single_edge() -> Fixture:
    g = RibbonBipartiteGraph(["e"], ["v"], {"ev": ("e", "v")}, None,
                             base_node="v", base_edge="ev")
    return Fixture(name="single-edge", provenance="derived", graph=g,
                   expected={"interior": ((1,), "derived")})


def noncrossing_setup(m: int, n: int) -> RibbonBipartiteGraph:
    """Complete bipartite graph on (m+1) emerald and (n+1) violet nodes
    drawn on two horizontal lines (emerald below), counterclockwise
    rotation, base at the lower-left emerald node, base edge the diagonal
    to the upper-right violet node.

    With this setup the E-cut Jaeger trees are exactly the non-crossing
    trees of the drawing.
    """
    if m < 0 or n < 0:
        raise ValueError("need m, n >= 0")
    emeralds = [f"a{i}" for i in range(m + 1)]
    violets = [f"b{j}" for j in range(n + 1)]
    coords = {f"a{i}": (float(i), 0.0) for i in range(m + 1)}
    coords.update({f"b{j}": (float(j), 1.0) for j in range(n + 1)})
    edges = {f"a{i}b{j}": (f"a{i}", f"b{j}")
             for i in range(m + 1) for j in range(n + 1)}
    rot = rotations_from_coordinates(coords, edges, "ccw")
    return RibbonBipartiteGraph(emeralds, violets, edges, rot,
                                base_node="a0", base_edge=f"a0b{n}")


def is_noncrossing_tree(g: RibbonBipartiteGraph, tree: frozenset[str]) -> bool:
    """No two tree edges a_i b_j, a_k b_l with i < k and j > l (or the
    mirror image) in the two-line drawing."""
    def span(e):
        a, b = g.edges[e]
        return int(a[1:]), int(b[1:])
    spans = [span(e) for e in tree]
    for (i, j), (k, l) in combinations(spans, 2):
        if (i - k) * (j - l) < 0:
            return False
    return True


def torus_k4() -> RibbonGraph:
    """Complete graph on four vertices with the rotation that lists the
    neighbors in increasing label order at every vertex; this rotation
    system has genus one."""
    edges = {"12": ("u1", "u2"), "13": ("u1", "u3"), "14": ("u1", "u4"),
             "23": ("u2", "u3"), "24": ("u2", "u4"), "34": ("u3", "u4")}
    rotations = {"u1": ("12", "13", "14"), "u2": ("12", "23", "24"),
                 "u3": ("13", "23", "34"), "u4": ("14", "24", "34")}
    return RibbonGraph(edges, rotations, base_node="u1", base_edge="12")


REGISTRY = {
    "c4": c4,
    "running": running_graph,
    "running-knot": running_graph_knot_setup,
    "process-example": process_example,
    "tour-example": tour_example,
    "numbered-order": numbered_order_example,
    "k5": k5_setup,
    "matching-example": matching_example,
    "single-edge": single_edge,
}


def load(name: str) -> Fixture:
    if name not in REGISTRY:
        raise KeyError(f"unknown fixture {name!r}; have {sorted(REGISTRY)}")
    return REGISTRY[name]()
