"""Link diagrams of tree pairs via the medial construction on Γ(g).

Γ is embedded with its vertices on the axis (a circle for T), positive edges
above/outside and negative edges below/inside.  Every Γ-edge carries one
crossing; every corner between consecutive edges around a vertex carries one
strand segment.  Slots at a crossing are listed counterclockwise; for an edge
(p, q) they are

    0: corner at q before the edge     1: corner at p after the edge
    2: corner at p before the edge     3: corner at q after the edge

so the sectors (1, 2) and (3, 0) lie inside the shaded disks of p and q.
The over strand is chosen so that those shaded sectors are the A-regions for
positive edges and the B-regions for negative ones; the face graph of the
diagram is then Γ with its signs, as the bracket/Potts identity requires.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .gamma import SignedGraph, gamma_graph, two_colouring
from .group import GroupElement


class NotOrientedError(ValueError):
    """The element is not in the oriented subgroup (Γ is not bipartite)."""


@dataclass(frozen=True)
class Crossing:
    slots: Tuple[int, int, int, int]
    over: Tuple[int, int]
    edge_sign: int
    edge: int
    ends: Tuple[int, int]  # Γ-vertices (p, q)


@dataclass(frozen=True)
class LinkDiagram:
    n_leaves: int
    graph: SignedGraph
    crossings: Tuple[Crossing, ...]
    n_segments: int
    # corner (vertex, edge_from, edge_to) carried by each segment
    corners: Tuple[Tuple[int, int, int], ...]
    # ((crossing, slot), (crossing, slot)): end 0 at edge_from, end 1 at edge_to
    seg_ends: Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]
    rotation: Tuple[Tuple[int, ...], ...]  # rotation[v - 1] = ccw edge order at v
    free_loops: int = 0

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def pd_array(self) -> np.ndarray:
        """(X, 4) segment ids, rotated so under slots are 0, 2 and over slots 1, 3."""
        out = np.zeros((len(self.crossings), 4), dtype=np.int64)
        for i, x in enumerate(self.crossings):
            s = x.slots
            out[i] = s if x.over == (1, 3) else (s[1], s[2], s[3], s[0])
        return out

    def to_dict(self, signs: Optional[List[int]] = None) -> dict:
        xs = []
        for i, x in enumerate(self.crossings):
            d = {"slots": list(x.slots), "over": list(x.over), "edge_sign": x.edge_sign}
            if signs is not None:
                d["sign"] = signs[i]
            xs.append(d)
        return {"n_leaves": self.n_leaves, "n_segments": self.n_segments,
                "free_loops": self.free_loops, "crossings": xs}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class OrientedLinkDiagram:
    base: LinkDiagram
    colouring: Tuple[int, ...]  # colouring[v - 1] in {+1, -1}
    # +1: segment runs from end 0 to end 1
    orientation: Tuple[int, ...]
    crossing_sign: Tuple[int, ...]
    # (incoming over slot, incoming under slot) in canonical PD positions
    incoming: Tuple[Tuple[int, int], ...]

    @property
    def writhe(self) -> int:
        return sum(self.crossing_sign)

    def to_json(self) -> str:
        return json.dumps(self.base.to_dict(list(self.crossing_sign)), sort_keys=True)


def _rotation_system(g: GroupElement, G: SignedGraph) -> List[List[int]]:
    n = g.n
    upper: Dict[int, list] = {v: [] for v in range(1, n + 1)}
    lower: Dict[int, list] = {v: [] for v in range(1, n + 1)}
    for i, ((u, v, s), (a, m, _)) in enumerate(zip(G.edges, G.caret_spans)):
        length = m - a
        if s > 0:
            # keys sort right-going arcs innermost first, then left-going outermost first
            upper[u].append(((0, length), i))
            upper[v].append(((1, -length), i))
        else:
            lower[u].append(((1, -length), i))
            lower[v].append(((0, length), i))
    return [[i for _, i in sorted(upper[v])] + [i for _, i in sorted(lower[v])]
            for v in range(1, n + 1)]


def _build(g: GroupElement) -> LinkDiagram:
    G = gamma_graph(g)
    rot = _rotation_system(g, G)
    n_edges = len(G.edges)
    pos: Dict[Tuple[int, int], int] = {}
    for v, order in enumerate(rot, start=1):
        for k, e in enumerate(order):
            pos[(v, e)] = k

    corners = []
    for v, order in enumerate(rot, start=1):
        d = len(order)
        for k in range(d):
            corners.append((v, order[k], order[(k + 1) % d]))
    seg_of = {(v, e, f): s for s, (v, e, f) in enumerate(corners)}

    def succ(v: int, e: int) -> int:
        order = rot[v - 1]
        return order[(pos[(v, e)] + 1) % len(order)]

    def pred(v: int, e: int) -> int:
        order = rot[v - 1]
        return order[(pos[(v, e)] - 1) % len(order)]

    crossings = []
    # corner -> slot where it leaves its first edge / enters its second edge
    after: Dict[Tuple[int, int, int], Tuple[int, int]] = {}
    before: Dict[Tuple[int, int, int], Tuple[int, int]] = {}
    for i, (p, q, s) in enumerate(G.edges):
        c0, c1 = (q, pred(q, i), i), (p, i, succ(p, i))
        c2, c3 = (p, pred(p, i), i), (q, i, succ(q, i))
        before[c0], after[c1], before[c2], after[c3] = (i, 0), (i, 1), (i, 2), (i, 3)
        slots = (seg_of[c0], seg_of[c1], seg_of[c2], seg_of[c3])
        crossings.append(Crossing(slots, (1, 3) if s > 0 else (0, 2), s, i, (p, q)))
    seg_ends = [(after[cn], before[cn]) for cn in corners]

    return LinkDiagram(
        n_leaves=g.n, graph=G, crossings=tuple(crossings), n_segments=len(corners),
        corners=tuple(corners), seg_ends=tuple(seg_ends),
        rotation=tuple(tuple(r) for r in rot), free_loops=1 if n_edges == 0 else 0)


@lru_cache(maxsize=4096)
def build_diagram(g: GroupElement) -> LinkDiagram:
    return _build(g)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def count(self) -> int:
        return sum(1 for i in range(len(self.parent)) if self.find(i) == i)


def component_count(D: LinkDiagram) -> int:
    uf = _UnionFind(D.n_segments)
    for x in D.crossings:
        uf.union(x.slots[0], x.slots[2])
        uf.union(x.slots[1], x.slots[3])
    return uf.count() + D.free_loops


def c_function(g: GroupElement) -> int:
    return component_count(build_diagram(g)) - g.n


def euler_characteristic(D: LinkDiagram) -> int:
    """V - E + F of the embedded Γ-graph; 2 means the embedding is planar."""
    G = D.graph
    if not G.edges:
        return 2
    pos = {}
    for v, order in enumerate(D.rotation, start=1):
        for k, e in enumerate(order):
            pos[(v, e)] = k
    seen = set()
    faces = 0
    for i, (u, v, _) in enumerate(G.edges):
        for dart in ((i, u), (i, v)):
            if dart in seen:
                continue
            faces += 1
            e, tail = dart
            while (e, tail) not in seen:
                seen.add((e, tail))
                a, b, _ = G.edges[e]
                head = b if tail == a else a
                order = D.rotation[head - 1]
                # next dart around the face: turn to the cw neighbour at the head
                e = order[(pos[(head, e)] - 1) % len(order)]
                tail = head
    return G.n - len(G.edges) + faces


def orient(D: LinkDiagram, colouring: Dict[int, int]) -> OrientedLinkDiagram:
    """Orient each segment ccw around its shaded disk if that vertex is +, cw if -."""
    orientation = tuple(1 if colouring[v] > 0 else -1 for v, _, _ in D.corners)
    incoming_at: Dict[Tuple[int, int], bool] = {}
    for s, (end0, end1) in enumerate(D.seg_ends):
        incoming_at[end1] = orientation[s] > 0
        incoming_at[end0] = orientation[s] < 0
    signs = []
    incoming = []
    for i, x in enumerate(D.crossings):
        rot = 0 if x.over == (1, 3) else 1  # canonical position = (slot - rot) % 4
        ins = [(k - rot) % 4 for k in range(4) if incoming_at[(i, k)]]
        if len(ins) != 2 or (ins[0] - ins[1]) % 2 == 0:
            raise RuntimeError(f"inconsistent orientation at crossing {i}")
        o_in = next(k for k in ins if k % 2 == 1)
        u_in = next(k for k in ins if k % 2 == 0)
        signs.append(1 if (u_in - o_in) % 4 == 1 else -1)
        incoming.append((o_in, u_in))
    cols = tuple(colouring[v] for v in range(1, D.graph.n + 1))
    return OrientedLinkDiagram(D, cols, orientation, tuple(signs), tuple(incoming))


@lru_cache(maxsize=4096)
def oriented_diagram(g: GroupElement, reverse: bool = False) -> OrientedLinkDiagram:
    D = build_diagram(g)
    col = two_colouring(D.graph)
    if col is None:
        raise NotOrientedError("element is not in the oriented subgroup")
    if reverse:
        col = {v: -s for v, s in col.items()}
    return orient(D, col)


def writhe(g: GroupElement) -> int:
    return oriented_diagram(g).writhe


@dataclass(frozen=True)
class SplitDiagram:
    upper: Tuple[int, ...]  # crossing indices on positive edges
    lower: Tuple[int, ...]
    # boundary segments indexed left to right: (vertex, "W"/"E", segment)
    boundary: Tuple[Tuple[int, str, int], ...]


def split_boundary(g: GroupElement) -> SplitDiagram:
    D = build_diagram(g)
    upper = tuple(i for i, x in enumerate(D.crossings) if x.edge_sign > 0)
    lower = tuple(i for i, x in enumerate(D.crossings) if x.edge_sign < 0)
    sign = [x.edge_sign for x in D.crossings]
    boundary = []
    for s, (v, e, f) in enumerate(D.corners):
        if sign[e] > 0 and sign[f] < 0:
            boundary.append((v, "W", s))
        elif sign[e] < 0 and sign[f] > 0:
            boundary.append((v, "E", s))
    boundary.sort(key=lambda t: (t[0], t[1] != "W"))
    return SplitDiagram(upper, lower, tuple(boundary))
