"""The signed Γ-graph of a marked tree pair and its 2-colourings."""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .group import GroupElement
from .trees import carets

Edge = Tuple[int, int, int]  # (u, v, sign) with sign in {+1, -1}


@dataclass(frozen=True)
class SignedGraph:
    """Vertices 1..n; ``edges`` is a multiset kept as a tuple.

    ``caret_spans[i]`` records the (a, m, b) span of the caret that produced
    edge i, in the numbering of its own tree (empty for hand-built graphs).
    """

    n: int
    edges: Tuple[Edge, ...]
    caret_spans: Tuple[Tuple[int, int, int], ...] = ()

    @property
    def positive(self) -> List[Edge]:
        return [e for e in self.edges if e[2] > 0]

    @property
    def negative(self) -> List[Edge]:
        return [e for e in self.edges if e[2] < 0]

    def unsigned(self) -> List[Tuple[int, int]]:
        return [(u, v) for u, v, _ in self.edges]

    def flipped(self) -> "SignedGraph":
        return SignedGraph(self.n, tuple((u, v, -s) for u, v, s in self.edges), self.caret_spans)

    def relabelled(self, perm: Dict[int, int]) -> "SignedGraph":
        return SignedGraph(self.n, tuple((perm[u], perm[v], s) for u, v, s in self.edges))

    def edge_multiset(self) -> List[Edge]:
        return sorted((min(u, v), max(u, v), s) for u, v, s in self.edges)

    def to_dict(self) -> dict:
        return {"n": self.n,
                "edges": [{"u": u, "v": v, "sign": "+" if s > 0 else "-"}
                          for u, v, s in self.edge_multiset()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def gamma_graph(g: GroupElement) -> SignedGraph:
    edges: List[Edge] = []
    spans = []
    for a, m, b in carets(g.t_plus):
        edges.append((g.glued(a), g.glued(m), +1))
        spans.append((a, m, b))
    for a, m, b in carets(g.t_minus):
        edges.append((a, m, -1))
        spans.append((a, m, b))
    return SignedGraph(g.n, tuple(edges), tuple(spans))


def two_colouring(G: SignedGraph) -> Optional[Dict[int, int]]:
    """Breadth-first 2-colouring with colour(1) = +1 (signs ignored).

    Returns None if the graph is not bipartite.  Components not containing
    vertex 1 start from their smallest vertex with colour +1.
    """
    adj: Dict[int, List[int]] = {v: [] for v in range(1, G.n + 1)}
    for u, v, _ in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    colour: Dict[int, int] = {}
    for root in range(1, G.n + 1):
        if root in colour:
            continue
        colour[root] = +1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in colour:
                    colour[v] = -colour[u]
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return None
    return colour


def is_oriented(g: GroupElement) -> bool:
    return two_colouring(gamma_graph(g)) is not None


def chromatic_value(G: SignedGraph, q: int) -> int:
    """Number of proper q-colourings, by brute force (q <= 6)."""
    if q < 0:
        raise ValueError("q must be non-negative")
    if any(u == v for u, v, _ in G.edges):
        return 0
    if q > 6:
        from .tutte import chromatic_from_tutte
        return chromatic_from_tutte(G, q)
    pairs = sorted({(min(u, v) - 1, max(u, v) - 1) for u, v, _ in G.edges})
    count = 0
    for col in itertools.product(range(q), repeat=G.n):
        if all(col[a] != col[b] for a, b in pairs):
            count += 1
    return count


def is_connected(G: SignedGraph) -> bool:
    seen = {1}
    stack = [1]
    adj: Dict[int, List[int]] = {v: [] for v in range(1, G.n + 1)}
    for u, v, _ in G.edges:
        adj[u].append(v)
        adj[v].append(u)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == G.n
