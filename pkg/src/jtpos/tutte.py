"""Tutte polynomials of multigraphs, by two independent methods.

Polynomials are dicts ``{(i, j): coeff}`` for coeff * x**i * y**j.  Graphs
are given as (n, edges) with vertices 1..n; loops and parallel edges are
allowed and signs are ignored.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .kernels import subset_histogram

Poly = Dict[Tuple[int, int], int]
SUBSET_BUDGET = 26


def _add(p: Poly, q: Poly, scale: int = 1) -> Poly:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + scale * c
        if out[k] == 0:
            del out[k]
    return out


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (a, b), c in p.items():
        for (d, e), f in q.items():
            k = (a + d, b + e)
            out[k] = out.get(k, 0) + c * f
    return {k: c for k, c in out.items() if c}


def evaluate(p: Poly, x, y):
    """Exact for int/Fraction arguments."""
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        x, y = Fraction(x), Fraction(y)
        return sum((c * x ** i * y ** j for (i, j), c in p.items()), Fraction(0))
    return sum(c * x ** i * y ** j for (i, j), c in p.items())


def _components(n: int, edges) -> int:
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    k = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            k -= 1
    return k


def tutte_subset(n: int, edges: Sequence[Tuple[int, int]]) -> Poly:
    """Subset expansion: sum over A of (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))."""
    E = len(edges)
    if E > SUBSET_BUDGET:
        raise ValueError(f"{E} edges exceed the subset-expansion budget of {SUBSET_BUDGET}")
    eu = np.array([u - 1 for u, _ in edges], dtype=np.int64)
    ev = np.array([v - 1 for _, v in edges], dtype=np.int64)
    hist = subset_histogram(n, eu, ev)
    r_full = n - _components(n, edges)
    out: Poly = {}
    for s in range(E + 1):
        for r in range(n + 1):
            cnt = int(hist[s, r])
            if not cnt:
                continue
            a, b = r_full - r, s - r
            # expand (x-1)^a (y-1)^b
            for i in range(a + 1):
                ci = comb(a, i) * (-1) ** (a - i)
                for j in range(b + 1):
                    cj = comb(b, j) * (-1) ** (b - j)
                    out[(i, j)] = out.get((i, j), 0) + cnt * ci * cj
    return {k: c for k, c in out.items() if c}


# ---------------------------------------------------------------- deletion-contraction

def _canonical(n: int, edges: Sequence[Tuple[int, int]]) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    """Relabel vertices by iterated colour refinement, ties broken by label.

    Two graphs with the same key are isomorphic (the key is a labelled edge
    multiset), so the memo never returns a wrong value; isomorphic graphs
    may still get different keys, which only costs a cache miss.
    """
    adj: Dict[int, List[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    colour = {v: len(adj[v]) for v in adj}
    for _ in range(n):
        sig = {v: (colour[v], tuple(sorted(colour[w] for w in adj[v]))) for v in adj}
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in adj}
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    order = sorted(adj, key=lambda v: (colour[v], v))
    relabel = {v: i + 1 for i, v in enumerate(order)}
    es = tuple(sorted((min(relabel[u], relabel[v]), max(relabel[u], relabel[v])) for u, v in edges))
    return n, es


def _contract(n: int, edges, u: int, v: int):
    """Merge v into u and renumber to 1..n-1."""
    def f(w):
        w = u if w == v else w
        return w - 1 if w > v else w
    return n - 1, [(f(a), f(b)) for a, b in edges]


def _geometric(m: int, head: Poly) -> Poly:
    """head + y + y^2 + ... + y^(m-1)."""
    out = dict(head)
    for j in range(1, m):
        out[(0, j)] = out.get((0, j), 0) + 1
    return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=200000)
def _dc(key) -> Tuple[Tuple[Tuple[int, int], int], ...]:
    n, edges = key
    loops = sum(1 for a, b in edges if a == b)
    edges = [e for e in edges if e[0] != e[1]]
    factor: Poly = {(0, loops): 1}
    if not edges:
        return tuple(sorted(factor.items()))
    # edge class at a vertex of minimum degree
    deg: Dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    w = min(deg, key=lambda v: (deg[v], v))
    a, b = next(e for e in edges if w in e)
    m = sum(1 for e in edges if e == (a, b))
    rest = [e for e in edges if e != (a, b)]
    contracted = dict(_dc(_canonical(*_contract(n, rest, a, b))))
    if _components(n, rest) > _components(n, edges):
        # bridge class
        res = _mul(_geometric(m, {(1, 0): 1}), contracted)
    else:
        deleted = dict(_dc(_canonical(n, rest)))
        res = _add(deleted, _mul(_geometric(m, {(0, 0): 1}), contracted))
    return tuple(sorted(_mul(factor, res).items()))


def tutte_dc(n: int, edges: Sequence[Tuple[int, int]]) -> Poly:
    """Memoized deletion-contraction on edge classes."""
    return dict(_dc(_canonical(n, list(edges))))


def tutte_poly(n: int, edges: Sequence[Tuple[int, int]], method: str = "dc") -> Poly:
    if method == "dc":
        return tutte_dc(n, edges)
    if method == "subset":
        return tutte_subset(n, edges)
    raise ValueError(f"unknown method {method!r}")


def chromatic_from_tutte(G, q: int) -> int:
    """P(q) = (-1)^(n-k) q^k T(1-q, 0)."""
    edges = G.unsigned()
    if any(u == v for u, v in edges):
        return 0
    k = _components(G.n, edges)
    T = tutte_dc(G.n, edges)
    return int((-1) ** (G.n - k) * q ** k * evaluate(T, 1 - q, 0))


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for (i, j), c in sorted(p.items(), reverse=True):
        mono = "*".join(s for s in (f"x^{i}" if i else "", f"y^{j}" if j else "") if s)
        parts.append(f"{c:+d}" + (f"*{mono}" if mono else ""))
    s = " ".join(parts)
    return s[1:] if s.startswith("+") else s
