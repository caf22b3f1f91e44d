"""Exact linear algebra: GF(2) rank, bicycle spaces, integer diagonalization."""

from __future__ import annotations

from math import gcd
from typing import List, Sequence, Tuple


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of row vectors packed as Python ints."""
    basis: List[int] = []  # kept with distinct leading bits
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def _spanning_forest(n: int, edges: Sequence[Tuple[int, int]]):
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree, other = [], []
    for i, (u, v) in enumerate(edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            other.append(i)
        else:
            parent[ru] = rv
            tree.append(i)
    return tree, other


def cycle_basis(n: int, edges: Sequence[Tuple[int, int]]) -> List[int]:
    """Fundamental cycles as edge bitmasks (vertices 1..n)."""
    tree, other = _spanning_forest(n, edges)
    adj = {v: [] for v in range(1, n + 1)}
    for i in tree:
        u, v = edges[i]
        adj[u].append((v, i))
        adj[v].append((u, i))

    def path_mask(a, b):
        # edges on the tree path a -> b, by DFS
        stack = [(a, 0, None)]
        seen = {a}
        while stack:
            node, mask, _ = stack.pop()
            if node == b:
                return mask
            for nxt, i in adj[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, mask ^ (1 << i), node))
        raise ValueError("vertices not connected in the forest")

    out = []
    for i in other:
        u, v = edges[i]
        out.append((1 << i) ^ (path_mask(u, v) if u != v else 0))
    return out


def cut_basis(n: int, edges: Sequence[Tuple[int, int]]) -> List[int]:
    """Vertex stars (edge bitmasks); they span the cut space."""
    stars = [0] * (n + 1)
    for i, (u, v) in enumerate(edges):
        if u != v:
            stars[u] ^= 1 << i
            stars[v] ^= 1 << i
    return stars[1:]


def bicycle_dimension(n: int, edges: Sequence[Tuple[int, int]]) -> int:
    """dim(cycle space ∩ cut space) over GF(2)."""
    cyc = cycle_basis(n, edges)
    cut = cut_basis(n, edges)
    d_cyc, d_cut = gf2_rank(cyc), gf2_rank(cut)
    return d_cyc + d_cut - gf2_rank(cyc + cut)


def diagonalize(M: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal entries of an integer matrix after unimodular row and
    column operations (Smith normal form, divisibility chain enforced)."""
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag: List[int] = []
    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                break
            # move a smaller remainder into the pivot position
            best = None
            for i in range(t + 1, rows):
                if A[i][t] and (best is None or abs(A[i][t]) < abs(best[1])):
                    best = (("r", i), A[i][t])
            for j in range(t + 1, cols):
                if A[t][j] and (best is None or abs(A[t][j]) < abs(best[1])):
                    best = (("c", j), A[t][j])
            (kind, k), _ = best
            if kind == "r":
                A[t], A[k] = A[k], A[t]
            else:
                for row in A:
                    row[t], row[k] = row[k], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    # enforce d_1 | d_2 | ...
    changed = True
    while changed:
        changed = False
        for a in range(len(diag)):
            for b in range(a + 1, len(diag)):
                g = gcd(diag[a], diag[b])
                if g != diag[a]:
                    diag[a], diag[b] = g, diag[a] * diag[b] // g
                    changed = True
    return diag


def count_solutions_mod(M: Sequence[Sequence[int]], n_vars: int, m: int) -> int:
    """Number of x in (Z/m)^n_vars with M x = 0 mod m."""
    d = diagonalize(M) if M else []
    count = m ** (n_vars - len(d))
    for di in d:
        count *= gcd(di, m)
    return count
