"""State-sum kernels.

Each kernel has a numba version (plain loops, compiled with ``@njit``) and a
vectorized numpy version that processes states in chunks.  Set the
environment variable ``JTPOS_DISABLE_NUMBA=1`` before import to force the
numpy path; ``use_numba(False)`` switches at runtime (used by tests and the
benchmark).
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("JTPOS_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled by JTPOS_DISABLE_NUMBA")
    from numba import njit
    NUMBA_AVAILABLE = True
except ImportError:
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

_use_numba = NUMBA_AVAILABLE
CHUNK = 1 << 14


def use_numba(flag: bool) -> bool:
    """Select the backend; returns the previous setting.  No-op if numba is missing."""
    global _use_numba
    old = _use_numba
    _use_numba = bool(flag) and NUMBA_AVAILABLE
    return old


def backend() -> str:
    return "numba" if _use_numba else "numpy"


# ---------------------------------------------------------------- helpers

@njit(cache=True)
def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


@njit(cache=True)
def _find_par(parent, par, a):
    # returns (root, parity of a relative to root), compressing as it goes
    p = 0
    b = a
    while parent[b] != b:
        p ^= par[b]
        b = parent[b]
    root = b
    # second pass: point everything at the root
    q = p
    b = a
    while parent[b] != b:
        nxt = parent[b]
        nq = q ^ par[b]
        parent[b] = root
        par[b] = q
        q = nq
        b = nxt
    return root, p


def _propagate(lab, u, v, par=None, p=None):
    """Min-label propagation over edge lists (S, E); parity optional.  In place."""
    rows = np.arange(lab.shape[0])[:, None]
    while True:
        old = lab.copy()
        for e in range(u.shape[1]):
            ue, ve = u[:, e], v[:, e]
            r = rows[:, 0]
            lu, lv = lab[r, ue], lab[r, ve]
            down_u = lv < lu
            down_v = lu < lv
            if par is not None:
                pu, pv, pe = par[r, ue], par[r, ve], p[:, e]
                par[r[down_u], ue[down_u]] = (pv ^ pe)[down_u]
                par[r[down_v], ve[down_v]] = (pu ^ pe)[down_v]
            lab[r[down_u], ue[down_u]] = lv[down_u]
            lab[r[down_v], ve[down_v]] = lu[down_v]
        # pointer jumping
        if par is not None:
            par ^= np.take_along_axis(par, lab, axis=1)
        lab[:] = np.take_along_axis(lab, lab, axis=1)
        if np.array_equal(lab, old):
            return


# ---------------------------------------------------------------- bracket

@njit(cache=True)
def _bracket_hist_nb(pd, n_seg):
    X = pd.shape[0]
    hist = np.zeros((X + 1, n_seg + 1), np.int64)
    parent = np.empty(n_seg, np.int64)
    for mask in range(1 << X):
        for i in range(n_seg):
            parent[i] = i
        n_a = 0
        for c in range(X):
            s0, s1, s2, s3 = pd[c, 0], pd[c, 1], pd[c, 2], pd[c, 3]
            if (mask >> c) & 1:
                x, y = _find(parent, s0), _find(parent, s3)
                parent[x] = y
                x, y = _find(parent, s1), _find(parent, s2)
                parent[x] = y
            else:
                n_a += 1
                x, y = _find(parent, s0), _find(parent, s1)
                parent[x] = y
                x, y = _find(parent, s2), _find(parent, s3)
                parent[x] = y
        loops = 0
        for i in range(n_seg):
            if _find(parent, i) == i:
                loops += 1
        hist[n_a, loops] += 1
    return hist


def _smoothing_edges(pd, masks):
    """Pair edges for each state: bit 0 -> (0,1),(2,3); bit 1 -> (0,3),(1,2)."""
    X = pd.shape[0]
    bits = ((masks[:, None] >> np.arange(X)) & 1).astype(bool)
    S = len(masks)
    u = np.empty((S, 2 * X), np.int64)
    v = np.empty((S, 2 * X), np.int64)
    u[:, 0::2] = pd[:, 0]
    v[:, 0::2] = np.where(bits, pd[:, 3], pd[:, 1])
    u[:, 1::2] = np.where(bits, pd[:, 1], pd[:, 2])
    v[:, 1::2] = np.where(bits, pd[:, 2], pd[:, 3])
    return bits, u, v


def _bracket_hist_np(pd, n_seg):
    X = pd.shape[0]
    hist = np.zeros((X + 1, n_seg + 1), np.int64)
    total = 1 << X
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        bits, u, v = _smoothing_edges(pd, masks)
        lab = np.tile(np.arange(n_seg, dtype=np.int64), (len(masks), 1))
        if X:
            _propagate(lab, u, v)
        loops = (lab == np.arange(n_seg)).sum(axis=1)
        n_a = X - bits.sum(axis=1)
        np.add.at(hist, (n_a, loops), 1)
    return hist


def bracket_histogram(pd: np.ndarray, n_seg: int) -> np.ndarray:
    """hist[a, l] = number of smoothings with a A-smoothings and l loops.

    ``pd`` is the canonical (X, 4) array: under strand at slots 0, 2.
    """
    pd = np.ascontiguousarray(pd, dtype=np.int64)
    if _use_numba:
        return _bracket_hist_nb(pd, n_seg)
    return _bracket_hist_np(pd, n_seg)


# ---------------------------------------------------------------- Lipson

@njit(cache=True)
def _lipson_hist_nb(pd, n_seg):
    X = pd.shape[0]
    hist = np.zeros(X + 1, np.int64)
    parent = np.empty(n_seg, np.int64)
    par = np.empty(n_seg, np.int64)
    for mask in range(1 << X):
        for i in range(n_seg):
            parent[i] = i
            par[i] = 0
        ok = True
        n_b = 0
        # first the smoothing pairs (parity 0) ...
        for c in range(X):
            s0, s1, s2, s3 = pd[c, 0], pd[c, 1], pd[c, 2], pd[c, 3]
            if (mask >> c) & 1:
                n_b += 1
                a1, b1, a2, b2 = s0, s3, s1, s2
            else:
                a1, b1, a2, b2 = s0, s1, s2, s3
            ra, pa = _find_par(parent, par, a1)
            rb, pb = _find_par(parent, par, b1)
            if ra != rb:
                parent[ra] = rb
                par[ra] = pa ^ pb
            ra, pa = _find_par(parent, par, a2)
            rb, pb = _find_par(parent, par, b2)
            if ra != rb:
                parent[ra] = rb
                par[ra] = pa ^ pb
        # ... then the two loops at each crossing must differ (parity 1)
        for c in range(X):
            ra, pa = _find_par(parent, par, pd[c, 0])
            rb, pb = _find_par(parent, par, pd[c, 2])
            if ra == rb:
                if pa ^ pb != 1:
                    ok = False
                    break
            else:
                parent[ra] = rb
                par[ra] = pa ^ pb ^ 1
        if not ok:
            continue
        comps = 0
        for i in range(n_seg):
            if _find(parent, i) == i:
                comps += 1
        hist[n_b] += 1 << comps
    return hist


def _lipson_hist_np(pd, n_seg):
    X = pd.shape[0]
    hist = np.zeros(X + 1, np.int64)
    total = 1 << X
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        bits, u, v = _smoothing_edges(pd, masks)
        S = len(masks)
        cu = np.broadcast_to(pd[:, 0], (S, X))
        cv = np.broadcast_to(pd[:, 2], (S, X))
        U = np.concatenate([u, cu], axis=1)
        V = np.concatenate([v, cv], axis=1)
        P = np.concatenate([np.zeros((S, 2 * X), np.int64), np.ones((S, X), np.int64)], axis=1)
        lab = np.tile(np.arange(n_seg, dtype=np.int64), (S, 1))
        par = np.zeros((S, n_seg), np.int64)
        if X:
            _propagate(lab, U, V, par, P)
        rows = np.arange(S)[:, None]
        good = ((par[rows, U] ^ par[rows, V]) == P).all(axis=1)
        comps = (lab == np.arange(n_seg)).sum(axis=1)
        n_b = bits.sum(axis=1)
        np.add.at(hist, n_b[good], np.left_shift(1, comps[good]).astype(np.int64))
    return hist


def lipson_histogram(pd: np.ndarray, n_seg: int) -> np.ndarray:
    """hist[b] = sum over smoothings with b smoothings of type (0,3),(1,2) of 2**k,
    where k is the number of components of the loop graph if it is bipartite
    (the state is dropped otherwise)."""
    pd = np.ascontiguousarray(pd, dtype=np.int64)
    if _use_numba:
        return _lipson_hist_nb(pd, n_seg)
    return _lipson_hist_np(pd, n_seg)


# ---------------------------------------------------------------- Potts

@njit(cache=True)
def _potts_hist_nb(n, Q, eu, ev, pos):
    E = eu.shape[0]
    n_pos = 0
    for e in range(E):
        n_pos += pos[e]
    hist = np.zeros((n_pos + 1, E - n_pos + 1), np.int64)
    digits = np.zeros(n, np.int64)
    total = Q ** n
    for _ in range(total):
        a = 0
        b = 0
        for e in range(E):
            if digits[eu[e]] == digits[ev[e]]:
                if pos[e]:
                    a += 1
                else:
                    b += 1
        hist[a, b] += 1
        k = 0
        while k < n:
            digits[k] += 1
            if digits[k] < Q:
                break
            digits[k] = 0
            k += 1
    return hist


def _potts_hist_np(n, Q, eu, ev, pos):
    E = len(eu)
    n_pos = int(pos.sum())
    hist = np.zeros((n_pos + 1, E - n_pos + 1), np.int64)
    total = Q ** n
    powers = Q ** np.arange(n, dtype=np.int64)
    posb = pos.astype(bool)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        digits = (idx[:, None] // powers) % Q
        eq = digits[:, eu] == digits[:, ev]
        a = eq[:, posb].sum(axis=1)
        b = eq[:, ~posb].sum(axis=1)
        np.add.at(hist, (a, b), 1)
    return hist


def potts_histogram(n: int, Q: int, eu, ev, pos) -> np.ndarray:
    """hist[a, b]: spin states with a monochromatic positive and b monochromatic
    negative edges.  Vertices are 0-based."""
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    pos = np.ascontiguousarray(pos, dtype=np.int64)
    if _use_numba:
        return _potts_hist_nb(n, Q, eu, ev, pos)
    return _potts_hist_np(n, Q, eu, ev, pos)


# ---------------------------------------------------------------- subsets

@njit(cache=True)
def _subset_hist_nb(n, eu, ev):
    E = eu.shape[0]
    hist = np.zeros((E + 1, n + 1), np.int64)
    parent = np.empty(n, np.int64)
    for mask in range(1 << E):
        for i in range(n):
            parent[i] = i
        size = 0
        rank = 0
        for e in range(E):
            if (mask >> e) & 1:
                size += 1
                x, y = _find(parent, eu[e]), _find(parent, ev[e])
                if x != y:
                    parent[x] = y
                    rank += 1
        hist[size, rank] += 1
    return hist


def _subset_hist_np(n, eu, ev):
    E = len(eu)
    hist = np.zeros((E + 1, n + 1), np.int64)
    total = 1 << E
    for start in range(0, total, CHUNK):
        masks = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        on = ((masks[:, None] >> np.arange(E)) & 1).astype(bool)
        u = np.where(on, eu, ev)  # inactive edges become self-loops on ev
        v = np.broadcast_to(ev, on.shape)
        lab = np.tile(np.arange(n, dtype=np.int64), (len(masks), 1))
        if E:
            _propagate(lab, np.ascontiguousarray(u), np.ascontiguousarray(v))
        rank = n - (lab == np.arange(n)).sum(axis=1)
        np.add.at(hist, (on.sum(axis=1), rank), 1)
    return hist


def subset_histogram(n: int, eu, ev) -> np.ndarray:
    """hist[s, r] = number of edge subsets of size s and rank r (0-based vertices)."""
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    if _use_numba:
        return _subset_hist_nb(n, eu, ev)
    return _subset_hist_np(n, eu, ev)


# ---------------------------------------------------------------- vertex models

@njit(cache=True)
def _vertex_sum_nb(slots, n_seg, k, W):
    X = slots.shape[0]
    digits = np.zeros(n_seg, np.int64)
    total = 0j
    n_states = k ** n_seg
    for _ in range(n_states):
        w = 1.0 + 0j
        for c in range(X):
            w *= W[c, digits[slots[c, 0]], digits[slots[c, 1]],
                   digits[slots[c, 2]], digits[slots[c, 3]]]
            if w == 0:
                break
        total += w
        j = 0
        while j < n_seg:
            digits[j] += 1
            if digits[j] < k:
                break
            digits[j] = 0
            j += 1
    return total


def _vertex_sum_np(slots, n_seg, k, W):
    X = slots.shape[0]
    total = k ** n_seg
    powers = k ** np.arange(n_seg, dtype=np.int64)
    acc = 0j
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        digits = (idx[:, None] // powers) % k
        w = np.ones(len(idx), np.complex128)
        for c in range(X):
            s = slots[c]
            w *= W[c][digits[:, s[0]], digits[:, s[1]], digits[:, s[2]], digits[:, s[3]]]
        acc += w.sum()
    return acc


def vertex_model_sum(slots, n_seg: int, k: int, W) -> complex:
    """Sum over states segments -> {0..k-1} of the product of W[c][state at slots of c]."""
    slots = np.ascontiguousarray(slots, dtype=np.int64)
    W = np.ascontiguousarray(W, dtype=np.complex128)
    if _use_numba:
        return complex(_vertex_sum_nb(slots, n_seg, k, W))
    return complex(_vertex_sum_np(slots, n_seg, k, W))
