"""Link invariants of tree-pair diagrams and the normalized functions on F and T.

All bracket/Jones computations are done in the variable A with t = A**-4.
"""

from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple, Union

import numpy as np

from . import kernels
from .diagram import (LinkDiagram, NotOrientedError, OrientedLinkDiagram, build_diagram,
                      component_count, oriented_diagram)
from .gamma import SignedGraph, gamma_graph
from .group import GroupElement
from .laurent import DELTA, LaurentPoly, NormalizedPoly, delta_value, unit_root
from .linalg import count_solutions_mod
from .tutte import evaluate as tutte_eval
from .tutte import tutte_poly


class BudgetError(ValueError):
    """The requested state sum is larger than the configured budget."""


class InadmissibleError(ValueError):
    """Parameters outside the range where the construction is defined."""


CROSSING_BUDGET = 26
POTTS_BUDGET = 1 << 22
VERTEX_BUDGET = 1 << 26
ADMISSIBLE_TOL = 1e-9

# ---------------------------------------------------------------- bracket


@lru_cache(maxsize=None)
def _delta_power(k: int) -> LaurentPoly:
    return DELTA ** k


def bracket_poly(D: LinkDiagram) -> LaurentPoly:
    """Kauffman bracket by the state sum; normalized so the unknot is 1."""
    X = D.n_crossings
    if X > CROSSING_BUDGET:
        raise BudgetError(f"{X} crossings exceed the budget of {CROSSING_BUDGET}")
    if X == 0:
        return _delta_power(max(D.free_loops, 1) - 1)
    hist = kernels.bracket_histogram(D.pd_array(), D.n_segments)
    out = LaurentPoly.const(0)
    for a in range(X + 1):
        for loops in range(hist.shape[1]):
            cnt = int(hist[a, loops])
            if cnt:
                mono = LaurentPoly.monomial(2 * a - X, cnt)
                out = out + mono * _delta_power(loops + D.free_loops - 1)
    return out


@lru_cache(maxsize=8192)
def element_bracket(g: GroupElement) -> LaurentPoly:
    return bracket_poly(build_diagram(g))


def delta_exponent(g: GroupElement, normalization: str = "F") -> int:
    """n - 1 for the F normalization, n for the T one."""
    if normalization == "F":
        return g.n - 1
    if normalization == "T":
        return g.n
    raise ValueError("normalization must be 'F' or 'T'")


def bracket_function(g: GroupElement, A: Optional[complex] = None, normalization: str = "F"):
    """<L(g)> / delta**(n-1) (or delta**n); symbolic if A is None."""
    p = NormalizedPoly(element_bracket(g), delta_exponent(g, normalization))
    if A is None:
        return p
    return p(A)


# ---------------------------------------------------------------- Jones

# t -> A with A**-4 = t, on the branches used by the positivity theorems
JONES_BRANCHES: Dict[str, Tuple[int, int]] = {
    "1": (1, 2),          # A = i
    "i": (3, 8),          # A = e^{3 pi i/8}
    "-i": (-3, 8),
    "exp(ipi/3)": (5, 12),
    "exp(-ipi/3)": (-5, 12),
}


def branch_A(t_key: str) -> complex:
    num, den = JONES_BRANCHES[t_key]
    return unit_root(num, den)


def A_for_t(t: complex) -> complex:
    """A on the documented branch if t is one of the evaluation points, else t**(-1/4)."""
    for key in JONES_BRANCHES:
        A = branch_A(key)
        if abs(A ** -4 - t) < 1e-12:
            return A
    return complex(t) ** -0.25


def writhe_factor(wr: int) -> LaurentPoly:
    """(-A^3)^(-wr)."""
    return LaurentPoly.monomial(-3 * wr, (-1) ** (wr % 2))


@lru_cache(maxsize=8192)
def _jones_numerator(g: GroupElement, reverse: bool = False) -> Tuple[LaurentPoly, int]:
    O = oriented_diagram(g, reverse)
    return writhe_factor(O.writhe) * element_bracket(g), O.writhe


def link_jones(g: GroupElement, reverse: bool = False) -> LaurentPoly:
    """Unnormalized V of the oriented link, as a Laurent polynomial in A."""
    return _jones_numerator(g, reverse)[0]


def jones_function(g: GroupElement, A: Optional[complex] = None, normalization: str = "F",
                   reverse: bool = False):
    """(-A^3)^(-wr) <g>(A); raises NotOrientedError off the oriented subgroup."""
    num, _ = _jones_numerator(g, reverse)
    p = NormalizedPoly(num, delta_exponent(g, normalization))
    if A is None:
        return p
    return p(A)


def jones_at_one(g: GroupElement) -> Fraction:
    """V_g(1) exactly, on the A = i branch."""
    re, im = link_jones(g).at_i()
    if im:
        raise ArithmeticError("V_g(1) is not real")
    return Fraction(re, 2 ** (g.n - 1))


def jones_chain_value(g: GroupElement, t_key: str) -> complex:
    """V_g at the evaluation point via the link value on the principal square root.

    With s the principal value of t**(1/2), computes
    (-1)^(c(L)-1) V_L(s) / sqrt(Q)^(n-1), where sqrt(Q) = -A^2 - A^-2 at the
    bracket branch.  This should agree with ``jones_function(g, A)``.
    """
    A = branch_A(t_key)
    t = A ** -4
    s = cmath.sqrt(t)
    num = link_jones(g)
    if any(e % 2 for e, _ in num.terms):
        raise ArithmeticError("odd powers of A in a Jones polynomial")
    VL = sum(c * s ** (-e // 2) for e, c in num.terms)
    comps = component_count(build_diagram(g))
    sqrtQ = delta_value(A).real
    return (-1) ** (comps - 1) * VL / sqrtQ ** (g.n - 1)


# ---------------------------------------------------------------- Tutte / Potts

@lru_cache(maxsize=8192)
def _tutte_of(g: GroupElement, method: str = "dc"):
    G = gamma_graph(g)
    return tutte_poly(G.n, G.unsigned(), method)


def tutte(G: SignedGraph, x=None, y=None, method: str = "dc"):
    T = tutte_poly(G.n, G.unsigned(), method)
    if x is None:
        return T
    return tutte_eval(T, x, y)


def tutte_function(g: GroupElement, x, y, method: str = "dc"):
    """T_Gamma(g)(x, y) / (x + y)^(n-1)."""
    s = x + y
    if s == 0:
        raise ZeroDivisionError("x + y = 0")
    val = tutte_eval(_tutte_of(g, method), x, y)
    return val / s ** (g.n - 1)


def potts_xy(Q: int, y):
    """x = (y + Q - 1)/(y - 1); exact for rational y."""
    if isinstance(y, (int, Fraction)):
        y = Fraction(y)
    return (y + Q - 1) / (y - 1), y


def _potts_hist(G: SignedGraph, Q: int) -> np.ndarray:
    if Q ** G.n > POTTS_BUDGET:
        raise BudgetError(f"Q^n = {Q}^{G.n} exceeds the Potts budget")
    eu = [u - 1 for u, _, _ in G.edges]
    ev = [v - 1 for _, v, _ in G.edges]
    pos = [1 if s > 0 else 0 for _, _, s in G.edges]
    return kernels.potts_histogram(G.n, Q, eu, ev, pos)


def potts_Z(G: SignedGraph, Q: int, K=None, y=None):
    """sum_sigma exp(-K * #bichromatic edges); signs ignored.

    Pass ``y = e^K`` as an int/Fraction for exact arithmetic.
    """
    hist = _potts_hist(G, Q)
    E = len(G.edges)
    if y is not None and isinstance(y, (int, Fraction)):
        inv = 1 / Fraction(y)
        return sum((int(hist[a, b]) * inv ** (E - a - b)
                    for a in range(hist.shape[0]) for b in range(hist.shape[1]) if hist[a, b]),
                   Fraction(0))
    if y is None:
        y = math.exp(K)
    inv = 1.0 / y
    return float(sum(int(hist[a, b]) * inv ** (E - a - b)
                     for a in range(hist.shape[0]) for b in range(hist.shape[1]) if hist[a, b]))


def potts_from_tutte(G: SignedGraph, Q: int, y):
    """e^{-K|E|} Q^k (e^K - 1)^r T(x, y) at y = e^K."""
    edges = G.unsigned()
    from .tutte import _components
    k = _components(G.n, edges)
    r = G.n - k
    x, y = potts_xy(Q, y)
    T = tutte_eval(tutte_poly(G.n, edges), x, y)
    return (1 / y) ** len(edges) * Q ** k * (y - 1) ** r * T


def is_admissible_A(Q: int, A: complex) -> bool:
    return abs(A ** 2 + A ** -2 + math.sqrt(Q)) < ADMISSIBLE_TOL


def signed_potts_Z(G: SignedGraph, Q: int, A: complex) -> complex:
    if Q not in (2, 3, 4) or not is_admissible_A(Q, A):
        raise InadmissibleError(f"A = {A} does not solve A^2 + A^-2 + sqrt({Q}) = 0")
    hist = _potts_hist(G, Q)
    Ep = sum(1 for e in G.edges if e[2] > 0)
    Em = len(G.edges) - Ep
    total = 0j
    for a in range(hist.shape[0]):
        for b in range(hist.shape[1]):
            cnt = int(hist[a, b])
            if cnt:
                sign = (-1) ** (a + b)
                total += cnt * sign * A ** (3 * a - (Ep - a) - 3 * b + (Em - b))
    return total / math.sqrt(Q) ** (G.n + 1)


def signed_potts_bruteforce(G: SignedGraph, Q: int, A: complex) -> complex:
    """Direct sum over spin states (oracle for small graphs)."""
    def w(s, same):
        base = -A ** 3 if same else A ** -1
        return base if s > 0 else 1 / base
    total = 0j
    for sigma in itertools.product(range(Q), repeat=G.n):
        p = 1 + 0j
        for u, v, s in G.edges:
            p *= w(s, sigma[u - 1] == sigma[v - 1])
        total += p
    return total / math.sqrt(Q) ** (G.n + 1)


# ---------------------------------------------------------------- Fox colourings

def _arcs(D: LinkDiagram):
    pd = D.pd_array()
    parent = list(range(D.n_segments))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in pd:
        a, b = find(int(row[1])), find(int(row[3]))
        if a != b:
            parent[a] = b
    roots = sorted({find(s) for s in range(D.n_segments)})
    index = {r: i for i, r in enumerate(roots)}
    arc_of = [index[find(s)] for s in range(D.n_segments)]
    return pd, arc_of, len(roots)


def fox_matrix(D: LinkDiagram):
    pd, arc_of, n_arcs = _arcs(D)
    M = []
    for row in pd:
        r = [0] * n_arcs
        r[arc_of[row[1]]] += 2
        r[arc_of[row[0]]] -= 1
        r[arc_of[row[2]]] -= 1
        M.append(r)
    return M, n_arcs + D.free_loops


def fox_colourings(D: LinkDiagram, m: int) -> int:
    """Number of Fox m-colourings, from the Smith normal form."""
    if m < 2:
        raise ValueError("m must be at least 2")
    M, n_arcs = fox_matrix(D)
    return count_solutions_mod(M, n_arcs, m)


def fox_colourings_bruteforce(D: LinkDiagram, m: int) -> int:
    M, n_arcs = fox_matrix(D)
    if m ** n_arcs > 1 << 22:
        raise BudgetError("too many arc assignments")
    count = 0
    for col in itertools.product(range(m), repeat=n_arcs):
        if all(sum(c * x for c, x in zip(row, col)) % m == 0 for row in M):
            count += 1
    return count


def colouring_function(g: GroupElement, m: int) -> Fraction:
    """Fox m-colourings of L(g) divided by m^n."""
    return Fraction(fox_colourings(build_diagram(g), m), m ** g.n)


# ---------------------------------------------------------------- Lipson model

def _base(D) -> LinkDiagram:
    return D.base if isinstance(D, OrientedLinkDiagram) else D


def lipson_poly(D) -> LaurentPoly:
    """Z(C) as a Laurent polynomial (the variable printed as A stands for C)."""
    D = _base(D)
    X = D.n_crossings
    if X > CROSSING_BUDGET:
        raise BudgetError(f"{X} crossings exceed the budget of {CROSSING_BUDGET}")
    free = LaurentPoly.const(2 ** D.free_loops)
    if X == 0:
        return free
    hist = kernels.lipson_histogram(D.pd_array(), D.n_segments)
    out = LaurentPoly.from_dict({2 * b - X: int(c) for b, c in enumerate(hist) if c})
    return out * free


def lipson_weight_table(C: complex) -> np.ndarray:
    """W[s0, s1, s2, s3] in canonical slot order (over strand at 1, 3)."""
    W = np.zeros((2, 2, 2, 2), np.complex128)
    for s in itertools.product(range(2), repeat=4):
        s0, s1, s2, s3 = s
        if s1 == s2 and s3 == s0 and s1 != s0:
            W[s] = C
        elif s1 == s0 and s3 == s2 and s1 != s3:
            W[s] = 1 / C
    return W


def lipson_Z(D, C: complex, method: str = "smoothing") -> complex:
    D = _base(D)
    if C == 0:
        raise InadmissibleError("C must be nonzero")
    if method == "smoothing":
        return complex(lipson_poly(D)(complex(C)))
    if method == "brute":
        if 2 ** D.n_segments > VERTEX_BUDGET:
            raise BudgetError(f"2^{D.n_segments} states exceed the budget")
        W = np.broadcast_to(lipson_weight_table(C), (D.n_crossings, 2, 2, 2, 2))
        z = kernels.vertex_model_sum(D.pd_array(), D.n_segments, 2, W) if D.n_crossings else 1
        return complex(z) * 2 ** D.free_loops
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=8192)
def element_lipson(g: GroupElement) -> LaurentPoly:
    return lipson_poly(build_diagram(g))


def kauffman2_link_value(g: GroupElement, C: complex) -> complex:
    """F of the oriented link at (a, x) = (iC^-1, iC - iC^-1), via Lipson's model."""
    O = oriented_diagram(g)
    comps = component_count(O.base)
    Z = element_lipson(g)(C)
    return C ** O.writhe * (-1) ** (comps - 1) / 2 * Z


def kauffman2_function(g: GroupElement, C) -> complex:
    """F_g(iC^-1, iC - iC^-1) = F_L / (-2)^(n-1)."""
    if C == 0:
        raise InadmissibleError("C must be nonzero")
    return kauffman2_link_value(g, C) / (-2) ** (g.n - 1)


# ---------------------------------------------------------------- q = 1 vertex model

def vertex_weight(sign: int, i: int, j: int, h: int, l: int, q: float = 1.0) -> float:
    """Weights w_+ / w_- with inputs (i, j) and outputs (h, l); i continues to l."""
    if sign > 0:
        if i < j and i == h and j == l:
            return q - 1 / q
        if i == l and j == h and i != j:
            return 1.0
        if i == j == h == l:
            return q
        return 0.0
    if i > j and i == h and j == l:
        return 1 / q - q
    if i == l and j == h and i != j:
        return 1.0
    if i == j == h == l:
        return 1 / q
    return 0.0


def homfly_q1_Z(O: OrientedLinkDiagram, k: int) -> int:
    """State sum of the colour-k vertex model at q = 1 (brute force)."""
    D = O.base
    if k < 1:
        raise ValueError("k must be positive")
    if float(k) ** D.n_segments > VERTEX_BUDGET:
        raise BudgetError(f"{k}^{D.n_segments} states exceed the budget")
    X = D.n_crossings
    W = np.zeros((X, k, k, k, k), np.complex128)
    for c in range(X):
        o_in, u_in = O.incoming[c]
        o_out, u_out = (o_in + 2) % 4, (u_in + 2) % 4
        sign = O.crossing_sign[c]
        for st in itertools.product(range(k), repeat=4):
            i, j, h, l = st[u_in], st[o_in], st[o_out], st[u_out]
            W[(c,) + st] = vertex_weight(sign, i, j, h, l, 1.0)
    z = kernels.vertex_model_sum(D.pd_array(), D.n_segments, k, W) if X else 1
    return int(round(z.real)) * k ** D.free_loops


def component_function(g: GroupElement, k: int) -> Fraction:
    """k^c(g)."""
    if k == 0:
        raise InadmissibleError("k must be nonzero")
    from .diagram import c_function
    return Fraction(k) ** c_function(g)
