"""Gram-matrix audits of functions of positive type, with feature-vector certificates."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import invariants as inv
from .diagram import NotOrientedError, build_diagram, split_boundary
from .gamma import gamma_graph, is_oriented
from .group import GroupElement, common_bottom, insert_opposing, invert, multiply, parse_word
from .laurent import unit_root

FUNCTIONALS = ("jones", "bracket", "tutte", "kauffman2", "components", "colourings")
ORIENTED_ONLY = ("jones", "kauffman2", "components")

# A with A^2 + A^-2 + sqrt(Q) = 0, as exp(i pi num/den) up to sign
_ADMISSIBLE_ROOTS = {2: (3, 8), 3: (5, 12), 4: (1, 2)}


def admissible_A() -> List[Tuple[int, complex, str]]:
    """The ten admissible values (Q, A, label)."""
    out = []
    for Q, (num, den) in _ADMISSIBLE_ROOTS.items():
        for s in (1, -1):
            for pm in (1, -1):
                A = pm * unit_root(s * num, den)
                if any(abs(A - B) < 1e-12 for _, B, _ in out):
                    continue
                label = f"{'-' if pm < 0 else ''}exp({s * num}ipi/{den})"
                out.append((Q, A, label))
    return out


def admissible_Q(A: complex) -> Optional[int]:
    for Q, B, _ in admissible_A():
        if abs(A - B) < 1e-9:
            return Q
    return None


@dataclass(frozen=True)
class EvalSpec:
    """A normalized functional with its parameters.

    ``A`` is used by jones/bracket; ``Q`` with ``K`` or ``y`` (= e^K, may be a
    Fraction) by tutte; ``C`` by kauffman2; ``k`` by components; ``m`` by
    colourings.
    """

    functional: str
    A: Optional[complex] = None
    Q: Optional[int] = None
    K: Optional[float] = None
    y: Optional[object] = None
    C: Optional[complex] = None
    k: Optional[int] = None
    m: Optional[int] = None
    label: str = ""

    def __post_init__(self):
        if self.functional not in FUNCTIONALS:
            raise ValueError(f"unknown functional {self.functional!r}")

    @property
    def needs_orientation(self) -> bool:
        return self.functional in ORIENTED_ONLY

    def y_value(self):
        if self.y is not None:
            return self.y
        return math.exp(self.K)

    def admissibility(self) -> Tuple[bool, str]:
        """Whether the parameters lie in the range covered by a positivity theorem."""
        f = self.functional
        if f in ("jones", "bracket"):
            if self.A is None:
                return False, "A missing"
            if admissible_Q(self.A) is None:
                return False, "A is not a root of A^2 + A^-2 + sqrt(Q) for Q in {2, 3, 4}"
            return True, ""
        if f == "tutte":
            if self.Q is None or self.Q < 2 or int(self.Q) != self.Q:
                return False, "Q must be an integer >= 2"
            if self.K is None and self.y is None:
                return False, "K missing"
            y = self.y_value()
            if y == 1 or y <= 0:
                return False, "K must be nonzero"
            return True, ""
        if f == "kauffman2":
            if self.C is None or self.C in (0, 1):
                return False, "C must be nonzero and not 1"
            C = complex(self.C)
            if C.imag != 0 and abs(abs(C) - 1) > 1e-12:
                return False, "C must be real or of modulus 1"
            return True, ""
        if f == "components":
            if self.k is None or self.k == 0 or int(self.k) != self.k:
                return False, "k must be a nonzero integer"
            return True, ""
        if f == "colourings":
            if self.m is None or self.m < 2:
                return False, "m must be >= 2"
            return True, ""
        return False, "unknown"

    def describe(self) -> Dict[str, object]:
        d: Dict[str, object] = {"functional": self.functional}
        for name in ("A", "Q", "K", "y", "C", "k", "m"):
            v = getattr(self, name)
            if v is None:
                continue
            if isinstance(v, complex):
                d[name] = [v.real, v.imag]
            elif isinstance(v, Fraction):
                d[name] = str(v)
            else:
                d[name] = v
        if self.label:
            d["label"] = self.label
        return d

    def name(self) -> str:
        if self.label:
            return f"{self.functional}[{self.label}]"
        parts = []
        for k in ("A", "Q", "K", "y", "C", "k", "m"):
            v = getattr(self, k)
            if v is None:
                continue
            if isinstance(v, complex):
                v = f"{v.real:g}" if v.imag == 0 else f"{v.real:.6g}{v.imag:+.6g}i"
            parts.append(f"{k}={v}")
        return f"{self.functional}[{','.join(parts)}]"

    def evaluate(self, g: GroupElement):
        f = self.functional
        if f == "jones":
            return inv.jones_function(g, self.A)
        if f == "bracket":
            return inv.bracket_function(g, self.A)
        if f == "tutte":
            x, y = inv.potts_xy(self.Q, self.y_value())
            return inv.tutte_function(g, x, y)
        if f == "kauffman2":
            return inv.kauffman2_function(g, self.C)
        if f == "components":
            return inv.component_function(g, self.k)
        if f == "colourings":
            return inv.colouring_function(g, self.m)
        raise ValueError(f)


def default_specs() -> List[EvalSpec]:
    """The parameter menu covered by the positivity theorems."""
    specs = []
    from .invariants import JONES_BRANCHES, branch_A
    for key in ("1", "i", "exp(ipi/3)", "exp(-ipi/3)"):
        specs.append(EvalSpec("jones", A=branch_A(key), label=f"t={key}"))
    for Q, A, label in admissible_A():
        specs.append(EvalSpec("bracket", A=A, Q=Q, label=f"A={label}"))
    for Q in (2, 3, 4):
        for K, ytxt in ((math.log(2), "2"), (-math.log(2), "1/2"), (1.0, None), (-1.0, None)):
            y = Fraction(ytxt) if ytxt else None
            specs.append(EvalSpec("tutte", Q=Q, K=K, y=y,
                                  label=f"Q={Q},K={'ln2' if ytxt == '2' else '-ln2' if ytxt else K}"))
    for C in (-1.0, 2.0, 0.5, 3.0):
        specs.append(EvalSpec("kauffman2", C=C, label=f"C={C:g}"))
    for k in (2, -2, 3):
        specs.append(EvalSpec("components", k=k, label=f"k={k}"))
    return specs


# ---------------------------------------------------------------- Gram matrices

@dataclass
class GramReport:
    elements: List[GroupElement]
    spec: EvalSpec
    matrix: np.ndarray
    min_eigenvalue: float
    verdict: bool
    hermitian_error: float
    diagonal_error: float
    threshold: float
    exact: Optional[List[List[object]]] = None
    certificate: Optional["Certificate"] = None

    def to_dict(self) -> dict:
        d = {"spec": self.spec.describe(), "name": self.spec.name(), "r": len(self.elements),
             "min_eigenvalue": self.min_eigenvalue, "verdict": self.verdict,
             "hermitian_error": self.hermitian_error, "diagonal_error": self.diagonal_error,
             "threshold": self.threshold}
        if self.certificate is not None:
            d["certificate_checked"] = True
            d["max_entry_error"] = self.certificate.max_error
        return d


def psd_threshold(M: np.ndarray, tol: float = 1e-8) -> float:
    return -tol * max(1.0, float(np.abs(M).sum(axis=1).max()) if M.size else 1.0)


def gram_matrix(elements: Sequence[GroupElement], spec: EvalSpec, tol: float = 1e-8,
                check_admissible: bool = True) -> GramReport:
    ok, why = spec.admissibility()
    if check_admissible and not ok:
        raise inv.InadmissibleError(f"{spec.name()}: {why}")
    if spec.needs_orientation:
        for g in elements:
            if not is_oriented(g):
                raise NotOrientedError(f"{g} is not in the oriented subgroup")
    r = len(elements)
    inverses = [invert(g) for g in elements]
    exact: List[List[object]] = [[None] * r for _ in range(r)]
    cache: Dict[GroupElement, object] = {}
    M = np.zeros((r, r), np.complex128)
    for i in range(r):
        for j in range(r):
            h = multiply(elements[i], inverses[j])
            if h not in cache:
                cache[h] = spec.evaluate(h)
            exact[i][j] = cache[h]
            M[i, j] = complex(cache[h])
    herm = float(np.abs(M - M.conj().T).max()) if r else 0.0
    hermitian = herm <= 1e-9 * (1 + float(np.abs(M).max())) if r else True
    diag = float(np.abs(np.diag(M) - 1).max()) if r else 0.0
    # a non-Hermitian matrix is not positive semidefinite; the eigenvalue of
    # its Hermitian part is still reported
    H = (M + M.conj().T) / 2
    lam = float(np.linalg.eigvalsh(H).min()) if r else 0.0
    thr = psd_threshold(M, tol)
    return GramReport(list(elements), spec, M, lam, hermitian and lam >= thr, herm, diag, thr, exact)


# ---------------------------------------------------------------- certificates

@dataclass
class Certificate:
    kind: str
    n: int
    vectors: object
    gram: np.ndarray
    max_error: float
    exact: bool
    # for vector splits that are not of Gram form, the error of <v_i, v_j>
    form_error: Optional[float] = None


def _common(elements: Sequence[GroupElement]) -> List[GroupElement]:
    els = common_bottom(list(elements))
    if els and els[0].n < 2:
        els = [insert_opposing(g, 1) for g in els]
    return els


def _upper_edges(g: GroupElement):
    return [(u - 1, v - 1) for u, v, s in gamma_graph(g).edges if s > 0]


def _spin_digits(n: int, Q: int) -> np.ndarray:
    idx = np.arange(Q ** n, dtype=np.int64)
    return (idx[:, None] // (Q ** np.arange(n, dtype=np.int64))) % Q


def _equal_counts(g: GroupElement, digits: np.ndarray) -> np.ndarray:
    eu = _upper_edges(g)
    out = np.zeros(len(digits), np.int64)
    for u, v in eu:
        out += digits[:, u] == digits[:, v]
    return out


def potts_certificate(elements: Sequence[GroupElement], Q: int, y) -> Certificate:
    """v_i[sigma] = y^-(bichromatic upper edges of g_i); exact when y is rational.

    Checks <v_i, v_j> against the normalized Tutte entry
    T_{g_i g_j^-1} = Z / Q * (y^2 / (y^2 + Q - 1))^(n-1).
    """
    els = _common(elements)
    n = els[0].n
    if Q ** n > inv.POTTS_BUDGET:
        raise inv.BudgetError("Q^n too large for explicit vectors")
    digits = _spin_digits(n, Q)
    E = n - 1
    unequal = [E - _equal_counts(g, digits) for g in els]
    exact = isinstance(y, (int, Fraction))
    yv = Fraction(y) if exact else float(y)
    r = len(els)
    G = np.zeros((r, r), np.complex128)
    err = 0.0
    x, _ = inv.potts_xy(Q, yv)
    for i in range(r):
        for j in range(r):
            counts = np.bincount(unequal[i] + unequal[j], minlength=2 * E + 1)
            ip = sum((int(c) * (1 / yv) ** k for k, c in enumerate(counts) if c),
                     Fraction(0) if exact else 0.0)
            val = ip / Q * (yv * yv / (yv * yv + Q - 1)) ** (n - 1)
            ref = inv.tutte_function(multiply(els[i], invert(els[j])), x, yv)
            if exact:
                if val != ref:
                    err = max(err, abs(float(val - ref)), 1e-300)
            else:
                err = max(err, abs(val - ref) / (1 + abs(ref)))
            G[i, j] = complex(val)
    return Certificate("potts", n, unequal, G, err, exact)


def bracket_certificate(elements: Sequence[GroupElement], A: complex) -> Certificate:
    """Complex Potts vectors; <v_i, v_j> reproduces <g_i g_j^-1>(A)."""
    Q = admissible_Q(A)
    if Q is None:
        raise inv.InadmissibleError("A is not admissible")
    els = _common(elements)
    n = els[0].n
    if Q ** n > inv.POTTS_BUDGET:
        raise inv.BudgetError("Q^n too large for explicit vectors")
    digits = _spin_digits(n, Q)
    E = n - 1
    vecs = []
    for g in els:
        a = _equal_counts(g, digits)
        vecs.append((-A ** 3) ** a * A ** (-(E - a)))
    r = len(els)
    G = np.zeros((r, r), np.complex128)
    err = 0.0
    sqrtQ = math.sqrt(Q)
    for i in range(r):
        for j in range(r):
            ip = np.vdot(vecs[j], vecs[i])  # sum v_i * conj(v_j)
            val = ip / sqrtQ ** (n + 1) / sqrtQ ** (n - 1)
            ref = inv.bracket_function(multiply(els[i], invert(els[j])), A)
            err = max(err, abs(val - ref) / (1 + abs(ref)))
            G[i, j] = val
    return Certificate("bracket", n, vecs, G, err, False)


def lipson_vector(g: GroupElement, C: complex) -> Tuple[Tuple[Tuple[int, str], ...], np.ndarray]:
    """Partial Lipson state sum over the upper half of L(g).

    Indexed by the states of the 2n boundary segments, keyed (vertex, side)
    in left-to-right order; component = sum over internal upper segments of
    the product of the upper crossing weights.
    """
    D = build_diagram(g)
    split = split_boundary(g)
    bseg = [s for _, _, s in split.boundary]
    keys = tuple((v, side) for v, side, _ in split.boundary)
    sign = [x.edge_sign for x in D.crossings]
    internal = [s for s, (v, e, f) in enumerate(D.corners) if sign[e] > 0 and sign[f] > 0]
    order = bseg + internal
    if 2 ** len(order) > inv.VERTEX_BUDGET:
        raise inv.BudgetError("too many boundary states")
    pos = {s: i for i, s in enumerate(order)}
    nb, ni = len(bseg), len(internal)
    idx = np.arange(2 ** (nb + ni), dtype=np.int64)
    bits = (idx[:, None] >> np.arange(nb + ni)) & 1
    W = inv.lipson_weight_table(C)
    pd = D.pd_array()
    w = np.ones(len(idx), np.complex128)
    for c in split.upper:
        s = [pos[int(t)] for t in pd[c]]
        w *= W[bits[:, s[0]], bits[:, s[1]], bits[:, s[2]], bits[:, s[3]]]
    # low bits are the boundary: sum over the internal block
    vec = w.reshape(2 ** ni, 2 ** nb).sum(axis=0)
    return keys, vec


def lipson_certificate(elements: Sequence[GroupElement], C: complex) -> Certificate:
    """Upper-half vectors v_i(C) over the 2n boundary states.

    The lower half of L(g_i g_j^-1) is the planar reflection of the upper
    half of g_j, so the state sum splits as Z = sum_tau v_i(C)[tau] v_j(1/C)[tau].
    ``max_error`` measures that split against F_{g_i g_j^-1}; ``form_error``
    measures the Hermitian form <v_i(C), v_j(C)>, which equals the same
    entries only when v_j(1/C) = conj(v_j(C)), e.g. for |C| = 1.
    """
    els = _common(elements)
    n = els[0].n
    up, down = [], []
    keys0 = None
    for g in els:
        keys, v = lipson_vector(g, C)
        _, w = lipson_vector(g, 1 / C)
        if keys0 is None:
            keys0 = keys
        elif keys != keys0:
            raise ArithmeticError("boundary segment keys differ between elements")
        up.append(v)
        down.append(w)
    r = len(els)
    G = np.zeros((r, r), np.complex128)
    err = form_err = 0.0
    for i in range(r):
        for j in range(r):
            val = np.dot(up[i], down[j]) / 2 ** n
            form = np.vdot(up[j], up[i]) / 2 ** n
            ref = inv.kauffman2_function(multiply(els[i], invert(els[j])), C)
            err = max(err, abs(val - ref) / (1 + abs(ref)))
            form_err = max(form_err, abs(form - ref) / (1 + abs(ref)))
            G[i, j] = form
    cert = Certificate("lipson", n, up, G, err, False)
    cert.form_error = form_err
    return cert


def feature_vectors(elements: Sequence[GroupElement], spec: EvalSpec) -> Certificate:
    if spec.functional == "tutte":
        return potts_certificate(elements, spec.Q, spec.y_value())
    if spec.functional == "bracket":
        return bracket_certificate(elements, spec.A)
    if spec.functional == "kauffman2":
        return lipson_certificate(elements, spec.C)
    raise ValueError(f"no feature vectors for {spec.functional}")


# ---------------------------------------------------------------- corpora and audits

GENERATORS = {
    "F": ["x0", "x1"],
    "T": ["x0", "x1", "c0", "c1"],
    "Fo": ["x0 x1", "x1 x2", "x2 x3"],
    "To": ["x0 x1", "x1 x2", "x2 x3", "c0", "c2"],
}


def random_word(rng: random.Random, gens: Sequence[str], max_len: int) -> str:
    L = rng.randint(0, max_len)
    toks = []
    for _ in range(L):
        g = rng.choice(gens)
        if rng.random() < 0.5:
            # invert a product of generators token by token
            g = " ".join(f"{t}^-1" for t in reversed(g.split()))
        toks.append(g)
    return " ".join(toks)


def random_corpus(kind: str, size: int, max_len: int = 3, seed: int = 0,
                  max_n: int = 10, tries: int = 200) -> List[Tuple[str, GroupElement]]:
    """Random words whose pairwise quotients g_i g_j^-1 have at most max_n leaves."""
    gens = GENERATORS[kind]
    rng = random.Random(seed)
    for _ in range(tries):
        words = [random_word(rng, gens, max_len) for _ in range(size)]
        els = [parse_word(w) for w in words]
        if all(multiply(a, invert(b)).n <= max_n for a in els for b in els):
            return list(zip(words, els))
    raise RuntimeError("could not sample a corpus within the leaf budget")


@dataclass
class AuditEntry:
    spec: EvalSpec
    r: int
    admissible: bool
    verdict: Optional[bool] = None
    min_eigenvalue: Optional[float] = None
    certificate_checked: bool = False
    max_entry_error: Optional[float] = None
    hermitian_error: Optional[float] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {"spec": self.spec.describe(), "name": self.spec.name(), "r": self.r,
                "admissible": self.admissible, "verdict": self.verdict,
                "min_eigenvalue": self.min_eigenvalue, "hermitian_error": self.hermitian_error,
                "certificate_checked": self.certificate_checked,
                "max_entry_error": self.max_entry_error, "note": self.note}


@dataclass
class AuditReport:
    entries: List[AuditEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.verdict is not False for e in self.entries if e.admissible)

    def to_json(self) -> str:
        return json.dumps({"passed": self.passed, "entries": [e.to_dict() for e in self.entries]},
                          sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "r", "admissible", "verdict", "min_eigenvalue",
                    "certificate_checked", "max_entry_error", "note"])
        for e in self.entries:
            w.writerow([e.spec.name(), e.r, e.admissible, e.verdict, e.min_eigenvalue,
                        e.certificate_checked, e.max_entry_error, e.note])
        return buf.getvalue()


def audit(corpus: Sequence[GroupElement], specs: Sequence[EvalSpec], tol: float = 1e-8,
          certificates: bool = False, cert_max_n: int = 5, explore: bool = False) -> AuditReport:
    """Run every spec on the corpus; failures are recorded, never raised.

    With ``explore`` the Gram matrix of an inadmissible spec is still
    computed and its minimal eigenvalue recorded, but no verdict is given.
    """
    report = AuditReport()
    corpus = list(corpus)
    if not corpus:
        return report
    for spec in specs:
        ok, why = spec.admissibility()
        entry = AuditEntry(spec, len(corpus), ok)
        if not ok:
            entry.note = f"inadmissible for positivity: {why}"
            if explore:
                try:
                    rep = gram_matrix(corpus, spec, tol, check_admissible=False)
                    entry.min_eigenvalue = rep.min_eigenvalue
                    entry.hermitian_error = rep.hermitian_error
                    entry.note += "; exploratory eigenvalue only"
                except Exception as exc:
                    entry.note += f"; exploration failed: {type(exc).__name__}: {exc}"
            report.entries.append(entry)
            continue
        try:
            rep = gram_matrix(corpus, spec, tol)
            entry.verdict = rep.verdict
            entry.min_eigenvalue = rep.min_eigenvalue
            entry.hermitian_error = rep.hermitian_error
            if not rep.verdict and rep.hermitian_error > 1e-9:
                entry.note = f"not Hermitian (max |M - M*| = {rep.hermitian_error:.3g})"
            if certificates and spec.functional in ("tutte", "bracket", "kauffman2"):
                if common_bottom(corpus)[0].n <= cert_max_n:
                    cert = feature_vectors(corpus, spec)
                    entry.certificate_checked = True
                    entry.max_entry_error = cert.max_error
                    if cert.form_error is not None and cert.form_error > 1e-9:
                        entry.note = (entry.note + "; " if entry.note else "") + \
                            f"vectors reproduce entries only as a bilinear split (form error {cert.form_error:.3g})"
        except NotOrientedError as exc:
            entry.admissible = False
            entry.note = f"not applicable: {exc}"
        except Exception as exc:  # recorded per spec
            entry.verdict = False
            entry.note = f"{type(exc).__name__}: {exc}"
        report.entries.append(entry)
    return report
