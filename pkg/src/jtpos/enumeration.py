"""Exhaustive small-size enumeration of tree pairs and their link invariants."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Tuple

from . import invariants as inv
from .diagram import build_diagram, c_function, component_count, writhe
from .gamma import is_oriented
from .group import GroupElement, raw_element
from .laurent import LaurentPoly
from .trees import Tree, all_trees, format_tree

TREE_BUDGET = 12
CENSUS_BUDGET = 7
SEARCH_BUDGET = 6

# the four Jones evaluation points, as keys of the branch table
JONES_POINTS = ("1", "i", "exp(ipi/3)", "exp(-ipi/3)")

# Hopf link, both orientations, unknot normalized to 1
HOPF_POLYS = (LaurentPoly.from_dict({2: -1, 10: -1}), LaurentPoly.from_dict({-2: -1, -10: -1}))


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def enumerate_trees(n: int) -> List[Tree]:
    """All trees with n leaves; smaller left subtrees come first, recursively."""
    if n > TREE_BUDGET:
        raise inv.BudgetError(f"n = {n} exceeds the tree budget of {TREE_BUDGET}")
    return list(all_trees(n))


def pair_element(trees: List[Tree], i: int, j: int) -> GroupElement:
    """g(T_i, T_j) as given, without cancelling carets (0-based indices)."""
    return raw_element(trees[i], trees[j], 1)


@dataclass
class PairRecord:
    i: int
    j: int
    bipartite: bool
    c: Optional[int] = None
    writhe: Optional[int] = None
    jones: Dict[str, complex] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {"i": self.i + 1, "j": self.j + 1, "bipartite": self.bipartite, "c": self.c,
             "writhe": self.writhe}
        d["V"] = {k: [round(v.real, 12) + 0.0, round(v.imag, 12) + 0.0] for k, v in self.jones.items()}
        return d


@dataclass
class Census:
    n_leaves: int
    trees: List[Tree]
    records: Dict[Tuple[int, int], PairRecord]

    @property
    def bipartite_pairs(self) -> List[Tuple[int, int]]:
        return sorted(k for k, r in self.records.items() if r.bipartite)

    @property
    def c_values(self) -> Dict[Tuple[int, int], int]:
        return {k: r.c for k, r in self.records.items() if r.bipartite}

    def is_symmetric(self) -> bool:
        cv = self.c_values
        return all(cv.get((j, i)) == c for (i, j), c in cv.items())

    def summary(self) -> Counter:
        """Multiset of c over unordered bipartite pairs i != j."""
        return Counter(c for (i, j), c in self.c_values.items() if i < j)

    def exceptional_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for (i, j), c in sorted(self.c_values.items()) if i < j and c != 0]

    def support_pattern(self) -> List[Tuple[int, int, Tuple[int, ...]]]:
        """Order-free shape of the nonzero pairs.

        Connected components of the graph on trees whose edges are the
        exceptional pairs, as sorted (vertices, edges, sorted c-values).
        """
        pairs = self.exceptional_pairs()
        cv = self.c_values
        comp: Dict[int, int] = {}
        for i, j in pairs:
            ci, cj = comp.setdefault(i, i), comp.setdefault(j, j)
            if ci != cj:
                comp = {k: (ci if v == cj else v) for k, v in comp.items()}
        out = []
        for root in sorted(set(comp.values())):
            verts = [k for k, v in comp.items() if v == root]
            es = [(i, j) for i, j in pairs if comp[i] == root]
            out.append((len(verts), len(es), tuple(sorted(cv[e] for e in es))))
        return sorted(out)

    def to_json(self) -> str:
        return json.dumps({
            "n_leaves": self.n_leaves,
            "trees": [format_tree(t) for t in self.trees],
            "summary": {str(k): v for k, v in sorted(self.summary().items())},
            "pairs": [self.records[k].to_dict() for k in sorted(self.records)],
        }, sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "t_plus", "t_minus", "bipartite", "c", "writhe"]
                   + [f"V({k})" for k in JONES_POINTS])
        for (i, j) in sorted(self.records):
            r = self.records[(i, j)]
            vals = [f"{r.jones[k].real:.12g}{r.jones[k].imag:+.12g}j" if k in r.jones else ""
                    for k in JONES_POINTS]
            w.writerow([i + 1, j + 1, format_tree(self.trees[i]), format_tree(self.trees[j]),
                        r.bipartite, "" if r.c is None else r.c,
                        "" if r.writhe is None else r.writhe] + vals)
        return buf.getvalue()


def census(n: int, with_jones: bool = True) -> Census:
    """Every ordered pair (T_i, T_j) of n-leaf trees: bipartiteness, c, writhe, V."""
    if n > CENSUS_BUDGET:
        raise inv.BudgetError(f"n = {n} exceeds the census budget of {CENSUS_BUDGET}")
    trees = enumerate_trees(n)
    records: Dict[Tuple[int, int], PairRecord] = {}
    for i in range(len(trees)):
        for j in range(len(trees)):
            g = pair_element(trees, i, j)
            rec = PairRecord(i, j, is_oriented(g))
            if rec.bipartite:
                rec.c = c_function(g)
                rec.writhe = writhe(g)
                if with_jones:
                    rec.jones = {k: complex(inv.jones_function(g, inv.branch_A(k))) for k in JONES_POINTS}
            records[(i, j)] = rec
    return Census(n, trees, records)


def search_by_invariant(n: int, predicate: Callable[[GroupElement], bool],
                        oriented_only: bool = True) -> List[Tuple[int, int, GroupElement]]:
    """All (i, j, g(T_i, T_j)) with n leaves satisfying ``predicate``."""
    if n > SEARCH_BUDGET:
        raise inv.BudgetError(f"n = {n} exceeds the search budget of {SEARCH_BUDGET}")
    trees = enumerate_trees(n)
    out = []
    for i in range(len(trees)):
        for j in range(len(trees)):
            g = pair_element(trees, i, j)
            if oriented_only and not is_oriented(g):
                continue
            if predicate(g):
                out.append((i, j, g))
    return out


# ready-made predicates

def jones_nonconstant(g: GroupElement) -> bool:
    return len(inv.jones_function(g).numerator.terms) > 1


def c_equals(value: int) -> Callable[[GroupElement], bool]:
    return lambda g: c_function(g) == value


def is_hopf_link(g: GroupElement) -> bool:
    """Two components whose Jones polynomial is that of a Hopf link."""
    if component_count(build_diagram(g)) != 2:
        return False
    V = inv.link_jones(g)
    return any(V == h for h in HOPF_POLYS)


def oriented_suite(g: GroupElement) -> Dict[str, object]:
    """The exact oriented checks run over a census: wr, parity of c, V(1), Col_3."""
    c = c_function(g)
    col = inv.fox_colourings(build_diagram(g), 3)
    V = inv.link_jones(g)(inv.branch_A("exp(ipi/3)"))
    return {
        "writhe": writhe(g),
        "c": c,
        "V1": inv.jones_at_one(g),
        "V1_expected": Fraction(2) ** c,
        "col3": col,
        "col3_from_jones": 3 * abs(V) ** 2,
    }
