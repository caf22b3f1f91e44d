"""Marked tree pairs for Thompson's groups F and T.

An element is a triple ``(t_plus, t_minus, mark)``: leaf 1 of ``t_plus`` is
glued to leaf ``mark`` of ``t_minus`` and the remaining leaves follow in
cyclic order.  Elements of F have ``mark == 1``.  The pair acts as the map
sending the leaf intervals of ``t_minus`` to the glued leaf intervals of
``t_plus``, so ``a * b`` means "apply b, then a".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List

from . import trees
from .trees import Tree, format_tree, leaf_count, parse_tree


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    t_plus: Tree
    t_minus: Tree
    mark: int = 1

    @property
    def n(self) -> int:
        return leaf_count(self.t_plus)

    @property
    def in_F(self) -> bool:
        return self.mark == 1

    def glued(self, j: int) -> int:
        """Index of the ``t_minus`` leaf glued to leaf j of ``t_plus``."""
        return ((j + self.mark - 2) % self.n) + 1

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __invert__(self) -> "GroupElement":
        return invert(self)

    def __pow__(self, k: int) -> "GroupElement":
        return power(self, k)

    def __str__(self) -> str:
        return f"{format_tree(self.t_plus)} {format_tree(self.t_minus)} {self.mark}"

    def to_dict(self) -> dict:
        return {"t_plus": format_tree(self.t_plus),
                "t_minus": format_tree(self.t_minus),
                "mark": self.mark}

    @classmethod
    def from_dict(cls, d: dict) -> "GroupElement":
        return make_element(parse_tree(d["t_plus"]), parse_tree(d["t_minus"]), int(d.get("mark", 1)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check(t_plus: Tree, t_minus: Tree, mark: int) -> None:
    n1, n2 = leaf_count(t_plus), leaf_count(t_minus)
    if n1 != n2:
        raise ValueError(f"leaf counts {n1} != {n2}")
    if not 1 <= mark <= n1:
        raise ValueError(f"mark {mark} out of range 1..{n1}")


def raw_element(t_plus: Tree, t_minus: Tree, mark: int = 1) -> GroupElement:
    """Build a (possibly unreduced) representative without cancelling carets."""
    _check(t_plus, t_minus, mark)
    return GroupElement(t_plus, t_minus, mark)


def make_element(t_plus: Tree, t_minus: Tree, mark: int = 1) -> GroupElement:
    _check(t_plus, t_minus, mark)
    return reduce(GroupElement(t_plus, t_minus, mark))


def identity() -> GroupElement:
    return GroupElement(None, None, 1)


def _opposing_caret(g: GroupElement):
    n = g.n
    bottom = set(trees.exposed_carets(g.t_minus))
    for j in trees.exposed_carets(g.t_plus):
        k = g.glued(j)
        if k != n and k in bottom:
            return j, k
    return None


def reduce(g: GroupElement) -> GroupElement:
    """Cancel opposing carets until none remain."""
    while True:
        hit = _opposing_caret(g)
        if hit is None:
            return g
        j, k = hit
        mark = g.mark - 1 if k < g.mark - 1 else g.mark
        g = GroupElement(trees.merge_caret(g.t_plus, j), trees.merge_caret(g.t_minus, k), mark)


def is_reduced(g: GroupElement) -> bool:
    return _opposing_caret(g) is None


def insert_opposing(g: GroupElement, j: int) -> GroupElement:
    """Split leaf j of ``t_minus`` and the glued leaf of ``t_plus``."""
    n = g.n
    if not 1 <= j <= n:
        raise IndexError("leaf index out of range")
    jp = ((j - g.mark) % n) + 1
    mark = g.mark + 1 if j < g.mark else g.mark
    return GroupElement(trees.split_leaf(g.t_plus, jp), trees.split_leaf(g.t_minus, j), mark)


def insert_opposing_top(g: GroupElement, j: int) -> GroupElement:
    """Split leaf j of ``t_plus`` together with its glued ``t_minus`` leaf."""
    return insert_opposing(g, g.glued(j))


def expand_bottom(g: GroupElement, target: Tree) -> GroupElement:
    """Insert opposing carets until ``t_minus`` equals ``target``.

    ``target`` must contain ``g.t_minus``.
    """
    want = trees.internal_paths(target)
    while True:
        paths = trees.leaf_paths(g.t_minus)
        for j, p in enumerate(paths, start=1):
            if p in want:
                g = insert_opposing(g, j)
                break
        else:
            if g.t_minus != target:
                raise ValueError("target does not refine the bottom tree")
            return g


def expand_top(g: GroupElement, target: Tree) -> GroupElement:
    want = trees.internal_paths(target)
    while True:
        paths = trees.leaf_paths(g.t_plus)
        for j, p in enumerate(paths, start=1):
            if p in want:
                g = insert_opposing_top(g, j)
                break
        else:
            if g.t_plus != target:
                raise ValueError("target does not refine the top tree")
            return g


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    common = trees.union_tree(a.t_minus, b.t_plus)
    a2 = expand_bottom(a, common)
    b2 = expand_top(b, common)
    n = a2.n
    mark = ((a2.mark + b2.mark - 2) % n) + 1
    return reduce(GroupElement(a2.t_plus, b2.t_minus, mark))


def invert(g: GroupElement) -> GroupElement:
    n = g.n
    mark = ((n - g.mark + 1) % n) + 1
    return reduce(GroupElement(g.t_minus, g.t_plus, mark))


def power(g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        return power(invert(g), -k)
    out = identity()
    base = g
    while k:
        if k & 1:
            out = multiply(out, base)
        base = multiply(base, base)
        k >>= 1
    return out


def product(elements: Iterable[GroupElement]) -> GroupElement:
    out = identity()
    for e in elements:
        out = multiply(out, e)
    return out


def equals(a: GroupElement, b: GroupElement) -> bool:
    return reduce(a) == reduce(b)


def shift(g: GroupElement) -> GroupElement:
    """The endomorphism of F with x_i -> x_{i+1}."""
    if g.mark != 1:
        raise ValueError("shift is only defined on F (mark 1)")
    return reduce(GroupElement((None, g.t_plus), (None, g.t_minus), 1))


X0 = GroupElement(((None, None), None), (None, (None, None)), 1)
C0 = GroupElement((None, None), (None, None), 2)


@lru_cache(maxsize=None)
def x(k: int) -> GroupElement:
    if k < 0:
        raise ValueError("generator index must be non-negative")
    if k == 0:
        return X0
    return shift(x(k - 1))


@lru_cache(maxsize=None)
def c(k: int) -> GroupElement:
    if k < 0:
        raise ValueError("generator index must be non-negative")
    if k == 0:
        return C0
    return multiply(invert(x(k - 1)), c(k - 1))


def generator(kind: str, index: int) -> GroupElement:
    if kind == "x":
        return x(index)
    if kind == "c":
        return c(index)
    raise ValueError(f"unknown generator family {kind!r}")


_TOKEN = re.compile(r"^([xc])(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> GroupElement:
    """Parse e.g. ``"x0 x1^-1 c2^3"``; the empty word is the identity."""
    out = identity()
    for tok in text.split():
        m = _TOKEN.match(tok)
        if m is None:
            raise WordSyntaxError(f"unknown token {tok!r}")
        g = generator(m.group(1), int(m.group(2)))
        e = int(m.group(3)) if m.group(3) is not None else 1
        out = multiply(out, power(g, e))
    return out


def parse_element(text: str) -> GroupElement:
    """Accept a word, a single tree (read as the pair (T, T)), or ``T+ T- [mark]``."""
    s = text.strip()
    if not s or s[0] not in "(.":
        return parse_word(s)
    parts = s.split()
    if len(parts) == 1:
        t = parse_tree(parts[0])
        return make_element(t, t, 1)
    if len(parts) in (2, 3):
        mark = int(parts[2]) if len(parts) == 3 else 1
        return make_element(parse_tree(parts[0]), parse_tree(parts[1]), mark)
    raise WordSyntaxError(f"cannot parse element {text!r}")


def common_bottom(elements: List[GroupElement]) -> List[GroupElement]:
    """Re-expand all elements to share one bottom tree (and hence one n)."""
    if not elements:
        return []
    target = elements[0].t_minus
    for g in elements[1:]:
        target = trees.union_tree(target, g.t_minus)
    return [expand_bottom(g, target) for g in elements]
