"""Rooted binary trees as nested tuples.

A leaf is ``None`` and a caret is a 2-tuple ``(left, right)``.  Leaves are
numbered 1..n from left to right.  The text form uses ``.`` for a leaf and
``(LR)`` for a caret, e.g. ``((..).)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, List, Optional, Tuple, Union

Tree = Union[None, Tuple["Tree", "Tree"]]

LEAF: Tree = None
CARET: Tree = (None, None)


class TreeSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def caret(left: Tree = LEAF, right: Tree = LEAF) -> Tree:
    return (left, right)


def is_leaf(t: Tree) -> bool:
    return t is None


@lru_cache(maxsize=None)
def leaf_count(t: Tree) -> int:
    if t is None:
        return 1
    return leaf_count(t[0]) + leaf_count(t[1])


def parse_tree(text: str) -> Tree:
    """Parse ``.`` / ``(LR)`` notation; whitespace is ignored."""
    s = "".join(text.split())
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise TreeSyntaxError("unexpected end of input", pos)
        ch = s[pos]
        if ch == ".":
            pos += 1
            return None
        if ch == "(":
            pos += 1
            left = parse()
            right = parse()
            if pos >= len(s):
                raise TreeSyntaxError("unbalanced '('", pos)
            if s[pos] != ")":
                raise TreeSyntaxError(f"expected ')' but found {s[pos]!r}", pos)
            pos += 1
            return (left, right)
        raise TreeSyntaxError(f"unexpected character {ch!r}", pos)

    tree = parse()
    if pos != len(s):
        raise TreeSyntaxError("trailing characters", pos)
    return tree


def format_tree(t: Tree) -> str:
    if t is None:
        return "."
    return "(" + format_tree(t[0]) + format_tree(t[1]) + ")"


def carets(t: Tree, start: int = 1) -> Iterator[Tuple[int, int, int]]:
    """Yield ``(a, m, b)`` for every caret: left child spans leaves a..m-1,
    right child spans m..b."""
    if t is None:
        return
    nl = leaf_count(t[0])
    nr = leaf_count(t[1])
    yield (start, start + nl, start + nl + nr - 1)
    yield from carets(t[0], start)
    yield from carets(t[1], start + nl)


def leaf_paths(t: Tree, prefix: str = "") -> List[str]:
    """Root-to-leaf addresses ('0' = left, '1' = right), in leaf order."""
    if t is None:
        return [prefix]
    return leaf_paths(t[0], prefix + "0") + leaf_paths(t[1], prefix + "1")


def internal_paths(t: Tree, prefix: str = "") -> set:
    if t is None:
        return set()
    return {prefix} | internal_paths(t[0], prefix + "0") | internal_paths(t[1], prefix + "1")


def tree_from_internal_paths(paths: set, prefix: str = "") -> Tree:
    if prefix not in paths:
        return None
    return (tree_from_internal_paths(paths, prefix + "0"),
            tree_from_internal_paths(paths, prefix + "1"))


def union_tree(a: Tree, b: Tree) -> Tree:
    """Smallest tree containing both (common refinement)."""
    if a is None:
        return b
    if b is None:
        return a
    return (union_tree(a[0], b[0]), union_tree(a[1], b[1]))


def split_leaf(t: Tree, j: int) -> Tree:
    """Replace leaf j by a caret."""
    if t is None:
        if j != 1:
            raise IndexError("leaf index out of range")
        return (None, None)
    nl = leaf_count(t[0])
    if j <= nl:
        return (split_leaf(t[0], j), t[1])
    return (t[0], split_leaf(t[1], j - nl))


def merge_caret(t: Tree, j: int) -> Tree:
    """Inverse of ``split_leaf``: collapse the caret over leaves j, j+1."""
    if t == (None, None) and j == 1:
        return None
    if t is None:
        raise IndexError("no caret over leaves %d, %d" % (j, j + 1))
    nl = leaf_count(t[0])
    if j < nl:
        return (merge_caret(t[0], j), t[1])
    if j > nl:
        return (t[0], merge_caret(t[1], j - nl))
    raise IndexError("no caret over leaves %d, %d" % (j, j + 1))


def exposed_carets(t: Tree, start: int = 1) -> List[int]:
    """Left leaf index j of every caret whose two children are leaves."""
    if t is None:
        return []
    if t == (None, None):
        return [start]
    nl = leaf_count(t[0])
    return exposed_carets(t[0], start) + exposed_carets(t[1], start + nl)


def leaf_intervals(t: Tree):
    """Standard dyadic subintervals of [0, 1] attached to the leaves."""
    from fractions import Fraction

    out = []

    def walk(node: Tree, lo: Fraction, width: Fraction) -> None:
        if node is None:
            out.append((lo, lo + width))
            return
        half = width / 2
        walk(node[0], lo, half)
        walk(node[1], lo + half, half)

    walk(t, Fraction(0), Fraction(1))
    return out


@lru_cache(maxsize=None)
def all_trees(n: int) -> Tuple[Tree, ...]:
    """All trees with n leaves, left factor recursive order (smaller left first)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (None,)
    out = []
    for k in range(1, n):
        for left in all_trees(k):
            for right in all_trees(n - k):
                out.append((left, right))
    return tuple(out)


def right_vine(n: int) -> Tree:
    t: Optional[Tree] = None
    for _ in range(n - 1):
        t = (None, t)
    return t
