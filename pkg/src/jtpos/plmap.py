"""Piecewise-linear circle maps with dyadic breakpoints.

Used as an independent check on tree-pair arithmetic: ``as_pl_map`` must be
an injective homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .group import GroupElement
from .trees import leaf_intervals

Piece = Tuple[Fraction, Fraction, Fraction, Fraction]  # x0, x1, y0, slope


def _is_power_of_two(q: Fraction) -> bool:
    num, den = q.numerator, q.denominator
    return num > 0 and (num & (num - 1)) == 0 and (den & (den - 1)) == 0 and (num == 1 or den == 1)


@dataclass(frozen=True)
class PLMap:
    """Pieces cover [0, 1) in order; images are taken mod 1."""

    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        if not self.pieces or self.pieces[0][0] != 0 or self.pieces[-1][1] != 1:
            raise ValueError("pieces must cover [0, 1)")
        for a, b in zip(self.pieces, self.pieces[1:]):
            if a[1] != b[0]:
                raise ValueError("pieces must be contiguous")
        for p in self.pieces:
            if not _is_power_of_two(p[3]):
                raise ValueError(f"slope {p[3]} is not a power of 2")

    def _piece_at(self, x: Fraction) -> Piece:
        for p in self.pieces:
            if p[0] <= x < p[1]:
                return p
        raise ValueError(f"{x} outside [0, 1)")

    def __call__(self, x) -> Fraction:
        x = Fraction(x) % 1
        x0, _, y0, s = self._piece_at(x)
        return (y0 + s * (x - x0)) % 1

    def slope_at(self, x) -> Fraction:
        return self._piece_at(Fraction(x) % 1)[3]

    def preimage(self, y) -> Fraction:
        y = Fraction(y) % 1
        for x0, x1, y0, s in self.pieces:
            d = ((y - y0) % 1) / s
            if d < x1 - x0:
                return x0 + d
        raise ValueError("map is not surjective")

    def compose(self, other: "PLMap") -> "PLMap":
        """``self o other`` (apply ``other`` first)."""
        cuts = {p[0] for p in other.pieces}
        cuts |= {other.preimage(p[0]) for p in self.pieces}
        xs = sorted(cuts) + [Fraction(1)]
        pieces = []
        for a, b in zip(xs, xs[1:]):
            y = other(a)
            pieces.append((a, b, self(y), self.slope_at(y) * other.slope_at(a)))
        return PLMap(tuple(pieces)).canonical()

    def canonical(self) -> "PLMap":
        merged: List[list] = []
        for x0, x1, y0, s in self.pieces:
            if merged:
                px0, px1, py0, ps = merged[-1]
                if ps == s and (py0 + ps * (px1 - px0)) % 1 == y0:
                    merged[-1][1] = x1
                    continue
            merged.append([x0, x1, y0, s])
        return PLMap(tuple(tuple(m) for m in merged))

    @property
    def breakpoints(self) -> List[Tuple[Fraction, Fraction]]:
        """(input, output) pairs where a new linear piece starts."""
        return [(p[0], p[2]) for p in self.canonical().pieces]

    def is_identity(self) -> bool:
        return self.canonical().pieces == ((Fraction(0), Fraction(1), Fraction(0), Fraction(1)),)


def identity_map() -> PLMap:
    return PLMap(((Fraction(0), Fraction(1), Fraction(0), Fraction(1)),))


def as_pl_map(g: GroupElement) -> PLMap:
    dom = leaf_intervals(g.t_minus)
    rng = leaf_intervals(g.t_plus)
    pieces = []
    for j, (r0, r1) in enumerate(rng, start=1):
        d0, d1 = dom[g.glued(j) - 1]
        pieces.append((d0, d1, r0, (r1 - r0) / (d1 - d0)))
    pieces.sort()
    return PLMap(tuple(pieces)).canonical()
