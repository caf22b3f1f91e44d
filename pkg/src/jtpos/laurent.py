"""Integer Laurent polynomials in the bracket variable A.

The Jones variable is t = A**-4, so t**(1/2) = A**-2.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, float, complex, Fraction]


@dataclass(frozen=True)
class LaurentPoly:
    terms: Tuple[Tuple[int, int], ...]  # sorted (exponent, coefficient), no zeros

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((int(e), int(c)) for e, c in d.items() if c)))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls.from_dict({exp: coeff})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.from_dict({0: c})

    def to_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        d = self.to_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        d: Dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials have Laurent inverses")
            (e, c), = self.terms
            return LaurentPoly.monomial(e * k, c ** (-k))
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def invert_variable(self) -> "LaurentPoly":
        """Substitute A -> 1/A."""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def divmod(self, other: "LaurentPoly") -> Tuple["LaurentPoly", "LaurentPoly"]:
        """Quotient and remainder after clearing the lowest powers of A.

        Writing self = A**s * P and other = A**o * Q with P(0), Q(0) nonzero,
        P is divided by Q as ordinary polynomials over the integers.
        """
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentPoly.const(0), LaurentPoly.const(0)
        s0, o0 = self.terms[0][0], other.terms[0][0]
        P = {e - s0: c for e, c in self.terms}
        Q = {e - o0: c for e, c in other.terms}
        dq = max(Q)
        lead = Q[dq]
        quot: Dict[int, int] = {}
        while P and max(P) >= dq:
            dp = max(P)
            c = P[dp]
            if c % lead:
                break
            k, qc = dp - dq, c // lead
            quot[k] = qc
            for e, qe in Q.items():
                P[e + k] = P.get(e + k, 0) - qc * qe
                if P[e + k] == 0:
                    del P[e + k]
        shift = s0 - o0
        return (LaurentPoly.from_dict({e + shift: c for e, c in quot.items()}),
                LaurentPoly.from_dict({e + s0: c for e, c in P.items()}))

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if r:
            raise ValueError("division is not exact")
        return q

    def __call__(self, A: Number):
        if isinstance(A, (int, Fraction)):
            return sum((c * Fraction(A) ** e for e, c in self.terms), Fraction(0))
        return sum(c * A ** e for e, c in self.terms)

    def at_i(self) -> Tuple[int, int]:
        """Exact value at A = i as a Gaussian integer (re, im)."""
        re = im = 0
        for e, c in self.terms:
            k = e % 4
            if k == 0:
                re += c
            elif k == 1:
                im += c
            elif k == 2:
                re -= c
            else:
                im -= c
        return re, im

    @property
    def degree_span(self) -> Tuple[int, int]:
        if not self.terms:
            return (0, 0)
        return self.terms[0][0], self.terms[-1][0]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in reversed(self.terms):
            parts.append(f"{c:+d}" + (f"*A^{e}" if e else ""))
        s = " ".join(parts)
        return s[1:] if s.startswith("+") else s

    def to_json_dict(self) -> Dict[str, int]:
        return {str(e): c for e, c in self.terms}


def _coerce(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


A = LaurentPoly.monomial(1)
DELTA = LaurentPoly.from_dict({2: -1, -2: -1})


def delta_value(A_val: complex) -> complex:
    return -A_val ** 2 - A_val ** -2


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.const(0)
    for p in polys:
        out = out + p
    return out


@dataclass(frozen=True)
class NormalizedPoly:
    """``numerator / delta**delta_power`` with delta = -A**2 - A**-2."""

    numerator: LaurentPoly
    delta_power: int

    def __call__(self, A_val: complex) -> complex:
        d = delta_value(A_val)
        if abs(d) < 1e-12:
            raise ZeroDivisionError("delta(A) = 0")
        return self.numerator(A_val) / d ** self.delta_power

    def same_as(self, other: "NormalizedPoly") -> bool:
        k = max(self.delta_power, other.delta_power)
        lhs = self.numerator * DELTA ** (k - self.delta_power)
        rhs = other.numerator * DELTA ** (k - other.delta_power)
        return lhs == rhs

    def invert_variable(self) -> "NormalizedPoly":
        return NormalizedPoly(self.numerator.invert_variable(), self.delta_power)

    def __str__(self) -> str:
        return f"({self.numerator}) / (-A^2-A^-2)^{self.delta_power}"


def unit_root(num: int, den: int) -> complex:
    """exp(i*pi*num/den)."""
    return cmath.exp(1j * cmath.pi * num / den)
