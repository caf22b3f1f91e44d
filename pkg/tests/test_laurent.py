import cmath

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jtpos.laurent import A, DELTA, LaurentPoly, NormalizedPoly, delta_value, unit_root

polys = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=5).map(LaurentPoly.from_dict)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == LaurentPoly.const(0)


@given(polys, st.integers(-3, 3))
def test_power_and_evaluation(p, k):
    z = 0.7 + 0.4j
    m = LaurentPoly.monomial(1) ** k
    assert abs(m(z) - z ** k) < 1e-12
    assert abs((p * p)(z) - p(z) ** 2) < 1e-9 * (1 + abs(p(z)) ** 2)


@given(polys)
def test_exact_division(p):
    q = p * DELTA ** 2
    assert q.divide_exact(DELTA ** 2) == p


def test_divide_inexact_raises():
    with pytest.raises(ValueError):
        (A + 1).divide_exact(DELTA)


@given(polys)
def test_invert_variable(p):
    z = unit_root(1, 7)
    assert abs(p.invert_variable()(z) - p(1 / z)) < 1e-9


def test_delta_at_admissible():
    assert abs(delta_value(unit_root(3, 8)) - 2 ** 0.5) < 1e-12
    assert abs(delta_value(unit_root(5, 12)) - 3 ** 0.5) < 1e-12
    assert abs(delta_value(1j) - 2) < 1e-12


def test_normalized_same_as():
    a = NormalizedPoly(DELTA, 3)
    b = NormalizedPoly(LaurentPoly.const(1), 2)
    assert a.same_as(b)
    assert abs(a(unit_root(3, 8)) - 0.5) < 1e-12


def test_at_i():
    assert (DELTA ** 2).at_i() == (4, 0)
