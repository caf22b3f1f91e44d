import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from jtpos import invariants as inv
from jtpos.diagram import build_diagram, c_function, component_count, oriented_diagram
from jtpos.gamma import SignedGraph, gamma_graph
from jtpos.group import identity, insert_opposing, invert, parse_word, shift
from jtpos.laurent import DELTA, LaurentPoly, unit_root
from jtpos.positivity import admissible_A

from conftest import FO_GENS, T_GENS, words

TO_GENS = FO_GENS + ["c0", "c2"]
X0X1 = parse_word("x0 x1")


def test_bracket_examples():
    assert inv.element_bracket(identity()) == LaurentPoly.const(1)
    assert inv.bracket_poly(build_diagram(X0X1)) == DELTA
    assert abs(inv.bracket_function(X0X1, unit_root(3, 8)) - 0.5) < 1e-12


def test_jones_examples():
    assert inv.jones_at_one(X0X1) == Fraction(1, 4)
    assert abs(inv.jones_function(X0X1, inv.branch_A("1")) - 0.25) < 1e-12
    # t = e^{-i pi/3} goes with A = e^{-5 pi i/12}
    A = inv.branch_A("exp(-ipi/3)")
    assert abs(A ** -4 - cmath.exp(-1j * math.pi / 3)) < 1e-12


@given(words(TO_GENS, 3))
def test_jones_inverse_symmetry(w):
    g = parse_word(w)
    assert inv.jones_function(invert(g)).same_as(inv.jones_function(g).invert_variable())


@given(words(FO_GENS, 3))
def test_jones_at_one_and_components(w):
    g = parse_word(w)
    assert inv.jones_at_one(g) == Fraction(2) ** c_function(g)
    assert inv.component_function(g, 2) == inv.jones_at_one(g)


@given(words(TO_GENS, 3))
def test_chain_route(w):
    g = parse_word(w)
    for key in ("i", "-i", "exp(ipi/3)", "exp(-ipi/3)"):
        a = inv.jones_function(g, inv.branch_A(key))
        assert abs(a - inv.jones_chain_value(g, key)) < 1e-9


@given(words(TO_GENS, 3))
def test_orientation_reversal(w):
    g = parse_word(w)
    z = unit_root(1, 5)
    a = inv.jones_function(g, z)
    b = inv.jones_function(g, z, reverse=True)
    assert abs(abs(a) - abs(b)) < 1e-9


@given(words(["x0", "x1", "x2"], 4))
def test_shift_invariance(w):
    g = parse_word(w)
    A = unit_root(5, 12)
    assert abs(inv.bracket_function(shift(g), A) - inv.bracket_function(g, A)) < 1e-9


def test_potts_examples():
    assert inv.potts_Z(SignedGraph(1, ()), 3, K=0.3) == pytest.approx(3)
    one = SignedGraph(2, ((1, 2, 1),))
    assert inv.potts_Z(one, 2, y=Fraction(2)) == Fraction(3)
    assert abs(inv.signed_potts_Z(SignedGraph(1, ()), 2, unit_root(3, 8)) - 1) < 1e-12


@given(words(T_GENS, 3))
def test_potts_tutte_dictionary(w):
    G = gamma_graph(parse_word(w))
    for Q in (2, 3):
        y = Fraction(3, 2)
        assert inv.potts_Z(G, Q, y=y) == inv.potts_from_tutte(G, Q, y)


@given(words(T_GENS, 3))
def test_bracket_equals_signed_potts(w):
    g = parse_word(w)
    br = inv.element_bracket(g)
    G = gamma_graph(g)
    for Q, A, _ in admissible_A():
        z = inv.signed_potts_Z(G, Q, A)
        assert abs(br(A) - z) <= 1e-9 * max(1, abs(z))
        assert abs(z - inv.signed_potts_bruteforce(G, Q, A)) <= 1e-9 * max(1, abs(z))


@given(words(T_GENS, 3))
def test_tutte_function_symmetric(w):
    g = parse_word(w)
    x, y = inv.potts_xy(2, Fraction(2))
    assert inv.tutte_function(g, x, y) == inv.tutte_function(invert(g), x, y)
    assert inv.tutte_function(g, x, y, method="subset") == inv.tutte_function(g, x, y)


def test_fox_examples():
    assert inv.fox_colourings(build_diagram(identity()), 3) == 3
    assert inv.fox_colourings(build_diagram(X0X1), 3) == 9
    assert inv.colouring_function(X0X1, 3) == Fraction(1, 9)


@given(words(T_GENS, 3))
def test_fox_snf_vs_brute(w):
    D = build_diagram(parse_word(w))
    arcs = inv.fox_matrix(D)[1]
    if arcs > 7:
        return
    for m in (2, 3, 4):
        assert inv.fox_colourings(D, m) == inv.fox_colourings_bruteforce(D, m)


def test_lipson_examples():
    assert inv.lipson_Z(build_diagram(identity()), 2.0) == 2
    assert inv.lipson_Z(build_diagram(X0X1), 2.0) == pytest.approx(4)
    assert inv.kauffman2_link_value(X0X1, 2.0) == pytest.approx(-2)
    for C in (-1.0, 2.0, 0.5, 3.0, 1j):
        assert inv.kauffman2_function(X0X1, C) == pytest.approx(0.25)
        assert inv.kauffman2_function(identity(), C) == pytest.approx(1)


@given(words(TO_GENS, 3))
def test_lipson_smoothing_vs_brute(w):
    D = build_diagram(parse_word(w))
    if D.n_segments > 16:
        return
    for C in (2.0, -1.0, 0.5 + 0.3j):
        a, b = inv.lipson_Z(D, C), inv.lipson_Z(D, C, method="brute")
        assert abs(a - b) < 1e-9 * (1 + abs(a))


@given(words(FO_GENS, 3))
def test_lipson_inverse_is_mirror(w):
    # the mirror image exchanges C and 1/C
    g = parse_word(w)
    assert abs(inv.kauffman2_function(invert(g), 2.0) - inv.kauffman2_function(g, 0.5)) < 1e-12


def test_lipson_real_c_asymmetry():
    g = parse_word("x0 x1 x2^-1 x1^-1 x1^-1 x0^-1")
    assert inv.element_lipson(g) == LaurentPoly.from_dict({0: 2, -4: 2})
    assert inv.kauffman2_function(g, 2.0) == pytest.approx(0.033203125)
    assert inv.kauffman2_function(invert(g), 2.0) == pytest.approx(0.53125)


def test_homfly_q1():
    O = oriented_diagram(X0X1)
    assert inv.homfly_q1_Z(O, 2) == 4
    assert inv.homfly_q1_Z(O, 1) == 1
    assert inv.homfly_q1_Z(oriented_diagram(identity()), 3) == 3
    assert inv.component_function(X0X1, 2) == Fraction(1, 4)
    assert inv.component_function(identity(), -2) == 1
    with pytest.raises(ValueError):
        inv.component_function(X0X1, 0)


@given(words(TO_GENS, 3))
def test_homfly_q1_counts_components(w):
    g = parse_word(w)
    D = build_diagram(g)
    if D.n_segments > 14:
        return
    for k in (2, 3):
        assert inv.homfly_q1_Z(oriented_diagram(g), k) == k ** component_count(D)


def test_budget():
    g = parse_word("x0 x1 x2 x3 x4 x5 x6 x7 x8 x9 x10 x11 x12 x0^-1 x1^-1 x2^-1 x3^-1 x4^-1 x5^-1")
    with pytest.raises(inv.BudgetError):
        inv.bracket_poly(build_diagram(g))
