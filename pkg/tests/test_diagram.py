import pytest
from hypothesis import assume, given

from jtpos.diagram import (NotOrientedError, build_diagram, c_function, component_count,
                           euler_characteristic, oriented_diagram, split_boundary, writhe)
from jtpos.group import identity, invert, multiply, parse_word, raw_element, shift
from jtpos.trees import all_trees

from conftest import FO_GENS, T_GENS, words

TO_GENS = FO_GENS + ["c0", "c2"]


@pytest.mark.parametrize("n", [1, 3, 5])
def test_identity_is_unlink(n):
    t = all_trees(n)[0]
    D = build_diagram(raw_element(t, t, 1))
    assert D.n_crossings == 2 * (n - 1)
    assert component_count(D) == n


def test_x0x1():
    g = parse_word("x0 x1")
    D = build_diagram(g)
    assert D.n_crossings == 6
    assert component_count(D) == 2
    assert c_function(g) == -2
    assert writhe(g) == 0
    assert c_function(identity()) == 0


def test_not_oriented_raises():
    with pytest.raises(NotOrientedError):
        oriented_diagram(parse_word("x0"))


@given(words(T_GENS, 5))
def test_planar_and_c_symmetric(w):
    g = parse_word(w)
    D = build_diagram(g)
    assert euler_characteristic(D) == 2
    assert c_function(g) == c_function(invert(g))
    assert c_function(g) <= 0


@given(words(TO_GENS, 5))
def test_oriented_properties(w):
    g = parse_word(w)
    assert writhe(g) == 0
    c = c_function(g)
    assert c <= 0 and c % 2 == 0
    O = oriented_diagram(g)
    # crossing sign is determined by the half the crossing lives in
    signs = {x.edge_sign: set() for x in O.base.crossings}
    for x, s in zip(O.base.crossings, O.crossing_sign):
        signs[x.edge_sign].add(s)
    assert all(len(v) == 1 for v in signs.values())
    if 1 in signs and -1 in signs:
        assert signs[1] != signs[-1]


@given(words(FO_GENS, 3), words(FO_GENS, 3))
def test_writhe_additive(a, b):
    A, B = parse_word(a), parse_word(b)
    assert writhe(multiply(A, B)) == writhe(A) + writhe(B)


@given(words(["x0", "x1", "x2"], 4))
def test_shift_adds_unknot(w):
    g = parse_word(w)
    # on the representative with a new root caret over both trees
    rep = raw_element((None, g.t_plus), (None, g.t_minus), 1)
    assert component_count(build_diagram(rep)) == component_count(build_diagram(g)) + 1
    assert c_function(shift(g)) == c_function(g)


@given(words(T_GENS, 4))
def test_split_boundary(w):
    g = parse_word(w)
    assume(g.n >= 2)  # a single leaf has no crossings to split
    S = split_boundary(g)
    assert len(S.boundary) == 2 * g.n
    D = build_diagram(g)
    assert len(S.upper) + len(S.lower) == D.n_crossings


def test_upper_half_depends_only_on_top_tree():
    ts = all_trees(5)
    top = ts[3]
    halves = set()
    for b in ts:
        D = build_diagram(raw_element(top, b, 1))
        S = split_boundary(raw_element(top, b, 1))
        halves.add(tuple(sorted(tuple(sorted(D.crossings[i].ends)) for i in S.upper)))
    assert len(halves) == 1
