import pytest
from hypothesis import given

from jtpos.gamma import SignedGraph, chromatic_value, gamma_graph, is_connected, is_oriented, two_colouring
from jtpos.group import identity, insert_opposing, invert, parse_word, raw_element
from jtpos.trees import all_trees

from conftest import FO_GENS, T_GENS, words


def test_gamma_x0():
    G = gamma_graph(parse_word("x0"))
    assert G.edge_multiset() == [(1, 2, -1), (1, 2, 1), (1, 3, 1), (2, 3, -1)]


def test_opposing_pair_adds_pendant_double_edge():
    g = parse_word("x0 x1")
    h = insert_opposing(g, 2)
    G, H = gamma_graph(g), gamma_graph(h)
    assert H.n == G.n + 1
    assert len(H.edges) == len(G.edges) + 2
    new = [e for e in H.edges if h.n in e[:2] or 3 in e[:2]]
    assert new


@pytest.mark.parametrize("n", [2, 4, 6])
def test_identity_rep_doubled_tree(n):
    t = all_trees(n)[-1]
    G = gamma_graph(raw_element(t, t, 1))
    pos = sorted((min(u, v), max(u, v)) for u, v, s in G.edges if s > 0)
    neg = sorted((min(u, v), max(u, v)) for u, v, s in G.edges if s < 0)
    assert pos == neg and len(pos) == n - 1
    assert is_connected(G)


def test_two_colouring_examples():
    assert two_colouring(gamma_graph(parse_word("x0 x1"))) is not None
    assert two_colouring(gamma_graph(parse_word("x0"))) is None
    assert two_colouring(SignedGraph(1, ())) == {1: 1}


def test_is_oriented_examples():
    assert is_oriented(parse_word("x0 x1"))
    assert not is_oriented(parse_word("x0"))
    assert is_oriented(identity())
    assert is_oriented(parse_word("c0"))
    assert not is_oriented(parse_word("c1"))


def test_chromatic():
    assert chromatic_value(gamma_graph(parse_word("x0 x1")), 2) == 2
    assert chromatic_value(gamma_graph(parse_word("x0")), 2) == 0
    G = gamma_graph(parse_word("x0 x1^-1"))
    # brute force and the Tutte route agree on q = 7
    assert chromatic_value(G, 7) > 0


@given(words(FO_GENS))
def test_fo_words_oriented(w):
    assert is_oriented(parse_word(w))


@given(words(T_GENS))
def test_orientation_inverse_closed(w):
    g = parse_word(w)
    assert is_oriented(g) == is_oriented(invert(g))
    assert is_connected(gamma_graph(g))
