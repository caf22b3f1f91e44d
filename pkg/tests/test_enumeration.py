import json

import pytest

from jtpos import enumeration as en
from jtpos.invariants import BudgetError


def test_tree_counts():
    assert len(en.enumerate_trees(1)) == 1
    assert len(en.enumerate_trees(3)) == 2
    assert len(en.enumerate_trees(5)) == 14
    with pytest.raises(BudgetError):
        en.enumerate_trees(13)


def test_census_2():
    C = en.census(2)
    assert C.bipartite_pairs == [(0, 0)]
    assert C.c_values[(0, 0)] == 0


@pytest.fixture(scope="module")
def census5():
    return en.census(5)


def test_census_5_summary(census5):
    assert census5.summary() == {-2: 7, -4: 1}
    assert census5.is_symmetric()
    assert all(census5.c_values[(i, i)] == 0 for i in range(14))
    assert len(census5.exceptional_pairs()) == 8


# the appendix pairs, in its own numbering
APPENDIX = {(1, 9): -2, (1, 12): -2, (2, 11): -2, (6, 14): -2, (8, 10): -2, (8, 13): -2,
            (10, 13): -2, (9, 12): -4}


def _pattern(pairs):
    comps = []
    for (i, j), c in pairs.items():
        hit = [k for k, (vs, _) in enumerate(comps) if i in vs or j in vs]
        vs, cs = {i, j}, [c]
        for k in sorted(hit, reverse=True):
            vs |= comps[k][0]
            cs += comps[k][1]
            del comps[k]
        comps.append((vs, cs))
    return sorted((len(vs), len(cs), tuple(sorted(cs))) for vs, cs in comps)


def test_census_5_matches_appendix_pattern(census5):
    assert census5.support_pattern() == _pattern(APPENDIX)
    assert census5.support_pattern() == [(2, 1, (-2,)), (2, 1, (-2,)), (3, 3, (-4, -2, -2)),
                                         (3, 3, (-2, -2, -2))]
    assert len({t for p in census5.exceptional_pairs() for t in p}) == 10


def test_census_5_oriented_suite(census5):
    for (i, j) in census5.bipartite_pairs:
        s = en.oriented_suite(en.pair_element(census5.trees, i, j))
        assert s["writhe"] == 0
        assert s["c"] % 2 == 0
        assert s["V1"] == s["V1_expected"]
        assert abs(s["col3"] - s["col3_from_jones"]) < 1e-9


def test_census_outputs(census5):
    d = json.loads(census5.to_json())
    assert len(d["trees"]) == 14 and len(d["pairs"]) == 196
    assert d["summary"] == {"-2": 7, "-4": 1}
    assert len(census5.to_csv().splitlines()) == 197


def test_search():
    assert en.search_by_invariant(5, en.jones_nonconstant)
    hits = en.search_by_invariant(5, en.c_equals(-4))
    assert len({frozenset((i, j)) for i, j, _ in hits}) == 1


def test_hopf_search():
    assert en.search_by_invariant(5, en.is_hopf_link) == []
    hits = en.search_by_invariant(6, en.is_hopf_link)
    assert len({frozenset((i, j)) for i, j, _ in hits}) == 2
