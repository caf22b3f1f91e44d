import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given

from jtpos import kernels
from jtpos.diagram import build_diagram
from jtpos.gamma import gamma_graph
from jtpos.group import parse_word
from jtpos.invariants import lipson_weight_table

from conftest import T_GENS, words


@pytest.fixture
def both():
    def run(fn):
        old = kernels.use_numba(False)
        try:
            a = fn()
            kernels.use_numba(True)
            b = fn()
        finally:
            kernels.use_numba(old)
        return a, b
    return run


@given(words(T_GENS, 4))
def test_diagram_kernels_agree(w):
    g = parse_word(w)
    D = build_diagram(g)
    pd = D.pd_array()
    old = kernels.use_numba(False)
    try:
        a1 = kernels.bracket_histogram(pd, D.n_segments)
        b1 = kernels.lipson_histogram(pd, D.n_segments)
        kernels.use_numba(True)
        a2 = kernels.bracket_histogram(pd, D.n_segments)
        b2 = kernels.lipson_histogram(pd, D.n_segments)
    finally:
        kernels.use_numba(old)
    assert np.array_equal(a1, a2)
    assert np.array_equal(b1, b2)
    assert a1.sum() == 2 ** len(pd)


@given(words(T_GENS, 4))
def test_graph_kernels_agree(w):
    g = parse_word(w)
    G = gamma_graph(g)
    eu = np.array([u - 1 for u, _, _ in G.edges], np.int64)
    ev = np.array([v - 1 for _, v, _ in G.edges], np.int64)
    pos = np.array([s > 0 for _, _, s in G.edges], np.int64)
    old = kernels.use_numba(False)
    try:
        p1 = kernels.potts_histogram(g.n, 3, eu, ev, pos)
        s1 = kernels.subset_histogram(g.n, eu, ev)
        kernels.use_numba(True)
        p2 = kernels.potts_histogram(g.n, 3, eu, ev, pos)
        s2 = kernels.subset_histogram(g.n, eu, ev)
    finally:
        kernels.use_numba(old)
    assert np.array_equal(p1, p2) and p1.sum() == 3 ** g.n
    assert np.array_equal(s1, s2) and s1.sum() == 2 ** len(G.edges)


def test_vertex_sum_agrees(both):
    D = build_diagram(parse_word("x0 x1 x2^-1"))
    pd = D.pd_array()
    W = np.broadcast_to(lipson_weight_table(1.5), (len(pd), 2, 2, 2, 2)).copy()
    a, b = both(lambda: kernels.vertex_model_sum(pd, D.n_segments, 2, W))
    assert abs(a - b) < 1e-9 * (1 + abs(a))


def test_backend_switch():
    old = kernels.use_numba(False)
    assert kernels.backend() == "numpy"
    kernels.use_numba(old)


def test_env_var_disables_numba():
    env = dict(os.environ, JTPOS_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from jtpos import kernels; print(kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
