"""Time the state-sum kernels with numba and with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import time

import numpy as np

from jtpos import kernels
from jtpos.diagram import build_diagram
from jtpos.gamma import gamma_graph
from jtpos.group import parse_word
from jtpos.invariants import lipson_weight_table

WORDS = {
    "small": "x0 x1 x2^-1 x1^-1",
    "medium": "x0 x1 x2^-1 x1^-1 x1^-1 x0^-1 x1 x2",
    "large": "x0 x1 x2^-1 x1^-1 x1^-1 x0^-1 x1 x2 x3^-1 x2^-1",
}


def cases(sizes):
    for name in sizes:
        g = parse_word(WORDS[name])
        D = build_diagram(g)
        pd = D.pd_array()
        G = gamma_graph(g)
        eu = np.array([u - 1 for u, _, _ in G.edges], np.int64)
        ev = np.array([v - 1 for _, v, _ in G.edges], np.int64)
        pos = np.array([s > 0 for _, _, s in G.edges], np.int64)
        X = len(pd)
        W = np.broadcast_to(lipson_weight_table(2.0), (X, 2, 2, 2, 2)).copy()
        label = f"{name} (n={g.n}, crossings={X})"
        yield label, "bracket_histogram", lambda pd=pd, D=D: kernels.bracket_histogram(pd, D.n_segments)
        yield label, "lipson_histogram", lambda pd=pd, D=D: kernels.lipson_histogram(pd, D.n_segments)
        yield label, "potts_histogram Q=3", lambda g=g, eu=eu, ev=ev, pos=pos: kernels.potts_histogram(g.n, 3, eu, ev, pos)
        yield label, "subset_histogram", lambda g=g, eu=eu, ev=ev: kernels.subset_histogram(g.n, eu, ev)
        if D.n_segments <= 20:
            yield label, "vertex_model_sum k=2", lambda pd=pd, D=D, W=W: kernels.vertex_model_sum(pd, D.n_segments, 2, W)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", nargs="+", default=list(WORDS), choices=list(WORDS))
    ap.add_argument("--json")
    args = ap.parse_args()
    if not kernels.NUMBA_AVAILABLE:
        print("numba unavailable (or disabled); only the numpy path is timed")
    rows = []
    print(f"{'case':34s} {'kernel':22s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for label, kname, fn in cases(args.sizes):
        kernels.use_numba(False)
        t_np, ref = best_of(fn, args.repeat)
        t_nb = None
        if kernels.NUMBA_AVAILABLE:
            kernels.use_numba(True)
            fn()  # compile outside the timing
            t_nb, out = best_of(fn, args.repeat)
            assert np.allclose(out, ref), f"backends disagree on {kname}"
        speed = f"{t_np / t_nb:8.1f}" if t_nb else "     n/a"
        nb_txt = f"{t_nb:10.4f}" if t_nb else "       n/a"
        print(f"{label:34s} {kname:22s} {t_np:10.4f} {nb_txt} {speed}")
        rows.append({"case": label, "kernel": kname, "numpy_s": t_np, "numba_s": t_nb})
    kernels.use_numba(True)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
