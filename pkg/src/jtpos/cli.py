"""Command line: ``jtpos element|invariant|audit|census``.

Exit codes: 0 success, 1 a positivity verdict failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import enumeration
from . import invariants as inv
from . import positivity as pos
from .diagram import NotOrientedError, build_diagram, c_function, writhe
from .gamma import gamma_graph, is_oriented
from .group import GroupElement, WordSyntaxError, parse_element, reduce
from .trees import TreeSyntaxError
from .tutte import format_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- parsing helpers

_EXP = re.compile(r"^(-?)exp\((-?)(\d*)i?pi(?:/(\d+))?\)$")


def parse_complex(text: str) -> complex:
    """``re,im``, a Python complex literal, ``i``, or ``[-]exp([-]<num>ipi/<den>)``."""
    s = text.replace(" ", "")
    if s in ("i", "+i"):
        return 1j
    if s == "-i":
        return -1j
    m = _EXP.match(s)
    if m:
        outer, sign, num, den = m.groups()
        val = cmath.exp(1j * math.pi * (int(num) if num else 1) / (int(den) if den else 1))
        val = val.conjugate() if sign else val
        return -val if outer else val
    if "," in s:
        re_, im = s.split(",", 1)
        return complex(float(re_), float(im))
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex value {text!r}") from None


def parse_real(text: str):
    """Rationals like ``1/2`` stay exact; ``ln2`` and ``-ln2`` are accepted."""
    s = text.replace(" ", "")
    if s in ("ln2", "+ln2"):
        return math.log(2)
    if s == "-ln2":
        return -math.log(2)
    try:
        if "/" in s or s.lstrip("-").isdigit():
            return Fraction(s)
        return float(s)
    except ValueError:
        raise UsageError(f"cannot parse number {text!r}") from None


def _plain(v):
    """Complex to a JSON-friendly value."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        if abs(v.imag) < 1e-15:
            return v.real
        return [v.real, v.imag]
    return v


def _fmt(v) -> str:
    if isinstance(v, complex):
        if abs(v.imag) < 1e-15:
            return f"{v.real:.15g}"
        return f"{v.real:.15g}{v.imag:+.15g}i"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def read_corpus(path: str) -> List[GroupElement]:
    """One element per line; ``#`` starts a comment."""
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_element(line))
        except (WordSyntaxError, TreeSyntaxError, ValueError) as exc:
            raise UsageError(f"{path}:{lineno}: {exc}") from None
    return out


def _element_arg(args) -> GroupElement:
    text = args.element_opt or args.word or args.element
    if text is None:
        raise UsageError("no element given")
    try:
        return parse_element(text)
    except (WordSyntaxError, TreeSyntaxError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, dest: Optional[str]) -> None:
    if dest in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(dest).write_text(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------- element

def cmd_element(args) -> int:
    g = _element_arg(args)
    oriented = is_oriented(g)
    rep = {"element": g.to_dict(), "n": g.n, "mark": g.mark, "oriented": oriented,
           "c": c_function(g), "gamma": gamma_graph(g).to_dict()}
    if oriented:
        rep["writhe"] = writhe(g)
    if args.json is not None:
        _emit(json.dumps(rep, sort_keys=True, indent=2), args.json)
        return EXIT_OK
    print(f"reduced: {g}")
    print(f"n: {g.n}")
    print(f"mark: {g.mark}")
    print(f"oriented: {str(oriented).lower()}")
    print(f"c: {rep['c']}")
    if oriented:
        print(f"writhe: {rep['writhe']}")
    print(f"gamma: {json.dumps(rep['gamma'], sort_keys=True)}")
    return EXIT_OK


# ---------------------------------------------------------------- invariant

def _functional(args) -> str:
    picked = [f for f in pos.FUNCTIONALS if getattr(args, f, False)]
    if args.functional:
        picked.append(args.functional)
    picked = sorted(set(picked))
    if len(picked) != 1:
        raise UsageError("choose exactly one functional")
    return picked[0]


def _t_to_A(text: str) -> complex:
    key = text.replace(" ", "")
    if key in inv.JONES_BRANCHES:
        return inv.branch_A(key)
    return inv.A_for_t(parse_complex(text))


def build_spec(args, functional: str) -> pos.EvalSpec:
    """An EvalSpec from command-line parameters (admissibility not enforced here)."""
    kw = {}
    if functional in ("jones", "bracket"):
        if args.A is not None:
            kw["A"] = parse_complex(args.A)
        elif args.t is not None:
            kw["A"] = _t_to_A(args.t)
        else:
            raise UsageError(f"{functional} needs --A or --t")
        if functional == "bracket":
            kw["Q"] = pos.admissible_Q(kw["A"])
    elif functional == "tutte":
        if args.Q is None or (args.K is None and args.y is None):
            raise UsageError("tutte needs --Q and --K (or --y)")
        kw["Q"] = int(args.Q)
        if args.y is not None:
            y = parse_real(args.y)
            kw["y"] = y
            kw["K"] = math.log(y) if y > 0 else None
        else:
            K = parse_real(args.K)
            kw["K"] = float(K)
            # keep y exact when K = +-ln 2
            if args.K.replace(" ", "") in ("ln2", "-ln2"):
                kw["y"] = Fraction(2) if K > 0 else Fraction(1, 2)
    elif functional == "kauffman2":
        if args.C is None:
            raise UsageError("kauffman2 needs --C")
        C = parse_complex(args.C)
        kw["C"] = C.real if C.imag == 0 else C
    elif functional == "components":
        if args.k is None:
            raise UsageError("components needs --k")
        kw["k"] = int(args.k)
    elif functional == "colourings":
        if args.m is None:
            raise UsageError("colourings needs --m")
        kw["m"] = int(args.m)
    return pos.EvalSpec(functional, **kw)


def cmd_invariant(args) -> int:
    g = _element_arg(args)
    functional = _functional(args)
    spec = build_spec(args, functional)
    if spec.needs_orientation and not is_oriented(g):
        raise UsageError(f"{functional} needs an element of the oriented subgroup")
    rep = {"element": str(g), "functional": functional, "spec": spec.describe()}
    ok, why = spec.admissibility()
    rep["admissible"] = ok
    if args.psd and not ok:
        rep["note"] = "inadmissible for positivity; value printed"
    if functional in ("jones", "bracket"):
        norm = args.normalization or ("F" if g.in_F else "T")
        rep["normalization"] = norm
        rep["delta_power"] = inv.delta_exponent(g, norm)
        f = inv.jones_function if functional == "jones" else inv.bracket_function
        rep["value"] = _plain(complex(f(g, spec.A, normalization=norm)))
        if args.symbolic:
            rep["symbolic"] = str(f(g, normalization=norm))
    elif functional == "colourings":
        raw = inv.fox_colourings(build_diagram(g), spec.m)
        rep["raw"] = raw
        rep["value"] = str(inv.colouring_function(g, spec.m))
    else:
        val = spec.evaluate(g)
        rep["value"] = _plain(val if isinstance(val, Fraction) else complex(val))
        if functional == "tutte" and args.symbolic:
            rep["symbolic"] = format_poly(inv._tutte_of(g))
        if functional == "kauffman2" and args.symbolic:
            rep["symbolic"] = str(inv.element_lipson(g)).replace("A", "C")
    if args.json is not None:
        _emit(json.dumps(rep, sort_keys=True, indent=2), args.json)
        return EXIT_OK
    if "note" in rep:
        print(rep["note"])
    if "raw" in rep:
        print(f"raw: {rep['raw']}")
        print(f"normalized: {rep['value']}")
    else:
        v = rep["value"]
        print(_fmt(complex(*v) if isinstance(v, list) else v))
    if "symbolic" in rep:
        print(rep["symbolic"])
    if "delta_power" in rep:
        print(f"normalization: {rep['normalization']} (divided by delta^{rep['delta_power']})")
    return EXIT_OK


# ---------------------------------------------------------------- audit

def _specs_from_args(args) -> List[pos.EvalSpec]:
    explicit = any(getattr(args, p) is not None for p in ("A", "t", "Q", "K", "y", "C", "k", "m"))
    if args.functional and explicit:
        return [build_spec(args, args.functional)]
    specs = pos.default_specs()
    if args.functional:
        specs = [s for s in specs if s.functional == args.functional]
    return specs


def _census_report(n: int) -> dict:
    C = enumeration.census(n)
    failures = []
    for (i, j) in C.bipartite_pairs:
        g = enumeration.pair_element(C.trees, i, j)
        s = enumeration.oriented_suite(g)
        if (s["writhe"] != 0 or s["c"] % 2 or s["c"] > 0 or s["V1"] != s["V1_expected"]
                or abs(s["col3"] - s["col3_from_jones"]) > 1e-9):
            failures.append([i + 1, j + 1])
    return {"n": n, "trees": len(C.trees), "bipartite_pairs": len(C.bipartite_pairs),
            "symmetric": C.is_symmetric(),
            "c_summary": {str(k): v for k, v in sorted(C.summary().items())},
            "oriented_suite_failures": failures}


def cmd_audit(args) -> int:
    census_rep = None
    if args.census is not None:
        census_rep = _census_report(args.census)
        C = enumeration.census(args.census, with_jones=False)
        seen, corpus = set(), []
        for (i, j) in C.bipartite_pairs:
            g = reduce(enumeration.pair_element(C.trees, i, j))
            if str(g) not in seen:
                seen.add(str(g))
                corpus.append(g)
    elif args.corpus is not None:
        corpus = read_corpus(args.corpus)
    else:
        kind = args.kind or "Fo"
        corpus = [g for _, g in pos.random_corpus(kind, args.size, seed=args.seed)]
    specs = _specs_from_args(args)
    report = pos.audit(corpus, specs, tol=args.tol, certificates=args.certificates, explore=args.explore)
    payload = json.loads(report.to_json())
    if census_rep is not None:
        payload["census"] = census_rep
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.json is not None:
        _emit(text, args.json)
    if args.csv is not None:
        _emit(report.to_csv(), args.csv)
    if args.json is None and args.csv is None:
        for e in report.entries:
            flag = "n/a" if not e.admissible else ("PASS" if e.verdict else "FAIL")
            lam = "" if e.min_eigenvalue is None else f" min_eig={e.min_eigenvalue:.3g}"
            note = f" ({e.note})" if e.note else ""
            print(f"{flag:4s} {e.spec.name()} r={e.r}{lam}{note}")
        if census_rep is not None:
            print(f"census({census_rep['n']}): c summary {census_rep['c_summary']}, "
                  f"symmetric {census_rep['symmetric']}, "
                  f"oriented-suite failures {len(census_rep['oriented_suite_failures'])}")
    ok = report.passed
    if census_rep is not None and census_rep["oriented_suite_failures"]:
        ok = False
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- census

def cmd_census(args) -> int:
    n = args.census if args.census is not None else args.n
    if n is None:
        raise UsageError("census needs a leaf count")
    C = enumeration.census(n)
    if args.json is not None:
        _emit(C.to_json(), args.json)
    if args.csv is not None:
        _emit(C.to_csv(), args.csv)
    if args.json is None and args.csv is None:
        print(f"trees: {len(C.trees)}")
        print(f"bipartite ordered pairs: {len(C.bipartite_pairs)}")
        print(f"symmetric: {str(C.is_symmetric()).lower()}")
        for c, k in sorted(C.summary().items()):
            print(f"c = {c}: {k} unordered pairs")
        print("nonzero pairs: " + ", ".join(f"({i + 1},{j + 1})" for i, j in C.exceptional_pairs()))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--functional", choices=pos.FUNCTIONALS)
    p.add_argument("--A", help="bracket variable: re,im or exp(5ipi/12)")
    p.add_argument("--t", help="Jones variable: 1, i, -i, exp(ipi/3), exp(-ipi/3) or a number")
    p.add_argument("--Q")
    p.add_argument("--K", help="coupling, e.g. ln2, -ln2, 1")
    p.add_argument("--y", help="e^K given directly, e.g. 1/2")
    p.add_argument("--C")
    p.add_argument("--k")
    p.add_argument("--m")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                   help="JSON output (stdout if no path)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jtpos", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("element", help="reduced pair, orientation, c, writhe, Γ-graph")
    p.add_argument("element", nargs="?")
    p.add_argument("--element", dest="element_opt")
    p.add_argument("--word")
    _add_output(p)
    p.set_defaults(func=cmd_element)

    p = sub.add_parser("invariant", help="evaluate one normalized functional")
    p.add_argument("element", nargs="?")
    p.add_argument("--element", dest="element_opt")
    p.add_argument("--word")
    for f in pos.FUNCTIONALS:
        p.add_argument(f"--{f}", action="store_true")
    _add_params(p)
    p.add_argument("--normalization", choices=("F", "T"))
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--psd", action="store_true", help="report whether the parameters are covered by a positivity theorem")
    _add_output(p)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("audit", help="Gram-matrix positivity audit")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--corpus", help="file with one element per line")
    src.add_argument("--census", type=int, help="use the oriented pairs of census(n)")
    src.add_argument("--kind", choices=sorted(pos.GENERATORS), help="random corpus generators")
    p.add_argument("--size", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--certificates", action="store_true")
    p.add_argument("--explore", action="store_true",
                   help="also compute eigenvalues for inadmissible specs (no verdict)")
    _add_params(p)
    _add_output(p)
    p.add_argument("--csv", nargs="?", const="-", default=None, metavar="PATH")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("census", help="all tree pairs with n leaves")
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("--census", type=int)
    _add_output(p)
    p.add_argument("--csv", nargs="?", const="-", default=None, metavar="PATH")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, NotOrientedError, inv.BudgetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
