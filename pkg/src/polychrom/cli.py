"""Command-line interface.

Exit codes: 0 success (for ``verify``: polychromatic), 1 not polychromatic,
2 bad input or parameters out of range, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence, TextIO

from .constructions import build_seed, construct, extend_seed
from .errors import BudgetExceeded, PolychromError
from .graph import EdgeColoring, FamilySpec, Kind, coloring_from_json, dumps
from .numbers import p_c, p_f, p_r, pr_table, pr_t
from .oracle import DEFAULT_BUDGET, Budget, all_cycles_polychromatic, check_cycle_monotonicity, verify
from .search import (
    best_quasi,
    best_simply_ordered,
    cyclic_ramsey,
    full_max,
    full_search,
)
from .structure import block_shift_normalize

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

KINDS = {k.value: k for k in Kind}


def _family(args: argparse.Namespace) -> FamilySpec:
    if args.family is None:
        raise PolychromError("--family is required")
    return FamilySpec(KINDS[args.family], args.q, args.r)


def _budget(args: argparse.Namespace) -> Budget:
    if args.budget is None:
        return DEFAULT_BUDGET
    return Budget(max_steps=args.budget)


def _read_coloring(path: str | None) -> EdgeColoring:
    try:
        if path is None or path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise PolychromError(f"invalid JSON: {exc}") from exc
    return coloring_from_json(data)


def _emit(text: str, out: str | None, stream: TextIO) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        stream.write(text + "\n")


def cmd_construct(args: argparse.Namespace, stream: TextIO) -> int:
    family = _family(args)
    if family.kind in (Kind.R_REGULAR, Kind.CONNECTED_R_REGULAR):
        family.validate(args.n)
        rule = Kind.TWO_REGULAR if family.kind is Kind.R_REGULAR else Kind.CYCLES
        built = extend_seed(build_seed(family.r, family.q), args.n, rule)
    else:
        built = construct(family, args.n)
    _emit(dumps(built.to_json()), args.out, stream)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, stream: TextIO) -> int:
    coloring = _read_coloring(args.input)
    verdict = verify(coloring, _family(args), _budget(args), jobs=args.jobs)
    _emit(dumps(verdict.to_json()), args.out, stream)
    return EXIT_OK if verdict.polychromatic else EXIT_FAIL


def cmd_normalize(args: argparse.Namespace, stream: TextIO) -> int:
    coloring = _read_coloring(args.input)
    out = block_shift_normalize(coloring, _family(args))
    _emit(dumps(out.to_json()), args.out, stream)
    return EXIT_OK


def cmd_number(args: argparse.Namespace, stream: TextIO) -> int:
    fn = {"f": p_f, "c": p_c, "r": p_r}.get(args.family)
    if fn is None:
        raise PolychromError("number supports --family f, c or r")
    _emit(dumps(fn(args.n, args.q).to_json()), args.out, stream)
    return EXIT_OK


def cmd_ramsey(args: argparse.Namespace, stream: TextIO) -> int:
    if args.table:
        lo = args.s_min if args.s_min is not None else max(3, args.t)
        hi = args.s_max if args.s_max is not None else lo + 40
        lines = ["s\tpr\tprovenance"]
        lines += [f"{s}\t{v}\t{p}" for s, v, p in pr_table(args.t, range(lo, hi + 1))]
        _emit("\n".join(lines), args.out, stream)
        return EXIT_OK
    if args.s is None:
        raise PolychromError("ramsey needs --s (or --table)")
    if args.j is not None and args.j != args.t - 1 or args.mode == "brute":
        j = args.t - 1 if args.j is None else args.j
        value = cyclic_ramsey(args.s, args.t, j, budget=_budget(args))
        result = {"s": args.s, "t": args.t, "j": j, "value": value, "provenance": "brute-force"}
        if value is None:
            result["note"] = "larger than the exhaustive search limit"
        _emit(dumps(result), args.out, stream)
        return EXIT_OK
    _emit(dumps(pr_t(args.s, args.t).to_json()), args.out, stream)
    return EXIT_OK


def cmd_search(args: argparse.Namespace, stream: TextIO) -> int:
    family = _family(args)
    mode = args.mode or "greedy"
    if mode in ("greedy", "blocks"):
        report = best_simply_ordered(args.n, family, mode)
    elif mode == "quasi":
        report = best_quasi(args.n, family)
    elif mode == "full":
        if args.k is not None:
            found = full_search(args.n, family, args.k, _budget(args))
            payload = {"k": args.k, "mode": "full", "coloring": found.to_json() if found else None}
            _emit(dumps(payload), args.out, stream)
            return EXIT_OK if found else EXIT_FAIL
        report = full_max(args.n, family, _budget(args))
    else:
        raise PolychromError(f"unknown search mode {mode!r}")
    _emit(dumps(report.to_json()), args.out, stream)
    return EXIT_OK


def cmd_seed(args: argparse.Namespace, stream: TextIO) -> int:
    seed = build_seed(args.r, args.q)
    if args.n is None:
        _emit(dumps(seed.to_json()), args.out, stream)
        return EXIT_OK
    rule = Kind.CYCLES if args.family == "c" else Kind.TWO_REGULAR
    _emit(dumps(extend_seed(seed, args.n, rule).to_json()), args.out, stream)
    return EXIT_OK


def random_coloring(rng: random.Random, n: int, k: int) -> EdgeColoring:
    """Uniform k-coloring of K_n conditioned on every color appearing."""
    m = n * (n - 1) // 2
    while True:
        colors = [rng.randint(1, k) for _ in range(m)]
        if len(set(colors)) == k:
            return EdgeColoring(n, tuple(colors))


def cmd_probe(args: argparse.Namespace, stream: TextIO) -> int:
    """Random check that polychromatic j-cycles force polychromatic longer cycles."""
    rng = random.Random(args.seed)
    violations = 0
    premises = 0
    for _ in range(args.count):
        n = rng.randint(args.n_min, args.n_max)
        coloring = random_coloring(rng, n, args.k)
        for j in range(4, n):
            premises += all_cycles_polychromatic(coloring, j, _budget(args))
            if not check_cycle_monotonicity(coloring, j, _budget(args)):
                violations += 1
                stream.write(dumps({"violation": coloring.to_json(), "j": j}) + "\n")
    result = {"seed": args.seed, "count": args.count, "violations": violations, "premises": premises}
    _emit(dumps(result), args.out, stream)
    return EXIT_OK if violations == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polychrom",
        description="Polychromatic edge colorings of complete graphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", choices=sorted(KINDS), help="f matchings, c cycles, r 2-regular, rr/crr r-regular")
    common.add_argument("--q", type=int, default=0, help="number of uncovered vertices allowed")
    common.add_argument("--r", type=int, default=None, help="degree for rr/crr families and seeds")
    common.add_argument("--n", type=int, default=None, help="number of vertices")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--budget", type=int, default=None, help="maximum search steps")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build an optimal coloring")
    p.set_defaults(func=cmd_construct, need_n=True)

    p = sub.add_parser("verify", parents=[common], help="check a coloring file")
    p.add_argument("--in", dest="input", default=None, help="coloring JSON (default stdin)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normalize", parents=[common], help="merge blocks of an ordered coloring")
    p.add_argument("--in", dest="input", default=None, help="coloring JSON (default stdin)")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("number", parents=[common], help="closed-form polychromatic number")
    p.set_defaults(func=cmd_number, need_n=True)

    p = sub.add_parser("ramsey", parents=[common], help="polychromatic cyclic Ramsey numbers")
    p.add_argument("--t", type=int, required=True, help="number of colors")
    p.add_argument("--s", type=int, default=None, help="cycle length")
    p.add_argument("--j", type=int, default=None, help="color bound for brute force cr(s,t,j)")
    p.add_argument("--mode", choices=["formula", "brute"], default="formula")
    p.add_argument("--table", action="store_true", help="TSV table over a range of s")
    p.add_argument("--s-min", type=int, default=None)
    p.add_argument("--s-max", type=int, default=None)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("search", parents=[common], help="largest polychromatic color count")
    p.add_argument("--mode", choices=["greedy", "blocks", "quasi", "full"], default="greedy")
    p.add_argument("--k", type=int, default=None, help="full mode: look for exactly k colors")
    p.set_defaults(func=cmd_search, need_n=True)

    p = sub.add_parser("seed", parents=[common], help="seed coloring for r-regular families")
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("probe", parents=[common], help="random cycle-monotonicity probe")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n-min", type=int, default=6)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_probe)
    return parser


def run(argv: Sequence[str] | None = None, stream: TextIO | None = None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "need_n", False) and args.n is None:
        sys.stderr.write(f"{args.command}: --n is required\n")
        return EXIT_INPUT
    if args.command == "seed" and args.r is None:
        sys.stderr.write("seed: --r is required\n")
        return EXIT_INPUT
    try:
        return args.func(args, stream)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (PolychromError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
