"""Command line front end.

Subcommands: states, graph, stationary, verify, simulate, partitions,
report.  Exit status is 0 on success, 1 when a verification or chain
structure check fails, 2 on bad usage.

Size guard: add-drop and annihilation chains live on all 2^h patterns, so
they stop at h=12 by default; the fixed-ball chains stop at h=16.  --force
lifts the guard for people who mean it.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chains import (
    StationaryDistribution,
    check_doubly_stochastic,
    closed_form,
    distribution_to_csv,
    distribution_to_json,
    lumped_tl_matrix,
    matrix_standard,
    matrix_tl,
    stationary_exact,
    stationary_power,
    verify_lumpability,
)
from .combinatorics import (
    enumerate_partitions,
    partition_to_tl,
    stirling2,
    tl_to_partition,
)
from .errors import ChainStructureError, ConvergenceError
from .graphs import (
    GraphKind,
    build_add_drop,
    build_annihilation,
    build_standard,
    build_tl,
    export_dot,
    graph_to_json,
)
from .montecarlo import random_walk, walk_report_to_json
from .report import chain_matrix, render_report
from .states import (
    DEFAULT_MAX_H,
    LandingState,
    TLState,
    enumerate_landing_states,
    enumerate_tl_states,
    weight,
)

_MODELS = {
    "standard": GraphKind.STANDARD,
    "tl": GraphKind.TL,
    "adddrop": GraphKind.ADD_DROP,
    "annihilation": GraphKind.ANNIHILATION,
}
_BOUNDS = {
    GraphKind.STANDARD: 16,
    GraphKind.TL: 16,
    GraphKind.ADD_DROP: 12,
    GraphKind.ANNIHILATION: 12,
}
_CHECKS = ("lump", "doubly", "count", "bijection", "closedform")


def _resolve(kind: GraphKind, h: int, f: int | None, force: bool) -> int:
    """Validate h/f against the model and return the max_h to pass down."""
    if h < 1:
        raise ValueError("h must be at least 1")
    bound = _BOUNDS[kind]
    if h > bound and not force:
        raise ValueError(
            f"h={h} exceeds the default bound {bound} for model "
            f"{kind.value!r}; pass --force to run anyway"
        )
    if kind in (GraphKind.STANDARD, GraphKind.TL):
        if f is None:
            raise ValueError(f"--f is required for model {kind.value!r}")
        if not 0 <= f <= h:
            raise ValueError(f"f must be between 0 and h, got {f}")
    elif f is not None:
        raise ValueError(f"--f does not apply to model {kind.value!r}")
    return h if h > DEFAULT_MAX_H else DEFAULT_MAX_H


def _print_distribution(dist: StationaryDistribution, fmt: str) -> None:
    if fmt == "csv":
        print(distribution_to_csv(dist), end="")
    elif fmt == "json":
        print(json.dumps(distribution_to_json(dist), indent=2))
    else:
        width = max(len(str(s)) for s in dist.states)
        for s, p in zip(dist.states, dist.probs):
            print(f"{str(s):<{width}}  {str(p):>8}  {float(p)!r}")


def cmd_states(args: argparse.Namespace) -> int:
    kind = GraphKind.TL if args.tl else GraphKind.STANDARD
    max_h = _resolve(kind, args.h, args.f, args.force)
    if args.tl:
        states = enumerate_tl_states(args.h, args.f, max_h=max_h)
        if args.format == "json":
            print(json.dumps(
                {"h": args.h, "f": args.f, "universe": "tl",
                 "states": [str(s) for s in states]}, indent=2))
        else:
            for s in states:
                print(s)
    else:
        states = enumerate_landing_states(args.h, args.f, max_h=max_h)
        weights = [weight(s) for s in states]
        if args.format == "json":
            print(json.dumps(
                {"h": args.h, "f": args.f, "universe": "landing",
                 "states": [str(s) for s in states], "weights": weights},
                indent=2))
        else:
            for s, w in zip(states, weights):
                print(f"{s}  {w}")
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    kind = _MODELS[args.model]
    max_h = _resolve(kind, args.h, args.f, args.force)
    if kind is GraphKind.STANDARD:
        g = build_standard(args.h, args.f, max_h=max_h)
    elif kind is GraphKind.TL:
        g = build_tl(args.h, args.f, max_h=max_h)
    elif kind is GraphKind.ADD_DROP:
        g = build_add_drop(args.h, max_h=max_h)
    else:
        g = build_annihilation(args.h, max_h=max_h)
    if args.format == "json":
        print(json.dumps(graph_to_json(g), indent=2))
    else:
        print(export_dot(g))
    return 0


def cmd_stationary(args: argparse.Namespace) -> int:
    kind = _MODELS[args.model]
    max_h = _resolve(kind, args.h, args.f, args.force)
    if args.method == "closed":
        _print_distribution(closed_form(kind, args.h, args.f, max_h=max_h), args.format)
        return 0

    m = chain_matrix(kind, args.h, args.f, max_h=max_h)
    if args.method == "exact":
        _print_distribution(stationary_exact(m), args.format)
        return 0
    if args.method == "power":
        probs, iters, residual = stationary_power(m, tol=args.tol)
        if args.format == "json":
            print(json.dumps(
                {"states": [str(s) for s in m.states], "probs": probs,
                 "iterations": iters, "residual": residual}, indent=2))
        else:
            width = max(len(str(s)) for s in m.states)
            for s, p in zip(m.states, probs):
                print(f"{str(s):<{width}}  {p!r}")
            print(f"# iterations={iters} residual={residual:e}")
        return 0
    if args.method == "simulate":
        rep = random_walk(m, m.states[0], args.steps, args.seed)
        if args.format == "json":
            print(json.dumps(walk_report_to_json(rep), indent=2))
        else:
            width = max(len(str(s)) for s in m.states)
            for s, p in zip(m.states, rep.empirical):
                print(f"{str(s):<{width}}  {p!r}")
            print(f"# steps={rep.steps} seed={rep.seed} tv={rep.tv_distance:e}")
        return 0

    # all: closed and exact must agree to the digit, then simulate.
    closed = closed_form(kind, args.h, args.f, max_h=max_h)
    exact = stationary_exact(m)
    if closed.probs != exact.probs:
        for s, a, b in zip(m.states, closed.probs, exact.probs):
            if a != b:
                print(f"FAIL: closed form {a} != exact solve {b} at state {s}",
                      file=sys.stderr)
        return 1
    rep = random_walk(m, m.states[0], args.steps, args.seed, reference=exact)
    if args.format == "json":
        print(json.dumps(
            {"distribution": distribution_to_json(exact),
             "closed_matches_exact": True,
             "simulation": walk_report_to_json(rep)}, indent=2))
    else:
        print("closed == exact: PASS")
        _print_distribution(exact, "table")
        print(f"# simulate steps={rep.steps} seed={rep.seed} tv={rep.tv_distance:e}")
    if rep.tv_distance >= 0.01:
        print(f"warning: empirical tv distance {rep.tv_distance:.4f} >= 0.01 "
              f"after {rep.steps} steps", file=sys.stderr)
    return 0


def _check_count(h: int, f: int, max_h: int) -> tuple[bool, str]:
    n = len(enumerate_tl_states(h, f, max_h=max_h))
    expected = stirling2(h + 1, f + 1)
    return n == expected, f"{n} time-labelled states, S({h + 1},{f + 1}) = {expected}"


def _check_doubly(h: int, f: int, max_h: int) -> tuple[bool, str]:
    ok, witness = check_doubly_stochastic(matrix_tl(h, f, max_h=max_h))
    if ok:
        return True, "all column sums equal 1"
    return False, f"column of state {witness} does not sum to 1"


def _check_lump(h: int, f: int, max_h: int) -> tuple[bool, str]:
    ok, witness = verify_lumpability(h, f, max_h=max_h)
    if not ok:
        u, v, w = witness
        return False, f"fiber mass from {u} to fiber of {v} disagrees at {w}"
    lumped = lumped_tl_matrix(h, f, max_h=max_h)
    base = matrix_standard(h, f, max_h=max_h)
    if lumped.rows != base.rows:
        return False, "lumped matrix differs from the landing-state matrix"
    return True, "fiber masses constant and lumped matrix matches"


def _check_bijection(h: int, f: int, max_h: int) -> tuple[bool, str]:
    states = enumerate_tl_states(h, f, max_h=max_h)
    for t in states:
        if partition_to_tl(tl_to_partition(t)) != t:
            return False, f"roundtrip through partitions moved {t}"
    parts = enumerate_partitions(h + 1, f + 1)
    for p in parts:
        if tl_to_partition(partition_to_tl(p)) != p:
            return False, f"roundtrip through states moved {p}"
    return True, f"{len(states)} states and {len(parts)} partitions roundtrip"


def _check_closedform(h: int, f: int, max_h: int) -> tuple[bool, str]:
    exact = stationary_exact(matrix_standard(h, f, max_h=max_h))
    closed = closed_form(GraphKind.STANDARD, h, f, max_h=max_h)
    if exact.probs != closed.probs:
        return False, "exact solve differs from the closed form"
    return True, "exact solve equals the closed form"


def cmd_verify(args: argparse.Namespace) -> int:
    max_h = _resolve(GraphKind.TL, args.h, args.f, args.force)
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    if "all" in names:
        names = list(_CHECKS)
    bad = [c for c in names if c not in _CHECKS]
    if bad:
        raise ValueError(f"unknown checks: {', '.join(bad)}")
    runners = {
        "lump": _check_lump,
        "doubly": _check_doubly,
        "count": _check_count,
        "bijection": _check_bijection,
        "closedform": _check_closedform,
    }
    failures = 0
    for name in names:
        ok, detail = runners[name](args.h, args.f, max_h)
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures += 1
    return 1 if failures else 0


def cmd_simulate(args: argparse.Namespace) -> int:
    kind = _MODELS[args.model]
    max_h = _resolve(kind, args.h, args.f, args.force)
    if args.steps < 1:
        raise ValueError("--steps must be positive")
    m = chain_matrix(kind, args.h, args.f, max_h=max_h)
    if args.start is None:
        start = m.states[0]
    elif kind is GraphKind.TL:
        start = TLState.parse(args.start)
    else:
        start = LandingState.parse(args.start)
    rep = random_walk(m, start, args.steps, args.seed)
    print(json.dumps(walk_report_to_json(rep), indent=2))
    return 0


def cmd_partitions(args: argparse.Namespace) -> int:
    max_h = _resolve(GraphKind.TL, args.h, args.f, args.force)
    states = enumerate_tl_states(args.h, args.f, max_h=max_h)
    if args.roundtrip:
        ok, detail = _check_bijection(args.h, args.f, max_h)
        print(f"{'PASS' if ok else 'FAIL'} bijection: {detail}")
        return 0 if ok else 1
    width = max(len(str(s)) for s in states)
    for t in states:
        print(f"{str(t):<{width}}  {tl_to_partition(t)}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    kind = _MODELS[args.model]
    max_h = _resolve(kind, args.h, args.f, args.force)
    if args.lmax < 1:
        raise ValueError("--lmax must be positive")
    paths = render_report(
        kind, args.h, args.f, args.outdir,
        steps=args.steps, seed=args.seed, l_max=args.lmax, max_h=max_h,
    )
    for p in paths:
        print(p)
    return 0


def _add_common(sub: argparse.ArgumentParser, *, need_f: str = "maybe") -> None:
    sub.add_argument("--h", type=int, required=True, metavar="H",
                     help="maximum throw height")
    if need_f == "yes":
        sub.add_argument("--f", type=int, required=True, metavar="F",
                         help="number of empty slots")
    elif need_f == "maybe":
        sub.add_argument("--f", type=int, default=None, metavar="F",
                         help="number of empty slots (fixed-ball models only)")
    sub.add_argument("--force", action="store_true",
                     help="lift the default size bound on h")


def _add_model(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--model", choices=sorted(_MODELS), default="standard",
                     help="which chain to build")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="juggling-chains",
        description="State graphs and stationary laws of random juggling chains.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("states", help="list states in canonical order")
    _add_common(p, need_f="yes")
    p.add_argument("--tl", action="store_true",
                   help="list time-labelled states instead of landing states")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_states)

    p = subs.add_parser("graph", help="emit a throw graph")
    _add_common(p)
    _add_model(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_graph)

    p = subs.add_parser("stationary", help="compute a stationary distribution")
    _add_common(p)
    _add_model(p)
    p.add_argument("--method",
                   choices=("closed", "exact", "power", "simulate", "all"),
                   default="closed")
    p.add_argument("--steps", type=int, default=100000,
                   help="walk length for the simulate method")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-12,
                   help="residual tolerance for the power method")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.set_defaults(func=cmd_stationary)

    p = subs.add_parser("verify", help="run structural checks at one (h, f)")
    _add_common(p, need_f="yes")
    p.add_argument("--checks", default="all",
                   help="comma-separated subset of "
                        f"{{{','.join(_CHECKS)}}} or all")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("simulate", help="random walk, reported as JSON")
    _add_common(p)
    _add_model(p)
    p.add_argument("--steps", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", default=None,
                   help="start state (defaults to the first canonical state)")
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("partitions",
                        help="pair time-labelled states with set partitions")
    _add_common(p, need_f="yes")
    p.add_argument("--roundtrip", action="store_true",
                   help="check the pairing both ways instead of listing")
    p.set_defaults(func=cmd_partitions)

    p = subs.add_parser("report", help="write tables and figures to a directory")
    _add_common(p)
    _add_model(p)
    p.add_argument("--outdir", required=True)
    p.add_argument("--steps", type=int, default=0,
                   help="optional walk length for an empirical overlay")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lmax", type=int, default=20,
                   help="how many matrix powers the convergence report covers")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ChainStructureError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
