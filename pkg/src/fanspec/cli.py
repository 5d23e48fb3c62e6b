"""Command-line interface.

Subcommands: construct, lambda, qlambda, charpoly, check, turannum, brute,
brutef, family, verify.  Exit codes: 0 success, 1 reserved for `check`
meaning the pattern was found, 2 bad arguments, 3 computation failure
(e.g. the eigen-residual did not meet tolerance).

Graphs come from graph6 strings (argument, file, or newline-separated
stdin) or from the constructor mini-language:

    turan:n,p  multipartite:a,b,c  fan:k,r  extremal:n,k,r[,part]
    split:n,k  ch:k

All floating output uses 12 significant digits.  FANSPEC_MAX_N raises the
enumeration cap for brute-force runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .families import (
    chvatal_hanson_extremal,
    complete_multipartite,
    extremal_fan_graph,
    fan_graph,
    split_graph,
    turan_graph,
)
from .formulas import fan_extremal_number
from .graphs import Graph, Graph6Error, StructuredGraph, from_graph6, to_graph6
from .oracle import (
    DEFAULT_ENUM_CAP,
    brute_force_extremal,
    brute_force_f_report,
    family_search,
    verify_main_theorem,
)
from .patterns import contains_fan
from .spectral import (
    ConvergenceError,
    multipartite_charpoly_eval,
    signless_laplacian_spectrum,
    spectral_radius,
)

AnyGraph = Graph | StructuredGraph


def fmt12(x: float) -> str:
    """12 significant digits, positional (trailing zeros kept)."""
    return np.format_float_positional(
        float(x), precision=12, unique=False, fractional=False, trim="k"
    )


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def parse_construct_spec(text: str) -> AnyGraph:
    name, _, rest = text.partition(":")
    try:
        args = [int(a) for a in rest.split(",") if a != ""]
    except ValueError as exc:
        raise ValueError(f"bad constructor arguments in {text!r}") from exc
    if name == "turan" and len(args) == 2:
        return turan_graph(*args)
    if name == "multipartite" and len(args) >= 1:
        return complete_multipartite(args)[0]
    if name == "fan" and len(args) == 2:
        return fan_graph((args[0], args[1]))
    if name == "extremal" and len(args) in (3, 4):
        n, k, r = args[:3]
        part = args[3] if len(args) == 4 else None
        return extremal_fan_graph(n, (k, r), part)[0]
    if name == "split" and len(args) == 2:
        return split_graph(*args)
    if name == "ch" and len(args) == 1:
        return chvatal_hanson_extremal(args[0])
    raise ValueError(f"unrecognized constructor spec {text!r}")


def _input_graphs(args) -> list[AnyGraph]:
    sources = [
        s for s in (getattr(args, "construct", None), getattr(args, "g6", None), getattr(args, "file", None))
        if s
    ]
    if len(sources) > 1:
        raise ValueError("give exactly one graph source")
    if getattr(args, "construct", None):
        return [parse_construct_spec(args.construct)]
    if getattr(args, "g6", None):
        return [from_graph6(args.g6)]
    if getattr(args, "file", None):
        with open(args.file) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    else:
        lines = [ln.strip() for ln in sys.stdin if ln.strip()]
    return [from_graph6(ln) for ln in lines]


def _spectrum_json(res, want_vector: bool) -> dict:
    d = {
        "lambda": _round12(res.lam),
        "residual": _round12(res.residual),
        "iterations": res.iterations,
    }
    if want_vector:
        d["vector"] = [_round12(v) for v in res.vector.tolist()]
    return d


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_construct(args) -> int:
    spec_map = {
        "turan": lambda a: turan_graph(a.n, a.p),
        "multipartite": lambda a: complete_multipartite(
            [int(s) for s in a.sizes.split(",")]
        )[0],
        "fan": lambda a: fan_graph((a.k, a.r)),
        "extremal": lambda a: extremal_fan_graph(a.n, (a.k, a.r), a.part)[0],
        "split": lambda a: split_graph(a.n, a.k),
        "ch": lambda a: chvatal_hanson_extremal(a.k),
    }
    g = spec_map[args.family](args)
    if isinstance(g, StructuredGraph):
        if g.n > 62:
            print(
                "error: graph6 short form caps at 62 vertices; "
                f"construction has {g.n}",
                file=sys.stderr,
            )
            return 2
        g = g.to_graph()
    print(to_graph6(g))
    return 0


def _parse_sweep(text: str) -> tuple[str, range]:
    var, _, spec = text.partition("=")
    start, step, stop = (int(x) for x in spec.split(":"))
    return var, range(start, stop + 1, step)


def _cmd_lambda(args, signless: bool) -> int:
    if args.sweep:
        if not args.construct or "{n}" not in args.construct:
            raise ValueError("--sweep needs --construct with an {n} placeholder")
        var, rng = _parse_sweep(args.sweep)
        if var != "n":
            raise ValueError("only n-sweeps are supported")
        print("n,lambda,residual,iterations")
        for n in rng:
            g = parse_construct_spec(args.construct.replace("{n}", str(n)))
            res = _run_spectrum(g, args, signless)
            print(f"{n},{fmt12(res.lam)},{fmt12(res.residual)},{res.iterations}")
        return 0
    graphs = _input_graphs(args)
    outputs = []
    for g in graphs:
        res = _run_spectrum(g, args, signless)
        if args.raw:
            outputs.append(fmt12(res.lam))
        else:
            outputs.append(json.dumps(_spectrum_json(res, args.vector)))
    _emit(args, "\n".join(outputs))
    return 0


def _run_spectrum(g: AnyGraph, args, signless: bool):
    if signless:
        return signless_laplacian_spectrum(g, tol=args.tol, max_iters=args.max_iters)
    return spectral_radius(g, tol=args.tol, max_iters=args.max_iters)


def _cmd_charpoly(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    xf = float(args.x)
    x: float | int = int(xf) if xf.is_integer() else xf
    value = multipartite_charpoly_eval(sizes, x)
    if args.raw:
        print(value if isinstance(value, int) else fmt12(value))
    else:
        single = len(sizes) == 1
        print(json.dumps({"value": value, "x": x, "single_part": single}))
    return 0


def _cmd_check(args) -> int:
    graphs = _input_graphs(args)
    any_contains = False
    lines = []
    for g in graphs:
        witness = contains_fan(g, (args.k, args.r))
        rec: dict = {"contains": witness is not None}
        if witness is not None:
            any_contains = True
            if args.witness:
                rec["witness"] = {
                    "center": witness.center,
                    "cliques": [sorted(c) for c in witness.cliques],
                }
        lines.append(json.dumps(rec))
    _emit(args, "\n".join(lines))
    return 1 if any_contains else 0


def _cmd_turannum(args) -> int:
    res = fan_extremal_number(args.n, (args.k, args.r))
    if args.raw:
        print(res.value)
    else:
        print(
            json.dumps(
                {
                    "value": res.value,
                    "applicable": res.applicable,
                    "threshold": res.threshold,
                }
            )
        )
    return 0


def _enum_cap() -> int:
    return int(os.environ.get("FANSPEC_MAX_N", DEFAULT_ENUM_CAP))


def _cmd_brute(args) -> int:
    report = brute_force_extremal(
        args.n,
        (args.k, args.r),
        args.mode,
        tol=args.tol,
        jobs=args.jobs,
        cap=_enum_cap(),
        checkpoint_path=args.checkpoint,
        resume=args.resume,
        checkpoint_every=args.checkpoint_every,
    )
    _emit(args, report.to_json(timing=not args.no_timing))
    return 0


def _cmd_brutef(args) -> int:
    report = brute_force_f_report(
        args.beta, args.delta, args.nmax, jobs=args.jobs, cap=_enum_cap()
    )
    _emit(args, report.to_json(timing=not args.no_timing))
    return 0


def _cmd_family(args) -> int:
    report = family_search(
        args.n,
        (args.k, args.r),
        args.imbalance,
        tol=args.tol,
        jobs=args.jobs,
        cap=_enum_cap(),
    )
    _emit(args, report.to_json(timing=not args.no_timing))
    return 0


def _cmd_verify(args) -> int:
    report = verify_main_theorem(
        args.n,
        (args.k, args.r),
        args.imbalance,
        tol=args.tol,
        jobs=args.jobs,
        cap=_enum_cap(),
    )
    _emit(args, report.to_json(timing=not args.no_timing))
    return 0


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--construct", help="constructor mini-language spec")
    p.add_argument("--g6", help="graph6 string")
    p.add_argument("--file", help="file of newline-separated graph6 strings")


def _add_common_numeric(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-10, help="eigen-residual tolerance")
    p.add_argument(
        "--max-iters", type=int, default=10**6, help="power-iteration budget"
    )


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="fanspec",
        description="Spectral/Turan extremal graph toolkit with exhaustive oracle",
    )
    sub = top.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", help="emit a named family graph as graph6")
    fam = pc.add_subparsers(dest="family", required=True)
    f = fam.add_parser("turan", help="balanced complete p-partite graph")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--p", type=int, required=True)
    f = fam.add_parser("multipartite", help="complete multipartite graph")
    f.add_argument("--sizes", required=True, help="comma-separated part sizes")
    f = fam.add_parser("fan", help="k cliques of order r sharing one vertex")
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--r", type=int, required=True)
    f = fam.add_parser("extremal", help="Turan host with embedded extremal patch")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--r", type=int, required=True)
    f.add_argument("--part", type=int, default=None, help="host part index")
    f = fam.add_parser("split", help="clique joined to an independent set")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    f = fam.add_parser("ch", help="bounded-degree bounded-matching maximizer")
    f.add_argument("--k", type=int, required=True)
    pc.set_defaults(func=_cmd_construct)

    pl = sub.add_parser("lambda", help="adjacency spectral radius")
    _add_graph_source(pl)
    _add_common_numeric(pl)
    pl.add_argument("--vector", action="store_true", help="include the Perron vector")
    pl.add_argument("--raw", action="store_true", help="print only the 12-digit value")
    pl.add_argument("--sweep", help="n-sweep start:step:stop, CSV output")
    pl.add_argument("--out", help="write output to this file")
    pl.set_defaults(func=lambda a: _cmd_lambda(a, signless=False))

    pq = sub.add_parser("qlambda", help="signless Laplacian spectral radius")
    _add_graph_source(pq)
    _add_common_numeric(pq)
    pq.add_argument("--vector", action="store_true", help="include the eigenvector")
    pq.add_argument("--raw", action="store_true", help="print only the 12-digit value")
    pq.add_argument("--sweep", help="n-sweep start:step:stop, CSV output")
    pq.add_argument("--out", help="write output to this file")
    pq.set_defaults(func=lambda a: _cmd_lambda(a, signless=True))

    pp = sub.add_parser("charpoly", help="multipartite characteristic polynomial")
    pp.add_argument("--sizes", required=True, help="comma-separated part sizes")
    pp.add_argument("--x", required=True, help="evaluation point")
    pp.add_argument("--raw", action="store_true", help="print the bare value")
    pp.set_defaults(func=_cmd_charpoly)

    pk = sub.add_parser("check", help="fan containment check (exit 1 = contains)")
    _add_graph_source(pk)
    pk.add_argument("--k", type=int, required=True)
    pk.add_argument("--r", type=int, required=True)
    pk.add_argument("--witness", action="store_true", help="include a JSON witness")
    pk.add_argument("--out", help="write output to this file")
    pk.set_defaults(func=_cmd_check)

    pt = sub.add_parser("turannum", help="closed-form extremal edge count")
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--k", type=int, required=True)
    pt.add_argument("--r", type=int, required=True)
    pt.add_argument("--raw", action="store_true", help="print the bare integer")
    pt.set_defaults(func=_cmd_turannum)

    pb = sub.add_parser("brute", help="exhaustive extremal search")
    pb.add_argument("--n", type=int, required=True)
    pb.add_argument("--k", type=int, required=True)
    pb.add_argument("--r", type=int, required=True)
    pb.add_argument("--mode", choices=["edges", "lambda"], default="edges")
    pb.add_argument("--jobs", type=_positive_int, default=1)
    pb.add_argument("--tol", type=float, default=1e-10)
    pb.add_argument("--out", help="write the JSON report to this file")
    pb.add_argument("--checkpoint", help="sidecar JSON for checkpoint/resume")
    pb.add_argument("--resume", action="store_true", help="resume from checkpoint")
    pb.add_argument("--checkpoint-every", type=int, default=10**6)
    pb.add_argument("--no-timing", action="store_true", help="null wall_seconds")
    pb.set_defaults(func=_cmd_brute)

    pf = sub.add_parser("brutef", help="bounded degree+matching edge maximum")
    pf.add_argument("--beta", type=int, required=True)
    pf.add_argument("--delta", type=int, required=True)
    pf.add_argument("--nmax", type=int, required=True)
    pf.add_argument("--jobs", type=_positive_int, default=1)
    pf.add_argument("--out", help="write the JSON report to this file")
    pf.add_argument("--no-timing", action="store_true", help="null wall_seconds")
    pf.set_defaults(func=_cmd_brutef)

    pm = sub.add_parser("family", help="structured family spectral search")
    pm.add_argument("--n", type=int, required=True)
    pm.add_argument("--k", type=int, required=True)
    pm.add_argument("--r", type=int, required=True)
    pm.add_argument("--imbalance", type=int, default=2)
    pm.add_argument("--jobs", type=_positive_int, default=1)
    pm.add_argument("--tol", type=float, default=1e-10)
    pm.add_argument("--out", help="write the JSON report to this file")
    pm.add_argument("--no-timing", action="store_true", help="null wall_seconds")
    pm.set_defaults(func=_cmd_family)

    pv = sub.add_parser("verify", help="family winner vs closed-form edge count")
    pv.add_argument("--n", type=int, required=True)
    pv.add_argument("--k", type=int, required=True)
    pv.add_argument("--r", type=int, required=True)
    pv.add_argument("--imbalance", type=int, default=2)
    pv.add_argument("--jobs", type=_positive_int, default=1)
    pv.add_argument("--tol", type=float, default=1e-10)
    pv.add_argument("--out", help="write the JSON report to this file")
    pv.add_argument("--no-timing", action="store_true", help="null wall_seconds")
    pv.set_defaults(func=_cmd_verify)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        best = exc.result
        print(
            json.dumps(
                {
                    "error": str(exc),
                    "lambda": _round12(best.lam),
                    "residual": _round12(best.residual),
                    "iterations": best.iterations,
                }
            ),
            file=sys.stderr,
        )
        return 3
    except (ValueError, Graph6Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
