"""Command line entry point: ``sparsegb {solve,gb,gen,bench,polytope-info}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile

from . import pipeline
from .ffield import check_prime
from .lattice import product, simplex
from .system import SystemFile, gen_bidegree, gen_bilinear, gen_fewnomial, load


def _weights(text: str) -> list[tuple[int, ...]]:
    """``"1,1,1;1,0,0;0,1,0"`` -> weight rows."""
    try:
        return [tuple(int(x) for x in row.split(",")) for row in text.split(";")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("weights are rows of comma-separated integers joined by ';'") from exc


def _blocks(items: list[str]) -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in b.split(":")) if ":" in b else (int(b), 1) for b in items]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("blocks are written n or n:d") from exc


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def format_text(report: dict) -> str:
    lines = []
    for k in sorted(report):
        v = report[k]
        if k in ("Q", "Q_i", "solutions", "degrees", "times", "hilbert_basis", "budgets"):
            continue
        lines.append(f"{k}: {json.dumps(_jsonable(v), sort_keys=True)}")
    for row in report.get("degrees", []):
        lines.append("degree " + " ".join(f"{a}={b}" for a, b in row.items() if a != "degree") + f" @ {row['degree']}")
    for b in report.get("budgets", []):
        lines.append("budget " + " ".join(f"{a}={b[a]}" for a in b))
    if "hilbert_basis" in report:
        lines.append("hilbert_basis: " + "; ".join(" ".join(map(str, h)) for h in report["hilbert_basis"]))
    if "Q" in report:
        lines.append("Q: " + " ".join(map(str, report["Q"])))
        for i, q in enumerate(report.get("Q_i", []), 1):
            lines.append(f"Q_{i}: " + " ".join(map(str, q)))
    for s in report.get("solutions", []):
        lines.append("solution: " + " ".join(map(str, s)))
    for k, v in sorted(report.get("times", {}).items()):
        lines.append(f"time {k}: {v:.4f}")
    return "\n".join(lines) + "\n"


def _load_system(args) -> SystemFile:
    S = load(args.system)
    if args.prime is not None:
        S.prime = check_prime(args.prime)
        S = S.canonical()
    if args.order_weights is not None:
        S.order_weights = args.order_weights
    if args.cap_dimension is not None:
        S.cap_dimension = args.cap_dimension
    return S


def _emit(report: dict, args) -> None:
    text = dumps(report) if args.format == "json" else format_text(report)
    sys.stdout.write(text)
    if getattr(args, "stats", None):
        write_atomic(args.stats, dumps(report))


def cmd_solve(args) -> int:
    res = pipeline.solve(_load_system(args), args.max_degree, args.cap_dimension)
    _emit(pipeline.solve_report(res), args)
    return 0


def cmd_gb(args) -> int:
    S = _load_system(args)
    times: dict = {}
    prep = pipeline.prepare(S, times)
    budget = pipeline.choose_budget(prep, args.max_degree if args.max_degree is not None else S.max_degree)
    gb = pipeline.compute_gb(prep, budget, times)
    report = pipeline.gb_report(gb)
    report["basis"] = [[[c, list(e)] for e, c in g.terms] for g in gb.basis]
    report["times"] = times
    if args.format == "json":
        _emit(report, args)
    else:
        body = {k: v for k, v in report.items() if k != "basis"}
        out = format_text(body)
        for g in gb.basis:
            out += "poly\n" + "".join(f"{c} : {' '.join(map(str, e))}\n" for e, c in g.terms) + "end\n"
        sys.stdout.write(out)
        if args.stats:
            write_atomic(args.stats, dumps(report))
    return 0


def cmd_gen(args) -> int:
    p = args.prime or 65521
    seed = args.seed if args.seed is not None else 0
    prm = args.params
    need = {"bilinear": 3, "bidegree": 5, "fewnomial": 3}[args.family]
    if len(prm) != need:
        raise ValueError(f"{args.family} takes {need} integer parameters")
    if args.family == "bilinear":
        S = gen_bilinear(*prm, seed=seed, p=p)
    elif args.family == "bidegree":
        S = gen_bidegree(*prm, seed=seed, p=p)
    else:
        S = gen_fewnomial(*prm, seed=seed, p=p)
    text = dumps(S.to_json()) if args.format == "json" else S.emit()
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    report = pipeline.bench(_load_system(args), args.max_degree, args.cap_dimension)
    _emit(report, args)
    return 0


def cmd_polytope_info(args) -> int:
    if args.family:
        P = product(*(simplex(n, d) for n, d in _blocks(args.family)))
    elif args.system:
        P = load(args.system).polytope()
        if P is None:
            raise ValueError("the system has no polytope or family support stanza")
    else:
        raise ValueError("give a system file or --family")
    degs = [tuple(int(x) for x in d.split(",")) for d in (args.degrees or [])]
    _emit(pipeline.polytope_info(P, degs), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sparsegb", description="Sparse Groebner bases over prime fields.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, system=True):
        if system:
            sp.add_argument("system", help="system file (text or JSON)")
        sp.add_argument("--prime", type=int)
        sp.add_argument("--max-degree", type=int)
        sp.add_argument("--order-weights", type=_weights)
        sp.add_argument("--cap-dimension", type=int)
        sp.add_argument("--stats", metavar="OUT.json")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--seed", type=int)

    for name, fn in (("solve", cmd_solve), ("gb", cmd_gb), ("bench", cmd_bench)):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("gen")
    sp.add_argument("family", choices=("bilinear", "bidegree", "fewnomial"))
    sp.add_argument("params", type=int, nargs="+")
    sp.add_argument("-o", "--output")
    common(sp, system=False)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("polytope-info")
    sp.add_argument("system", nargs="?")
    sp.add_argument("--family", nargs="+", metavar="N:D", help="product of scaled simplices")
    sp.add_argument("--degrees", nargs="+", metavar="D1,D2,...")
    common(sp, system=False)
    sp.set_defaults(func=cmd_polytope_info)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except pipeline.PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
