"""Command-line frontend.

Exit codes: 0 success, 2 parse or I/O error, 3 invalid configuration,
4 solver precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import ConfigError, PreconditionError, TreeParseError
from .experiments import (ExperimentRecord, GenSpec, allocation_report,
                          emit_csv, gen_random_tree, lambda_sweep,
                          pareto_front)
from .maxian import solve_balanced_2maxian_cubic, solve_balanced_2maxian_linear
from .median import solve_balanced_2median
from .objectives import SolverConfig
from .oracle import DEFAULT_CAP, brute_2maxian, brute_2median
from .tree import _fmt, parse_tree, render_tree


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="treeloc",
        description="Balanced 2-median and 2-maxian solvers on weighted trees.")
    sub = ap.add_subparsers(dest="command", required=True)

    def io_flags(p):
        p.add_argument("--input", required=True, help="tree description file")
        p.add_argument("--output", help="write machine output to this file")
        p.add_argument("--format", default="text",
                       help="machine output format: json, csv, or text")

    p = sub.add_parser("solve-median", help="balanced 2-median by edge deletion")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    io_flags(p)

    p = sub.add_parser("solve-maxian", help="balanced 2-maxian")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--method", default="linear", help="linear or cubic")
    io_flags(p)

    p = sub.add_parser("oracle", help="brute-force reference solver")
    p.add_argument("problem", help="median or maxian")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="largest instance the oracle accepts")
    io_flags(p)

    p = sub.add_parser("sweep", help="solve across several lambda values")
    p.add_argument("problem", help="median or maxian")
    p.add_argument("--lambdas", required=True,
                   help="comma-separated values in [0,1], e.g. 0,0.5,1")
    p.add_argument("--method", default="linear", help="linear or cubic")
    io_flags(p)

    p = sub.add_parser("pareto", help="nondominated (transport, f5) points")
    p.add_argument("problem", help="median or maxian")
    p.add_argument("--grid", type=int, default=11,
                   help="number of lambda grid points")
    io_flags(p)

    p = sub.add_parser("gen", help="generate a random tree file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length-min", type=float, default=0.01)
    p.add_argument("--length-max", type=float, default=5.0)
    p.add_argument("--weights", default="fixed", help="fixed or uniform")
    p.add_argument("--services", default="fixed", help="fixed or uniform")
    p.add_argument("--output", help="write the tree here instead of stdout")

    p = sub.add_parser("report", help="allocation deviations for a solution")
    p.add_argument("problem", help="median or maxian")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--method", default="linear", help="linear or cubic")
    io_flags(p)

    return ap


def _check_problem(problem: str):
    if problem not in ("median", "maxian"):
        raise ConfigError(f"unknown problem {problem!r}; expected median or maxian")


def _check_method(method: str):
    if method not in ("linear", "cubic"):
        raise ConfigError(f"unknown method {method!r}; expected linear or cubic")


def _check_format(fmt: str):
    if fmt not in ("json", "csv", "text"):
        raise ConfigError(f"unknown format {fmt!r}; expected json, csv, or text")


def _load_tree(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read())


def _solve_once(problem: str, method: str, cfg: SolverConfig, tree):
    t0 = time.perf_counter()
    if problem == "median":
        sol = solve_balanced_2median(cfg, tree)
    elif method == "cubic":
        sol = solve_balanced_2maxian_cubic(cfg, tree)
    else:
        sol = solve_balanced_2maxian_linear(cfg, tree)
    ms = (time.perf_counter() - t0) * 1e3
    if problem == "median":
        rec = ExperimentRecord(0, tree.n, 0, "median", "edge-deletion", cfg.lam,
                               sol.f1, sol.f5, sol.objective, sol.edge_uv,
                               sol.medians, ms)
    else:
        rec = ExperimentRecord(0, tree.n, 0, "maxian", sol.method, cfg.lam,
                               sol.f2, sol.f5, sol.objective, sol.edge_uv,
                               sol.facilities, ms)
    return rec, sol


def _record_dict(r: ExperimentRecord) -> dict:
    return {
        "test": r.test_id, "n": r.n, "seed": r.seed, "problem": r.problem,
        "method": r.method, "lambda": r.lam, "transport": r.transport,
        "f5": r.f5, "objective": r.objective,
        "edge_u": r.edge_uv[0], "edge_v": r.edge_uv[1],
        "fac1": r.facilities[0], "fac2": r.facilities[1],
        "runtime_ms": r.runtime_ms,
    }


def _summary(rec: ExperimentRecord) -> str:
    label = "medians" if rec.problem == "median" else "facilities"
    return "\n".join([
        f"problem {rec.problem}",
        f"n {rec.n}",
        f"method {rec.method}",
        f"lambda {_fmt(rec.lam)}",
        f"deleted edge ({rec.edge_uv[0]},{rec.edge_uv[1]})",
        f"{label} ({rec.facilities[0]},{rec.facilities[1]})",
        f"transport {_fmt(rec.transport)}",
        f"f5 {_fmt(rec.f5)}",
        f"objective {_fmt(rec.objective)}",
    ])


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def _write_records(args, records: list[ExperimentRecord], text: str):
    if not args.output:
        return
    if args.format == "csv":
        emit_csv(records, args.output)
    elif args.format == "json":
        payload = [_record_dict(r) for r in records]
        _write_text(args.output,
                    json.dumps(payload[0] if len(payload) == 1 else payload,
                               indent=2))
    else:
        _write_text(args.output, text)


def _parse_lambdas(text: str) -> list[float]:
    vals = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            vals.append(float(part))
        except ValueError:
            raise ConfigError(f"bad lambda value {part!r}") from None
    if not vals:
        raise ConfigError("empty lambda list")
    return vals


def _cmd_solve(args, problem: str) -> int:
    _check_format(args.format)
    method = getattr(args, "method", "linear")
    _check_method(method)
    cfg = SolverConfig(args.lam)
    tree = _load_tree(args.input)
    rec, _ = _solve_once(problem, method, cfg, tree)
    text = _summary(rec)
    print(text)
    _write_records(args, [rec], text)
    return 0


def _cmd_oracle(args) -> int:
    _check_problem(args.problem)
    _check_format(args.format)
    cfg = SolverConfig(args.lam)
    tree = _load_tree(args.input)
    t0 = time.perf_counter()
    if args.problem == "median":
        sol = brute_2median(cfg, tree, cap=args.cap)
        facilities = sol.medians
        transport = sol.f1
    else:
        sol = brute_2maxian(cfg, tree, cap=args.cap)
        facilities = sol.facilities
        transport = sol.f2
    ms = (time.perf_counter() - t0) * 1e3
    rec = ExperimentRecord(0, tree.n, 0, args.problem, "brute", cfg.lam,
                           transport, sol.f5, sol.objective, sol.edge_uv,
                           facilities, ms)
    text = _summary(rec)
    print(text)
    _write_records(args, [rec], text)
    return 0


def _cmd_sweep(args) -> int:
    _check_problem(args.problem)
    _check_method(args.method)
    _check_format(args.format)
    lambdas = _parse_lambdas(args.lambdas)
    tree = _load_tree(args.input)
    records = lambda_sweep(tree, args.problem, lambdas, method=args.method)
    lines = [f"problem {args.problem} n {tree.n} sweeps {len(records)}"]
    for r in records:
        lines.append(
            f"lambda {_fmt(r.lam)} objective {_fmt(r.objective)} "
            f"transport {_fmt(r.transport)} f5 {_fmt(r.f5)} "
            f"edge ({r.edge_uv[0]},{r.edge_uv[1]}) "
            f"facilities ({r.facilities[0]},{r.facilities[1]})")
    text = "\n".join(lines)
    print(text)
    _write_records(args, records, text)
    return 0


def _cmd_pareto(args) -> int:
    _check_problem(args.problem)
    _check_format(args.format)
    tree = _load_tree(args.input)
    pts = pareto_front(tree, args.problem, args.grid)
    lines = [f"problem {args.problem} grid {args.grid} points {len(pts)}"]
    for tc, f5 in pts:
        lines.append(f"transport {_fmt(tc)} f5 {_fmt(f5)}")
    text = "\n".join(lines)
    print(text)
    if args.output:
        if args.format == "csv":
            rows = ["transport,f5"] + [f"{_fmt(a)},{_fmt(b)}" for a, b in pts]
            _write_text(args.output, "\n".join(rows))
        elif args.format == "json":
            _write_text(args.output, json.dumps(
                {"problem": args.problem, "grid": args.grid,
                 "points": [[float(a), float(b)] for a, b in pts]}, indent=2))
        else:
            _write_text(args.output, text)
    return 0


def _cmd_gen(args) -> int:
    spec = GenSpec(args.n, args.seed, args.length_min, args.length_max,
                   args.weights, args.services)
    tree = gen_random_tree(spec)
    text = render_tree(tree)
    if args.output:
        _write_text(args.output, text)
        print(f"generated n={tree.n} seed={args.seed} -> {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_report(args) -> int:
    _check_problem(args.problem)
    _check_method(args.method)
    _check_format(args.format)
    cfg = SolverConfig(args.lam)
    tree = _load_tree(args.input)
    rec, sol = _solve_once(args.problem, args.method, cfg, tree)
    dev = allocation_report(sol, tree)
    text = _summary(rec) + f"\ndeviations {dev}"
    print(text)
    if args.output:
        if args.format == "json":
            _write_text(args.output,
                        json.dumps({**_record_dict(rec), "deviations": dev},
                                   indent=2))
        elif args.format == "csv":
            _write_text(args.output,
                        "problem,method,lambda,deviations\n"
                        f"{rec.problem},{rec.method},{_fmt(rec.lam)},{dev}")
        else:
            _write_text(args.output, text)
    return 0


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    dispatch = {
        "solve-median": lambda a: _cmd_solve(a, "median"),
        "solve-maxian": lambda a: _cmd_solve(a, "maxian"),
        "oracle": _cmd_oracle,
        "sweep": _cmd_sweep,
        "pareto": _cmd_pareto,
        "gen": _cmd_gen,
        "report": _cmd_report,
    }
    try:
        return dispatch[args.command](args)
    except (TreeParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
