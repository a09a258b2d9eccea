"""Command line interface: solve, gen, bench, verify.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing
import sys
import time

from .buchberger import verify_gb
from .errors import ParseError
from .matrix import MatrixOptions, groebner_matrix
from .stepwise import StepOptions, groebner_step
from .sysio import System, format_system, gen_random_square, parse_poly_lines, parse_system

CRITERIA = ("lcm", "syzygy", "principal", "rewritten")


def _engine_options(engine: str, disabled: list[str]):
    opts = StepOptions() if engine == "step" else MatrixOptions()
    for name in disabled:
        setattr(opts, name, False)
    return opts


def _run_engine(engine: str, system: System, opts):
    runner = groebner_step if engine == "step" else groebner_matrix
    return runner(system.polys, system.ring, opts)


def _stats_payload(engine: str, system: System, result, runtime: float) -> dict:
    ring = system.ring
    payload = {
        "engine": engine,
        "field": ring.p,
        "variables": ring.names,
        "boolean": ring.boolean,
        "generators": result.state.num_generators,
        "basis_size": len(result.basis),
        "counters": result.stats.to_dict(),
        "runtime_seconds": runtime,
    }
    if engine == "matrix":
        payload["matrix"] = result.matrix_stats
    return payload


def cmd_solve(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        system = parse_system(fh.read())
    if args.trace and args.engine != "step":
        print("warning: --trace is only produced by the step engine", file=sys.stderr)
    opts = _engine_options(args.engine, args.disable_criterion)
    if args.trace and args.engine == "step":
        opts.trace = True
    start = time.perf_counter()
    result = _run_engine(args.engine, system, opts)
    runtime = time.perf_counter() - start
    for g in result.basis:
        print(system.ring.format_poly(g))
    payload = _stats_payload(args.engine, system, result, runtime)
    code = 0
    if args.verify:
        report = verify_gb(result.basis, system.polys, system.ring)
        payload["verification"] = report
        if not report["ok"]:
            for line in report["failures"]:
                print(f"verification: {line}", file=sys.stderr)
            code = 1
    if args.trace and args.engine == "step":
        with open(args.trace, "w", encoding="utf-8") as fh:
            for event in result.trace:
                fh.write(json.dumps(event) + "\n")
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return code


def cmd_gen(args) -> int:
    system = gen_random_square(
        args.vars,
        args.seed,
        p=args.field,
        boolean=args.boolean or args.field_equations,
        field_equations=args.field_equations,
    )
    text = format_system(system)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _bench_case(payload: dict) -> dict:
    system = gen_random_square(payload["n"], payload["seed"], p=payload["field"],
                               boolean=payload["boolean"])
    opts = _engine_options(payload["engine"], [])
    start = time.perf_counter()
    result = _run_engine(payload["engine"], system, opts)
    elapsed = time.perf_counter() - start
    row = {
        "n": payload["n"],
        "seed": payload["seed"],
        "engine": payload["engine"],
        "field": payload["field"],
        "time_ms": round(elapsed * 1000.0, 3),
        "timed_out": False,
        "basis_size": len(result.basis),
        "generators": result.state.num_generators,
        "lifts": result.stats.lifts,
        "row_reductions": result.stats.row_reductions,
        "max_rows": max((s["rows"] for s in getattr(result, "matrix_stats", [])), default=0),
        "max_cols": max((s["cols"] for s in getattr(result, "matrix_stats", [])), default=0),
        "verified": "",
    }
    if payload["verify"]:
        report = verify_gb(result.basis, system.polys, system.ring)
        row["verified"] = bool(report["ok"])
    return row


def _bench_worker(payload: dict, conn) -> None:
    try:
        conn.send(_bench_case(payload))
    except Exception as ex:  # pragma: no cover - defensive
        conn.send({"error": str(ex)})
    finally:
        conn.close()


def _bench_case_with_timeout(payload: dict, timeout_ms: int | None) -> dict:
    if timeout_ms is None:
        return _bench_case(payload)
    parent, child = multiprocessing.Pipe()
    proc = multiprocessing.Process(target=_bench_worker, args=(payload, child))
    proc.start()
    child.close()
    proc.join(timeout_ms / 1000.0)
    if proc.is_alive():
        proc.terminate()
        proc.join()
        return {
            "n": payload["n"], "seed": payload["seed"], "engine": payload["engine"],
            "field": payload["field"], "time_ms": float(timeout_ms), "timed_out": True,
            "basis_size": "", "generators": "", "lifts": "", "row_reductions": "",
            "max_rows": "", "max_cols": "", "verified": "",
        }
    row = parent.recv()
    if "error" in row:
        raise RuntimeError(row["error"])
    return row


BENCH_COLUMNS = ["n", "seed", "engine", "field", "time_ms", "timed_out", "basis_size",
                 "generators", "lifts", "row_reductions", "max_rows", "max_cols", "verified"]


def cmd_bench(args) -> int:
    rows = []
    for n in range(args.start, args.stop + 1):
        for seed in range(1, args.seeds + 1):
            payload = {
                "n": n, "seed": seed, "engine": args.engine, "field": args.field,
                "boolean": not args.no_boolean, "verify": not args.no_verify,
            }
            rows.append(_bench_case_with_timeout(payload, args.timeout))
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    with open(args.system, encoding="utf-8") as fh:
        system = parse_system(fh.read())
    with open(args.gb, encoding="utf-8") as fh:
        gb_text = fh.read()
    if any(line.strip().startswith("field") for line in gb_text.splitlines()):
        gb = parse_system(gb_text).polys
    else:
        gb = parse_poly_lines(system.ring, gb_text)
    report = verify_gb(gb, system.polys, system.ring)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if report["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mogvw",
                                     description="Groebner bases over small prime fields")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute a Groebner basis from a system file")
    p_solve.add_argument("file")
    p_solve.add_argument("--engine", choices=("step", "matrix"), default="step")
    p_solve.add_argument("--verify", action="store_true",
                         help="check the result against the Buchberger oracle")
    p_solve.add_argument("--stats", metavar="OUT.json", help="write run statistics")
    p_solve.add_argument("--trace", metavar="OUT.jsonl",
                         help="write step-engine trace records, one JSON object per line")
    p_solve.add_argument("--disable-criterion", action="append", default=[],
                         choices=CRITERIA, help="turn one pruning criterion off")
    p_solve.set_defaults(func=cmd_solve)

    p_gen = sub.add_parser("gen", help="generate a seeded random square system")
    p_gen.add_argument("--vars", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--field", type=int, default=2)
    p_gen.add_argument("--boolean", action="store_true",
                       help="squarefree quadratic system in the quotient ring")
    p_gen.add_argument("--field-equations", action="store_true",
                       help="emit the boolean system in the ordinary ring with "
                            "x_i^2 - x_i appended (cross-check path)")
    p_gen.add_argument("-o", "--output")
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="run seeded benchmark cases")
    p_bench.add_argument("--from", dest="start", type=int, required=True)
    p_bench.add_argument("--to", dest="stop", type=int, required=True)
    p_bench.add_argument("--seeds", type=int, default=1)
    p_bench.add_argument("--engine", choices=("step", "matrix"), default="matrix")
    p_bench.add_argument("--field", type=int, default=2)
    p_bench.add_argument("--no-boolean", action="store_true")
    p_bench.add_argument("--no-verify", action="store_true")
    p_bench.add_argument("--timeout", type=int, metavar="MS",
                         help="per-case timeout; timed-out rows are recorded")
    p_bench.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bench.add_argument("-o", "--output")
    p_bench.set_defaults(func=cmd_bench)

    p_verify = sub.add_parser("verify", help="verify a basis file against a system file")
    p_verify.add_argument("system")
    p_verify.add_argument("gb")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
