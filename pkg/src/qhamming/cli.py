"""Command-line front end.

    qhamming hamming    --n 2 'expr:x0&x1' 'expr:x0|x1' [--output json]
    qhamming categorize --n 2 'expr:x0^x1'
    qhamming inspect    --n 2 --stage phi4 'expr:x0&x1' 'expr:x0|x1'
    qhamming bench      --n 10..16 --kappa 2 --repetitions 3

Exit status: 0 success, 2 bad input or resource cap, 3 inconsistent reading.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import analysis
from .boolfn import BooleanFunction, load_truth_table, parse_expression, random_function
from .circuit import (
    GateLog,
    run_categorization,
    run_proposed_algorithm,
    stage_names,
    state_after_stage,
)
from .config import DEFAULT_SEED, DEFAULT_SHOTS, INVARIANT_TOL, MAX_ARITY, MAX_QUBITS
from .errors import InconsistencyError, QHammingError, ResourceError, InputError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3

BALANCED_NOTE = (
    "balanced functions read C=1, the value of 2*sqrt(M(N-M))/N at M=N/2; "
    "a quoted value of 1/2 for this case is inconsistent with that formula"
)


@dataclass
class RunConfig:
    mode: str = analysis.EXACT
    shots: int = DEFAULT_SHOTS
    seed: int = DEFAULT_SEED
    compare_classical: bool = True
    output: str = "text"

    def __post_init__(self):
        if self.mode == analysis.SAMPLED and self.shots < 1:
            raise InputError("sampled mode needs --shots >= 1")


def load_function(spec: str, n: int | None) -> BooleanFunction:
    """``expr:<expression>`` (needs n) or ``file:<path>`` (arity from the file)."""
    kind, sep, body = spec.partition(":")
    if not sep:
        raise InputError(f"function spec {spec!r} must start with 'expr:' or 'file:'")
    if kind == "expr":
        if n is None:
            raise InputError("expressions need an explicit --n")
        return parse_expression(body, n)
    if kind == "file":
        try:
            f = load_truth_table(body)
        except OSError as exc:
            raise InputError(f"cannot read {body}: {exc.strerror}") from None
        if n is not None and f.n != n:
            raise InputError(f"{body} has n={f.n} but --n {n} was given")
        return f
    raise InputError(f"unknown function spec kind {kind!r}")


def _config(args) -> RunConfig:
    return RunConfig(
        mode=args.mode, shots=args.shots, seed=args.seed,
        compare_classical=not args.no_compare, output=args.output,
    )


def cmd_hamming(args, out) -> int:
    if len(args.functions) < 2:
        raise InputError("hamming needs at least two function specs")
    config = _config(args)
    funcs = [load_function(s, args.n) for s in args.functions]
    report = run_proposed_algorithm(
        funcs, mode=config.mode, shots=config.shots, seed=config.seed,
        compare_classical=config.compare_classical,
    )
    if config.output == "json":
        out.write(json.dumps(report.to_dict()) + "\n")
        return EXIT_OK
    lines = [
        f"n={report.n} N={report.N} kappa={report.kappa} mode={report.mode}"
        + (f" shots={report.shots}" if report.mode == analysis.SAMPLED else ""),
        f"C={report.C:.12g} p1={report.p1:.12g}",
        f"case={report.case.value} delta={report.delta if report.delta is not None else '-'}",
        f"M_c={report.M_c} H={report.H}",
    ]
    if report.classical_joint is not None:
        lines.append(f"classical: joint={report.classical_joint} textbook={report.classical_textbook}")
    lines += [f"warning: {w}" for w in report.warnings]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_categorize(args, out) -> int:
    if len(args.functions) != 1:
        raise InputError("categorize takes exactly one function spec")
    config = _config(args)
    f = load_function(args.functions[0], args.n)
    category, reading = run_categorization(f, mode=config.mode, shots=config.shots, seed=config.seed)
    if config.output == "json":
        payload = {
            "n": f.n, "N": f.N, "category": category.value, "C": reading.C, "p1": reading.p1,
            "mode": reading.mode, "shots": reading.shots, "stderr": reading.stderr,
            "note": BALANCED_NOTE,
        }
        out.write(json.dumps(payload) + "\n")
    else:
        out.write(f"category={category.value} C={reading.C:.12g}\nnote: {BALANCED_NOTE}\n")
    return EXIT_OK


def cmd_inspect(args, out) -> int:
    funcs = [load_function(s, args.n) for s in args.functions]
    state = state_after_stage(funcs, args.stage)
    n, kappa = funcs[0].n, len(funcs)
    rows = []
    amps = state.amps
    for index in np.flatnonzero(np.abs(amps) > INVARIANT_TOL):
        index = int(index)
        l = index & ((1 << n) - 1)
        outs = "".join(str((index >> (n + j)) & 1) for j in range(kappa))
        chi = (index >> (n + kappa)) & 1
        rows.append((l, outs, chi, complex(amps[index])))
    if args.output == "json":
        payload = [
            {"l": l, "outputs": outs, "chi": chi, "re": a.real, "im": a.imag}
            for l, outs, chi, a in rows
        ]
        out.write(json.dumps({"stage": args.stage, "amplitudes": payload}) + "\n")
        return EXIT_OK
    out.write(f"# stage {args.stage}: l | f0..f{kappa - 1} | chi  amplitude\n")
    width = len(str((1 << n) - 1))
    for l, outs, chi, a in rows:
        out.write(f"{l:>{width}} | {outs} | {chi}  {a.real:+.6f}{a.imag:+.6f}j\n")
    return EXIT_OK


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise InputError(f"bad n range {text!r}; use e.g. 10..16") from None
    if lo_i > hi_i:
        raise InputError(f"empty n range {text!r}")
    return range(lo_i, hi_i + 1)


def cmd_bench(args, out) -> int:
    """CSV of mean wall time per exact pipeline run.

    ``amps_per_sec`` counts amplitude updates: register size times gates applied.
    """
    ns = _parse_range(args.n)
    if args.kappa < 2:
        raise InputError("--kappa must be >= 2")
    if args.repetitions < 1:
        raise InputError("--repetitions must be >= 1")
    for n in ns:
        if not 1 <= n <= MAX_ARITY or n + args.kappa + 2 > MAX_QUBITS:
            raise ResourceError(f"n={n}, kappa={args.kappa} exceeds the configured cap")
    rows = []
    for n in ns:
        funcs = [random_function(n, args.seed + j) for j in range(args.kappa)]
        elapsed = 0.0
        gates = 0
        for _ in range(args.repetitions):
            log = GateLog()
            start = time.perf_counter()
            run_proposed_algorithm(funcs, compare_classical=False, log=log)
            elapsed += time.perf_counter() - start
            gates += len(log.lines)
        per_run = elapsed / args.repetitions
        size = 1 << (n + args.kappa + 2)
        rows.append([n, args.kappa, f"{per_run:.6f}", f"{size * gates / elapsed:.4g}"])
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "kappa", "seconds", "amps_per_sec"])
    writer.writerows(rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    run_opts = argparse.ArgumentParser(add_help=False)
    run_opts.add_argument("--n", type=int, help="arity for expr: specs")
    run_opts.add_argument("--mode", choices=[analysis.EXACT, analysis.SAMPLED], default=analysis.EXACT)
    run_opts.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    run_opts.add_argument("--seed", type=int, default=DEFAULT_SEED)
    run_opts.add_argument("--no-compare", action="store_true", help="skip classical cross-checks")
    run_opts.add_argument("--output", choices=["text", "json"], default="text")

    parser = argparse.ArgumentParser(prog="qhamming", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hamming", parents=[run_opts], help="distance between >= 2 functions")
    p.add_argument("functions", nargs="+", metavar="SPEC")
    p.set_defaults(handler=cmd_hamming)

    p = sub.add_parser("categorize", parents=[run_opts], help="constant / balanced / other")
    p.add_argument("functions", nargs="+", metavar="SPEC")
    p.set_defaults(handler=cmd_categorize)

    p = sub.add_parser("inspect", parents=[run_opts], help="dump the register after a stage")
    p.add_argument("--stage", required=True, help="phi0 .. phi(kappa+2); phi4 is the end for kappa=2")
    p.add_argument("functions", nargs="+", metavar="SPEC")
    p.set_defaults(handler=cmd_inspect)

    p = sub.add_parser("bench", help="time the exact pipeline")
    p.add_argument("--n", default="10..16", help="arity or range lo..hi")
    p.add_argument("--kappa", type=int, default=2)
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args, out)
    except InconsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except QHammingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
