"""Command-line interface.

Exit codes: 0 success, 1 malformed input or inconsistent flags, 2 the
supplied weights do not belong to the instance's grid.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .erasure import GridPartition, erasure_weights, weights_from_json, weights_to_json
from .errors import InvalidArgumentError, NumericOverflowError
from .experiments import (
    ExperimentConfig,
    FlopsSweepConfig,
    accuracy_csv,
    flops_csv,
    run_accuracy,
    run_flops_sweep,
)
from .jsonio import instance_from_json, result_to_json
from .recovery import recover
from .selfcheck import run_selfcheck

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2
DEFAULT_SEED = 1

EPILOG = """\
exit codes:
  0  success
  1  malformed input, out-of-range index or inconsistent flags
  2  weights file does not match the instance grid
"""


class _Parser(argparse.ArgumentParser):
    # usage errors share exit code 1 with malformed input; 2 is reserved
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _fail(message: str, code: int = EXIT_INPUT) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _int_list(text: str) -> list[int]:
    """``"a,b,c"`` or ``"start:stop[:step]"`` (stop inclusive)."""
    text = text.strip()
    if not text:
        return []
    try:
        if ":" in text:
            parts = [int(x) for x in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) == 3 else 1
            if step <= 0:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def cmd_recover(args) -> int:
    try:
        known = instance_from_json(_read_json(args.input))
    except (OSError, json.JSONDecodeError, InvalidArgumentError) as exc:
        return _fail(f"{args.input}: {exc}")

    weights = None
    if args.weights:
        try:
            weights = weights_from_json(_read_json(args.weights))
        except (OSError, json.JSONDecodeError, InvalidArgumentError) as exc:
            return _fail(f"{args.weights}: {exc}")
        if weights.grid != known.grid:
            return _fail(f"weights in {args.weights} were built for a different grid",
                         EXIT_MISMATCH)
        if args.method != "proposed":
            print(f"note: --weights ignored by method {args.method}", file=sys.stderr)

    try:
        result = recover(known, args.method, weights=weights,
                         coefficients=args.emit_coefficients)
    except (InvalidArgumentError, NumericOverflowError) as exc:
        return _fail(str(exc))
    _write_text(args.output, json.dumps(result_to_json(result), indent=2) + "\n")
    if args.output not in (None, "-"):
        g = known.grid
        print(f"{args.method}: recovered {g.n_missing} of {g.n_total} samples -> {args.output}")
    return EXIT_OK


def cmd_weights(args) -> int:
    source = args.missing
    try:
        if source.startswith("@"):
            source = Path(source[1:]).read_text(encoding="utf-8")
        missing = sorted(set(_int_list(source)))
        grid = GridPartition.from_missing(args.n, missing)
        weights = erasure_weights(grid)
    except (OSError, UsageError, InvalidArgumentError, NumericOverflowError) as exc:
        return _fail(str(exc))
    _write_text(args.output, json.dumps(weights_to_json(weights), indent=2) + "\n")
    if args.output not in (None, "-"):
        print(f"weights for N={grid.n_total}, {grid.n_missing} missing -> {args.output}")
    return EXIT_OK


def cmd_bench_accuracy(args) -> int:
    try:
        if args.scenario == "jittered":
            n_values = _int_list(args.n_range or args.n or "512")
            p_values = ()
        else:
            n_values = _int_list(args.n or "64")
            p_values = _int_list(args.p_range or "4:60:4")
        config = ExperimentConfig(
            scenario=args.scenario, n_values=tuple(n_values), a=args.a,
            p_values=tuple(p_values), trials=args.trials, seed=args.seed,
            methods=tuple(_str_list(args.methods)), workers=args.workers,
        )
    except (UsageError, InvalidArgumentError, ValueError) as exc:
        return _fail(str(exc))
    stats = run_accuracy(config)
    _write_text(args.csv, accuracy_csv(stats))
    if args.csv not in (None, "-"):
        worst = max(s.max_error for s in stats)
        print(f"{len(stats)} rows, worst max_err {worst:.3e} -> {args.csv}")
    return EXIT_OK


def cmd_bench_flops(args) -> int:
    try:
        if args.n_range or args.n:
            n_values = _int_list(args.n_range or args.n)
        elif args.sweep == "p":
            n_values = [1024]
        else:
            n_values = [2**k for k in range(3, 17)]
        methods = tuple(_str_list(args.methods)) if args.methods else None
        config = FlopsSweepConfig(sweep=args.sweep, n_values=tuple(n_values), a=args.a,
                                  methods=methods)
    except (UsageError, InvalidArgumentError, ValueError) as exc:
        return _fail(str(exc))
    reports = run_flops_sweep(config)
    _write_text(args.csv, flops_csv(reports))
    if args.csv not in (None, "-"):
        print(f"{len(reports)} rows -> {args.csv}")
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    return EXIT_OK if run_selfcheck() else EXIT_INPUT


def _str_list(text: str) -> list[str]:
    return [x for x in text.replace(",", " ").split() if x]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="erasurefft",
        description="Recover missing samples of a periodic band-limited signal on a regular grid.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("recover", help="fill the missing samples of an instance",
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--input", required=True, help="problem instance JSON")
    p.add_argument("--method", choices=("proposed", "ber", "pinv"), default="proposed")
    p.add_argument("--weights", help="precomputed weights JSON (proposed method)")
    p.add_argument("--output", help="result JSON path (default: stdout)")
    p.add_argument("--emit-coefficients", action="store_true",
                   help="include the Fourier coefficients S_p in the result")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("weights", help="precompute erasure weights for a fixed grid",
                       epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--n", type=int, required=True, help="grid size N")
    p.add_argument("--missing", required=True,
                   help="missing indices as 'a,b,c', 'start:stop[:step]' or @file")
    p.add_argument("--output", help="weights JSON path (default: stdout)")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("bench-accuracy", help="Monte-Carlo round-off experiment")
    p.add_argument("--scenario", choices=("jittered", "gap"), default="jittered")
    p.add_argument("--n", help="N value(s): '512' or '64,128,256' (gap: single N, default 64)")
    p.add_argument("--n-range", help="N sweep 'start:stop[:step]', stop inclusive")
    p.add_argument("--a", type=int, default=8, help="oversampling factor N/P (jittered)")
    p.add_argument("--p-range", help="P sweep for the gap scenario (default 4:60:4)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--methods", default="proposed,ber,pinv")
    p.add_argument("--workers", type=int, default=1, help="parallel trial workers")
    p.add_argument("--csv", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_bench_accuracy)

    p = sub.add_parser("bench-flops", help="analytic flop-count sweep")
    p.add_argument("--sweep", choices=("n", "p"), default="n",
                   help="'n': vary N with P = N/a; 'p': vary P = 1..N-1 at fixed N")
    p.add_argument("--n", help="N value(s)")
    p.add_argument("--n-range", help="N sweep 'start:stop[:step]', stop inclusive")
    p.add_argument("--a", type=int, default=8)
    p.add_argument("--methods", help="subset of ber,prop_a,prop_b,prop_no_weights,zp_fft")
    p.add_argument("--csv", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_bench_flops)

    p = sub.add_parser("selfcheck", help="run the built-in identity checks")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
