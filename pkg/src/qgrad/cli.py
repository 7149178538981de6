"""Command line entry point: ``qgrad run --function rtg --runs 50 ...``.

Exit codes: 0 on success, 1 for invalid arguments or configuration, 2 when
a file cannot be read or written.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .benchmarks import FUNCTION_NAMES, get_function
from .harness.experiment import ALGORITHMS, ExperimentSpec, default_config, run_experiment
from .harness.report import FORMATS, compare_to_reference, emit
from .optimizer import NORMALIZATIONS

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _flag(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


# option name -> converter, shared by the CLI and the config file
OPTIONS = {
    "function": str,
    "runs": int,
    "sigma0": float,
    "alpha0": float,
    "beta": float,
    "seed": int,
    "max_evals": lambda s: int(float(s)),
    "target": float,
    "dim": int,
    "algorithm": str,
    "format": str,
    "out": str,
    "compare": _flag,
    "normalize": str,
    "fd_step": float,
    "max_redraws": int,
    "sigma_floor": float,
    "workers": int,
}


def read_config(path: str) -> dict:
    """Parse a flat ``key = value`` file.  ``#`` starts a comment.

    Keys are the long CLI flags without dashes (``max-evals`` and
    ``max_evals`` are both accepted).
    """
    values = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line:
            key, value = line.split("=", 1)
        else:
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, value = parts
        key = key.strip().lstrip("-").replace("-", "_")
        if key not in OPTIONS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = OPTIONS[key](value.strip())
        except ValueError as exc:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgrad", description="q-gradient method benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    run = sub.add_parser("run", help="run a seeded multi-run experiment")
    # defaults are None so config-file values can fill the gaps
    run.add_argument("--config", metavar="PATH", help="flat key = value file; flags override it")
    run.add_argument("--function", choices=FUNCTION_NAMES)
    run.add_argument("--runs", type=int, help="number of runs (default 50)")
    run.add_argument("--sigma0", type=float, help="initial Gaussian width (default: published value)")
    run.add_argument("--alpha0", type=float, help="initial step length (default: published value)")
    run.add_argument("--beta", type=float, help="reduction factor (default: published value)")
    run.add_argument("--seed", type=int, help="base seed; run r uses seed + r (default 0)")
    run.add_argument("--max-evals", type=OPTIONS["max_evals"], help="evaluation budget per run (default 1e6)")
    run.add_argument("--target", type=float, help="accuracy target (default 1e-20, Ackley 1e-15)")
    run.add_argument("--dim", type=int, help="number of variables (default 20)")
    run.add_argument("--algorithm", choices=("qgrad", "sd"))
    run.add_argument("--format", choices=FORMATS)
    run.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    run.add_argument("--compare", action="store_true", default=None,
                     help="add the published rows and ratio columns")
    run.add_argument("--normalize", choices=NORMALIZATIONS, help="step scaling (default max)")
    run.add_argument("--fd-step", type=float, help="forward-difference step for the classical limit")
    run.add_argument("--max-redraws", type=int, help="q redraws when the q-gradient vanishes")
    run.add_argument("--sigma-floor", type=float, help="lower bound on the Gaussian width")
    run.add_argument("--workers", type=int, help="parallel processes (default 1)")
    return parser


def _resolve(args: argparse.Namespace) -> dict:
    opts = {}
    if args.config:
        opts.update(read_config(args.config))
    for key in OPTIONS:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    if "function" not in opts:
        raise UsageError("--function is required (on the command line or in --config)")
    if opts["function"] not in FUNCTION_NAMES:
        raise UsageError(f"unknown function {opts['function']!r}; valid names: {', '.join(FUNCTION_NAMES)}")
    if opts.get("algorithm", "qgrad") not in ALGORITHMS:
        raise UsageError(f"algorithm must be one of {ALGORITHMS}")
    if opts.get("format", "table") not in FORMATS:
        raise UsageError(f"format must be one of {FORMATS}")
    return opts


def _spec_from(opts: dict) -> ExperimentSpec:
    overrides = {
        key: opts[key]
        for key in ("sigma0", "alpha0", "beta", "max_evals", "target", "fd_step",
                    "max_redraws", "sigma_floor", "normalize")
        if key in opts
    }
    cfg = default_config(opts["function"], dim=opts.get("dim", 20), **overrides)
    get_function(opts["function"], cfg.dim)  # reject dimensions the function cannot take
    return ExperimentSpec(
        function=opts["function"],
        config=cfg,
        runs=opts.get("runs", 50),
        base_seed=opts.get("seed", 0),
        algorithm=opts.get("algorithm", "qgrad"),
    )


def cmd_run(args: argparse.Namespace) -> int:
    try:
        opts = _resolve(args)
        spec = _spec_from(opts)
    except OSError as exc:
        print(f"qgrad: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, ValueError, KeyError) as exc:
        print(f"qgrad: {exc}", file=sys.stderr)
        return EXIT_USAGE

    summary = run_experiment(spec, workers=opts.get("workers", 1))
    fmt = opts.get("format", "table")
    out = opts.get("out")
    try:
        emit(summary, fmt, out)
        if opts.get("compare"):
            report = compare_to_reference(summary).render()
            if fmt == "table":
                emit_extra(report, out)
            else:
                sys.stderr.write(report)
    except OSError as exc:
        print(f"qgrad: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def emit_extra(text: str, out) -> None:
    if out is None:
        sys.stdout.write("\n" + text)
    else:
        with open(out, "a") as fh:
            fh.write("\n" + text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
