"""Command line driver for convergence sweeps.

``sweep`` truncates every coset at k = 0..k_max; ``target`` runs the 1/N
selection for each N.  Exit codes: 0 all bound checks pass, 1 a bound check
failed, 2 bad configuration, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass

from .functions import FunctionSpec, SpecSyntaxError, generate, parse_spec
from .glue import approximate, approximate_at_level
from .padic import PAdicError, Prime

log = logging.getLogger(__name__)

COLUMNS = ["p", "spec", "mode_param", "t", "l2_error", "bound", "sup_error", "runtime_ms"]

EXIT_OK, EXIT_BOUND, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    prime: int
    spec: FunctionSpec
    mode: str
    params: list
    out: str = "-"
    format: str = "csv"
    seed: int = 0
    timing: bool = True

    def __post_init__(self):
        if self.mode not in ("sweep_levels", "target_N"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if self.mode == "sweep_levels" and any(k < 0 for k in self.params):
            raise ConfigError("levels must be >= 0")
        if self.mode == "target_N" and any(n < 1 for n in self.params):
            raise ConfigError("N must be >= 1")


def run_rows(config: ExperimentConfig) -> tuple:
    """Rows (sorted by mode parameter) and the list of failed bound checks."""
    f = generate(config.spec, config.prime, config.seed)
    rows, failures = [], []
    previous = None
    for param in sorted(config.params):
        if config.mode == "sweep_levels":
            _, report = approximate_at_level(f, param)
            if report.total_error > report.bound + 1e-9:
                failures.append(f"k={param}: total error exceeds sum of coset errors")
            if previous is not None and report.total_error > previous + 1e-12:
                failures.append(f"k={param}: error increased")
            if param >= f.level and report.total_error >= 1e-9:
                failures.append(f"k={param}: error {report.total_error:.3e} at full resolution")
            previous = report.total_error
        else:
            _, report = approximate(f, param)
            ok = report.total_error < report.bound or (report.t == 0 and report.total_error == 0)
            if not ok:
                failures.append(f"N={param}: total error {report.total_error:.3e} >= t/N")
            if report.total_error > math.fsum(report.per_coset_errors) + 1e-9:
                failures.append(f"N={param}: total error exceeds sum of coset errors")
        if not config.timing:
            report.runtime_ms = 0.0
        rows.append(
            {
                "p": config.prime,
                "spec": str(config.spec),
                "mode_param": param,
                "t": report.t,
                "l2_error": report.total_error,
                "bound": report.bound,
                "sup_error": report.sup_error,
                "runtime_ms": report.runtime_ms,
                "report": report.to_dict(),
            }
        )
    return rows, failures


def render(rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([repr(row[c]) if isinstance(row[c], float) else row[c] for c in COLUMNS])
    return buf.getvalue()


def run(config: ExperimentConfig) -> int:
    try:
        rows, failures = run_rows(config)
    except PAdicError as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    text = render(rows, config.format)
    try:
        if config.out == "-":
            sys.stdout.write(text)
        else:
            with open(config.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        log.error("cannot write %s: %s", config.out, exc)
        return EXIT_IO
    if failures:
        log.error("%d bound check(s) failed:\n  %s", len(failures), "\n  ".join(failures))
        return EXIT_BOUND
    return EXIT_OK


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qp-harmonic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, required=True)
    common.add_argument("--spec", required=True, help="function spec, e.g. 'random:level=3,window=1,seed=7'")
    common.add_argument("--out", default="-", help="output file, '-' for stdout")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--seed", type=int, default=0, help="seed for random specs without one")
    common.add_argument("--no-timing", action="store_true", help="write runtime_ms as 0 for byte-stable output")
    sweep = sub.add_parser("sweep", parents=[common], help="error for every truncation level")
    sweep.add_argument("--k-max", type=int, required=True)
    target = sub.add_parser("target", parents=[common], help="smallest levels meeting 1/N per coset")
    target.add_argument("--n-list", type=_int_list, required=True)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        prime = Prime(args.prime)
        spec = parse_spec(args.spec)
        if args.command == "sweep":
            mode, params = "sweep_levels", list(range(args.k_max + 1))
            if args.k_max < 0:
                raise ConfigError("--k-max must be >= 0")
        else:
            mode, params = "target_N", args.n_list
        config = ExperimentConfig(
            prime=prime,
            spec=spec,
            mode=mode,
            params=params,
            out=args.out,
            format=args.format,
            seed=args.seed,
            timing=not args.no_timing,
        )
    except (SpecSyntaxError, ConfigError, PAdicError) as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
