"""
Command-line front end for geobounds.

  python -m source.cli bound --channel "kind=gad gamma=0.75 N=0.2" --bound c-beta
  python -m source.cli bound --channel "kind=erasure p=0.5" --bound upsilon-geometric --level 5
  python -m source.cli sweep test/sweeps/gad_quantum.json --workers 4
  python -m source.cli discriminate --channel "kind=gad gamma=0.3 N=0" \
      --against "kind=gad gamma=0.6 N=0" --level 3
  python -m source.cli bounds

Results go to stdout, progress and diagnostics to stderr.

Exit codes:
  0  every requested value solved to optimality
  1  a sweep finished with NaN cells
  2  solver failure, bad channel spec, bad config or usage error
  3  the bound has no exact program at this dimension
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from .bounds import discrimination_bounds
from .channel_spec import describe_channel_spec, parse_channel_spec
from .channels import QuantumChannel
from .config import Settings, load_settings, set_settings
from .conic import alpha_of_level
from .errors import ConfigError, ContractViolation, GeoBoundsError, UnsupportedDimension
from .registry import BOUNDS, evaluate_bound
from .reporting import (
    format_bits,
    format_bound_line,
    write_summary_json,
    write_sweep_csv,
    write_sweep_csv_stream,
    write_sweep_json,
)
from .sweep import load_sweep_spec, run_sweep
from .types import SweepRow

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_FAILURE = 2
EXIT_UNSUPPORTED = 3


def log(msg: str) -> None:
    try:
        print(msg, file=sys.stderr)
    except UnicodeEncodeError:
        print(msg.encode("utf-8", errors="replace").decode("ascii", errors="replace"), file=sys.stderr)


def _settings(args: argparse.Namespace) -> Settings:
    settings = load_settings(Path(args.config) if args.config else None)
    changes: Dict[str, Any] = {}
    for key in ("solver", "complex_mode", "workers", "log_level", "dump_dir"):
        value = getattr(args, key, None)
        if value is not None:
            changes[key] = value
    if changes:
        settings = settings.updated(**changes)
    set_settings(settings)
    return settings


def cmd_bound(args: argparse.Namespace, settings: Settings) -> int:
    channel = parse_channel_spec(args.channel)
    log(f"[Bound] {args.bound} on {describe_channel_spec(args.channel)}")
    result = evaluate_bound(args.bound, channel, level=args.level, settings=settings)
    print(format_bound_line(result))
    if args.json:
        summary = {"ok": result.ok, "channel": describe_channel_spec(args.channel), **result.to_dict()}
        write_summary_json(Path(args.json), summary)
    return EXIT_OK if result.ok else EXIT_FAILURE


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    spec = load_sweep_spec(Path(args.spec))
    if args.level is not None:
        spec.level = args.level
    if args.format:
        spec.output_format = args.format
    if args.output:
        spec.output = args.output
    log(f"[Sweep] {spec.points} points of {spec.param} in [{spec.start}, {spec.stop}], bounds: {', '.join(spec.bounds)}")

    def progress(row: SweepRow) -> None:
        cells = " ".join(f"{name}={format_bits(row.values.get(name))}" for name in spec.bounds)
        log(f"[Sweep] {row.index + 1}/{spec.points} {spec.param}={format_bits(row.param)} {cells}")

    rows = run_sweep(spec, settings, progress=progress)
    if spec.output:
        if spec.output_format == "json":
            write_sweep_json(Path(spec.output), spec, rows)
        else:
            write_sweep_csv(Path(spec.output), spec, rows)
        log(f"[Sweep] wrote {spec.output}")
    else:
        write_sweep_csv_stream(sys.stdout, spec, rows)
    failed = [row.index for row in rows if not row.ok]
    if failed:
        log(f"[Sweep] {len(failed)} grid point(s) with NaN cells: {failed}")
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_discriminate(args: argparse.Namespace, settings: Settings) -> int:
    N = parse_channel_spec(args.channel)
    M = parse_channel_spec(args.against)
    if not isinstance(N, QuantumChannel) or not isinstance(M, QuantumChannel):
        raise ContractViolation("discriminate takes point-to-point channels")
    alpha = args.alpha if args.alpha is not None else alpha_of_level(
        args.level if args.level is not None else settings.sweep_level
    )
    geometric, dmax = discrimination_bounds(N, M, alpha)
    print(f"{format_bits(geometric)} {format_bits(dmax)}")
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace, settings: Settings) -> int:
    for entry in BOUNDS.values():
        tags: List[str] = [entry.channel_type.__name__]
        if entry.takes_level:
            tags.append("level")
        print(f"{entry.name:24s} {entry.description} [{', '.join(tags)}]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geobounds", description="Geometric Renyi capacity bounds for quantum channels")
    parser.add_argument("--config", default=None, help="key=value config file (see ci/solver-config.ini)")
    parser.add_argument("--solver", default=None, help="CLARABEL or SCS")
    parser.add_argument("--complex-mode", dest="complex_mode", choices=("native", "embed"), default=None)
    parser.add_argument("--log-level", dest="log_level", default=None, help="DEBUG, INFO, WARNING, ...")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="Evaluate one bound on one channel")
    p.add_argument("--channel", required=True, help='Channel spec, e.g. "kind=gad gamma=0.3 N=0.5"')
    p.add_argument("--bound", required=True, choices=list(BOUNDS))
    p.add_argument("--level", type=int, default=None, help="Dyadic level l, alpha = 1 + 2^-l")
    p.add_argument("--json", default=None, help="Also write the full result as JSON")
    p.add_argument("--dump-dir", dest="dump_dir", default=None, help="Write each conic program here before solving")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("sweep", help="Run a JSON sweep specification")
    p.add_argument("spec", help="Path to the sweep JSON file")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--output", default=None, help="Output path; CSV on stdout when omitted")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("discriminate", help="Geometric and max channel divergences D(N || M)")
    p.add_argument("--channel", required=True, help="Channel spec of N")
    p.add_argument("--against", required=True, help="Channel spec of M")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--alpha", type=float, default=None)
    group.add_argument("--level", type=int, default=None)
    p.set_defaults(handler=cmd_discriminate)

    p = sub.add_parser("bounds", help="List the available bounds")
    p.set_defaults(handler=cmd_bounds)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _settings(args)
        logging.basicConfig(level=settings.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    except (ConfigError, ValueError) as exc:
        log(f"ERROR: {exc}")
        return EXIT_FAILURE

    try:
        return args.handler(args, settings)
    except UnsupportedDimension as exc:
        log(f"ERROR: {exc}")
        return EXIT_UNSUPPORTED
    except (GeoBoundsError, ValueError, RuntimeError, OSError) as exc:
        log(f"ERROR: {exc}")
        return EXIT_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
