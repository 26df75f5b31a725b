"""Command-line front end for the Monte Carlo experiment driver."""

import argparse
import sys
from dataclasses import replace

from .harness import (ARCHITECTURES, MODES, PRESETS, ExhaustiveCapError,
                      SpecError, load_spec_file, preset_spec, run_experiment,
                      write_output, write_per_drop)

EXIT_OK = 0
EXIT_BAD_SPEC = 2
EXIT_CAP_EXCEEDED = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="simulate",
        description="Compare hybrid-precoding array architectures over "
                    "seeded Monte Carlo channel drops.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=sorted(PRESETS),
                     help="built-in experiment scenario")
    src.add_argument("--spec", metavar="FILE",
                     help="JSON experiment spec (schema in README)")
    p.add_argument("--drops", type=int, metavar="N",
                   help="Monte Carlo drops per sweep point")
    p.add_argument("--seed", type=int, metavar="S", help="base RNG seed")
    p.add_argument("--out", metavar="PATH",
                   help="aggregate output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"),
                   help="aggregate output format")
    p.add_argument("--mode", choices=MODES, help="digital precoding mode")
    p.add_argument("--arch", metavar="LIST",
                   help="comma-separated subset of: " + ",".join(ARCHITECTURES))
    p.add_argument("--per-drop", metavar="PATH", dest="per_drop",
                   help="also write per-drop results as CSV")
    p.add_argument("--workers", type=int, metavar="N",
                   help="parallel worker processes (default 1)")
    return p


def _apply_overrides(spec, args):
    updates = {}
    if args.drops is not None:
        updates["n_drops"] = args.drops
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.out is not None:
        updates["out_path"] = args.out
    if args.format is not None:
        updates["out_format"] = args.format
    if args.mode is not None:
        updates["mode"] = args.mode
    if args.arch is not None:
        updates["architectures"] = tuple(
            a.strip() for a in args.arch.split(",") if a.strip())
    if args.per_drop is not None:
        updates["per_drop_path"] = args.per_drop
    if args.workers is not None:
        updates["workers"] = args.workers
    return replace(spec, **updates) if updates else spec


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.preset is not None:
            spec = preset_spec(args.preset)
        else:
            spec = load_spec_file(args.spec)
        spec = _apply_overrides(spec, args)
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        rows, per_drop = run_experiment(spec)
    except ExhaustiveCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_SPEC

    try:
        write_output(rows, spec)
        write_per_drop(per_drop, spec)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
