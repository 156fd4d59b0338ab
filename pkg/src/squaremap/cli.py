"""Command-line entry point: ``squaremap remap | grid | verify``.

Exit codes: 0 success, 2 bad arguments, 3 I/O failure, 4 a verification
threshold failed.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .analysis import verify_report
from .core import MappingId, MappingKind
from .maps import Direction
from .raster import RemapJob, export_grid_csv, load_png, parse_rgba, remap, save_png

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_THRESHOLD = 4

MAPPING_NAMES = [k.value for k in MappingKind]
DIRECTION_NAMES = [d.value for d in Direction]


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="squaremap", description="Map between the unit disc and the square.")
    sub = p.add_subparsers(dest="command", required=True)

    def mapping_args(sp):
        sp.add_argument("--mapping", required=True, choices=MAPPING_NAMES)
        sp.add_argument("--q", type=float, default=None, help="squelching parameter (squelched-elliptical-grid only)")

    r = sub.add_parser("remap", help="resample an image from disc to square or back")
    mapping_args(r)
    r.add_argument("--direction", required=True, choices=DIRECTION_NAMES)
    r.add_argument("--in", dest="src", required=True, help="input image (PNG)")
    r.add_argument("--out", required=True, help="output PNG")
    r.add_argument("--size", type=_positive_int, default=None, help="output side in pixels (default: source max dimension)")
    r.add_argument("--supersample", type=int, choices=(1, 2, 4), default=1)
    r.add_argument("--bg", default="00000000", help="background RRGGBBAA")
    r.add_argument("--workers", type=_positive_int, default=1)

    g = sub.add_parser("grid", help="export a mapped lattice as CSV")
    mapping_args(g)
    g.add_argument("--direction", required=True, choices=DIRECTION_NAMES)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", required=True, help="output CSV")
    g.add_argument("--figure", default=None, help="also render the mapped grid to this image file")

    v = sub.add_parser("verify", help="measure distortion properties and check thresholds")
    mapping_args(v)
    v.add_argument("--grid", type=int, default=201)
    v.add_argument("--json", action="store_true", help="print the report as one JSON line")
    v.add_argument("--workers", type=_positive_int, default=1)
    return p


def _mapping(args) -> MappingId:
    kind = MappingKind(args.mapping)
    if kind is MappingKind.SQUELCHED_ELLIPTICAL_GRID and args.q is None:
        raise UsageError("--q is required for squelched-elliptical-grid")
    if kind is not MappingKind.SQUELCHED_ELLIPTICAL_GRID and args.q is not None:
        raise UsageError("--q only applies to squelched-elliptical-grid")
    try:
        return MappingId(kind, args.q)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _cmd_remap(args) -> int:
    mapping = _mapping(args)
    try:
        bg = parse_rgba(args.bg)
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        src = load_png(args.src)
    except (OSError, ValueError) as e:
        print(f"squaremap: cannot read {args.src}: {e}", file=sys.stderr)
        return EXIT_IO
    size = args.size or max(src.width, src.height)
    job = RemapJob(mapping, Direction(args.direction), size, args.supersample, bg)
    out = remap(src, job, workers=args.workers)
    try:
        save_png(out, args.out)
    except (OSError, ValueError) as e:
        print(f"squaremap: cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_grid(args) -> int:
    mapping = _mapping(args)
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    direction = Direction(args.direction)
    text = export_grid_csv(mapping, direction, args.n)
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        if args.figure:
            from .plotting import save_grid_figure

            save_grid_figure(mapping, direction, args.figure)
    except (OSError, ValueError) as e:
        print(f"squaremap: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_verify(args) -> int:
    mapping = _mapping(args)
    if args.grid < 11 or args.grid % 2 == 0:
        raise UsageError("--grid must be odd and at least 11")
    report = verify_report(mapping, args.grid, workers=args.workers)
    failures = report.failures()
    if args.json:
        print(report.to_json())
    else:
        for k, val in report.__dict__.items():
            print(f"{k:28s} {val}")
    for f in failures:
        print(f"FAIL: {f}", file=sys.stderr)
    return EXIT_THRESHOLD if failures else EXIT_OK


COMMANDS = {"remap": _cmd_remap, "grid": _cmd_grid, "verify": _cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage and 0 on --help
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"squaremap: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
