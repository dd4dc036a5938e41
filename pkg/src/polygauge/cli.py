"""Command line interface for polygauge."""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import logging
import math
import sys
from collections.abc import Callable, Sequence
from contextlib import nullcontext
from typing import TextIO

import numpy as np
import numpy.typing as npt

from .chord_law import ChordLaw
from .const import (
    DEFAULT_POINTS,
    DEFAULT_RADIUS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    EVAL_DIGITS,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    OUTPUT_DIGITS,
    SEAM_NUDGE,
    OutputFormat,
    Quantity,
)
from .distance_law import (
    DistanceLaw,
    circle_chord_cdf,
    circle_distance_pdf,
    mean_chord,
    mean_distance,
)
from .exceptions import PolygaugeException, PolygaugeInvalidParameterError
from .geometry import new_polygon
from .models import CheckResult, FloatArray, OutputRecord, RegularPolygon
from .verification import async_run_suite

__all__ = ["build_parser", "main", "parse_n_range", "tabulate", "write_records"]

_LOGGER = logging.getLogger(__name__)

STDOUT = "stdout"
_TABLE_QUANTITIES = (Quantity.CHORD_CDF, Quantity.DISTANCE_PDF, Quantity.DISTANCE_CDF)
_CIRCLE_QUANTITIES = (Quantity.CHORD_CDF, Quantity.DISTANCE_PDF)

ArrayLaw = Callable[[npt.ArrayLike], FloatArray]


def parse_n_range(text: str) -> list[int]:
    """Parse ``"7"`` or an inclusive range such as ``"3..12"``."""
    lo, sep, hi = text.partition("..")
    try:
        first = int(lo)
        last = int(hi) if sep else first
    except ValueError as err:
        raise argparse.ArgumentTypeError(
            f"invalid side count {text!r}, expected N or N..M"
        ) from err
    if last < first:
        raise argparse.ArgumentTypeError(f"empty side count range {text!r}")
    return list(range(first, last + 1))


def _positive_points(text: str) -> int:
    try:
        value = int(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"invalid point count {text!r}") from err
    if value < 2:
        raise argparse.ArgumentTypeError(f"point count {value} invalid (>= 2)")
    return value


def _add_polygon_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="number of sides")
    parser.add_argument(
        "--r", type=float, default=DEFAULT_RADIUS, help="circumradius (default 1)"
    )


def _add_common_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out", default=STDOUT, help="output path, or 'stdout' (default)"
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log debug messages to stderr"
    )


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with the eval, table and verify commands."""
    parser = argparse.ArgumentParser(
        prog="polygauge",
        description="Chord length and point distance laws of regular polygons.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    evaluate = commands.add_parser("eval", help="evaluate one quantity")
    _add_polygon_args(evaluate)
    evaluate.add_argument(
        "--quantity", type=Quantity, choices=list(Quantity), required=True
    )
    evaluate.add_argument("--at", type=float, help="abscissa for F, g and G")
    _add_common_args(evaluate)

    table = commands.add_parser("table", help="tabulate a law over its support")
    _add_polygon_args(table)
    table.add_argument(
        "--quantity", type=Quantity, choices=_TABLE_QUANTITIES, required=True
    )
    table.add_argument("--points", type=_positive_points, default=DEFAULT_POINTS)
    table.add_argument(
        "--format", type=OutputFormat, choices=list(OutputFormat), default="csv"
    )
    table.add_argument(
        "--circle", action="store_true", help="add the disc law of the same r (F, g)"
    )
    _add_common_args(table)

    verify = commands.add_parser("verify", help="run the oracle suite")
    verify.add_argument(
        "--n", type=parse_n_range, required=True, help="side count N or range N..M"
    )
    verify.add_argument("--r", type=float, default=DEFAULT_RADIUS)
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    _add_common_args(verify)
    return parser


def _law_for(dlaw: DistanceLaw, quantity: Quantity) -> ArrayLaw:
    if quantity is Quantity.CHORD_CDF:
        return dlaw.chord.cdf_array
    if quantity is Quantity.DISTANCE_PDF:
        return dlaw.pdf_array
    return dlaw.cdf_array


def _grid(poly: RegularPolygon, points: int) -> FloatArray:
    """Return evenly spaced abscissae on [0, L], moved off interior seams."""
    grid = np.linspace(0.0, poly.max_chord, points)
    nudge = SEAM_NUDGE * poly.r
    for seam in poly.breakpoints[1:-1]:
        grid[np.abs(grid - seam) < nudge] = seam - nudge
    return grid


def tabulate(
    dlaw: DistanceLaw, quantity: Quantity, points: int, circle: bool = False
) -> list[OutputRecord]:
    """Tabulate F, g or G over the support, optionally with the disc law.

    Raises:
        PolygaugeInvalidParameterError: If the quantity cannot be tabulated or
            circle is requested for G
    """
    if quantity not in _TABLE_QUANTITIES:
        raise PolygaugeInvalidParameterError(f"Quantity {quantity} has no table")
    if circle and quantity not in _CIRCLE_QUANTITIES:
        raise PolygaugeInvalidParameterError(f"No disc reference for {quantity}")

    poly = dlaw.poly
    grid = _grid(poly, points)
    series: list[tuple[str, FloatArray]] = [
        (quantity.value, _law_for(dlaw, quantity)(grid))
    ]
    if circle:
        chord = quantity is Quantity.CHORD_CDF
        disc = circle_chord_cdf if chord else circle_distance_pdf
        series.append((f"{quantity.value}-circle", disc(poly.r, grid)))

    _LOGGER.debug("Tabulated %s for %r at %d points", quantity, poly, points)
    return [
        OutputRecord(float(x), float(y), label)
        for label, values in series
        for x, y in zip(grid, values, strict=True)
    ]


def _number(value: float) -> str:
    return f"{value:.{OUTPUT_DIGITS}g}"


def write_records(
    records: Sequence[OutputRecord], fmt: OutputFormat, stream: TextIO
) -> None:
    """Write records as CSV (header x,value,series) or as a JSON array."""
    if fmt is OutputFormat.CSV:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("x", "value", "series"))
        for rec in records:
            writer.writerow((_number(rec.x), _number(rec.value), rec.series))
        return

    rows = [
        f'  {{"x": {_number(rec.x)}, "value": {_number(rec.value)}, '
        f'"series": {json.dumps(rec.series)}}}'
        for rec in records
    ]
    stream.write("[\n" + ",\n".join(rows) + "\n]\n")


def _evaluate(args: argparse.Namespace) -> str:
    if args.at is not None and not math.isfinite(args.at):
        raise PolygaugeInvalidParameterError(f"Abscissa {args.at!r} not finite")
    dlaw = DistanceLaw(ChordLaw(new_polygon(args.n, args.r)))
    quantity: Quantity = args.quantity
    if quantity is Quantity.MEAN_CHORD:
        value = mean_chord(dlaw.poly)
    elif quantity is Quantity.MEAN_DISTANCE:
        value = mean_distance(dlaw)
    else:
        value = float(_law_for(dlaw, quantity)(args.at))
    return f"{value:.{EVAL_DIGITS}g}\n"


def _table(args: argparse.Namespace) -> str:
    dlaw = DistanceLaw(ChordLaw(new_polygon(args.n, args.r)))
    records = tabulate(dlaw, args.quantity, args.points, args.circle)
    buffer = io.StringIO()
    write_records(records, args.format, buffer)
    return buffer.getvalue()


def _format_result(result: CheckResult) -> str:
    status = "SKIP" if result.skipped else "PASS" if result.passed else "FAIL"
    return f"{status} n={result.n} {result.name}: {result.detail}"


def _verify(args: argparse.Namespace) -> tuple[str, bool]:
    results = asyncio.run(async_run_suite(args.n, args.r, args.samples, args.seed))
    passed = all(result.passed for result in results)
    failed = sum(not result.passed for result in results)
    lines = [_format_result(result) for result in results]
    lines.append(f"{len(results) - failed} passed, {failed} failed")
    return "\n".join(lines) + "\n", passed


def _emit(text: str, out: str) -> None:
    target = (
        nullcontext(sys.stdout)
        if out == STDOUT
        else open(out, "w", encoding="utf-8", newline="")
    )
    with target as stream:
        stream.write(text)


def _usage_error(args: argparse.Namespace) -> str:
    """Return the reason the flag combination is unusable, or an empty string."""
    if args.command == "eval":
        if args.quantity in _TABLE_QUANTITIES and args.at is None:
            return f"--at is required for {args.quantity}"
    elif args.command == "table":
        if args.circle and args.quantity not in _CIRCLE_QUANTITIES:
            return "--circle only applies to F and g"
    return ""


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line interface and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_OK if err.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    usage = _usage_error(args)
    if usage:
        print(f"polygauge {args.command}: {usage}", file=sys.stderr)
        return EXIT_USAGE

    passed = True
    try:
        if args.command == "eval":
            text = _evaluate(args)
        elif args.command == "table":
            text = _table(args)
        else:
            text, passed = _verify(args)
    except PolygaugeInvalidParameterError as err:
        print(f"polygauge {args.command}: {err}", file=sys.stderr)
        return EXIT_USAGE
    except PolygaugeException as err:
        _LOGGER.error("Command %s failed: %s", args.command, err)
        return EXIT_CHECK_FAILED

    try:
        _emit(text, args.out)
    except OSError as err:
        message = f"cannot write {args.out}: {err.strerror or err}"
        print(f"polygauge {args.command}: {message}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
