"""Oracle suite that cross-checks the closed-form laws."""

from __future__ import annotations

import asyncio
import logging
import math
from collections.abc import Callable, Iterable, Sequence

import numpy as np

from .chord_law import ChordLaw, cdf_chord_linear
from .const import (
    DEFAULT_RADIUS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_STREAMS,
    KS_BOUND_FACTOR,
    MIN_MC_SAMPLES,
)
from .distance_law import (
    DistanceLaw,
    mean_chord,
    mean_distance,
    normalization,
    piefke_check,
    stieltjes_mean_chord,
    triangle_pdf_closed,
)
from .exceptions import PolygaugeException
from .geometry import chord_length, new_polygon
from .models import CheckResult, Line, RegularPolygon
from .montecarlo import (
    async_collect,
    ks_distance,
    sample_chords,
    sample_pair_distances,
    worker_limit,
)
from .numerics import bracket_root, central_diff
from .profile import alpha, branch_index, d, mu_numeric, q

__all__ = ["async_run_checks", "async_run_suite", "interior_grid", "run_checks"]

_LOGGER = logging.getLogger(__name__)

Outcome = tuple[bool, str]
Check = Callable[[DistanceLaw], Outcome]

_ROUND_TRIP_TOL = 1e-9
_MIN_ROUND_TRIP_LINES = 200
_SEAM_TOL = 1e-8
_DIFF_STEP = 1e-5  # in units of r
_KEEP_OUT = 1e-2  # distance from breakpoints for difference stencils, in units of r


def interior_grid(poly: RegularPolygon, per_piece: int) -> list[float]:
    """Return points strictly inside every piece between consecutive breakpoints.

    Points keep a margin from the breakpoints so that difference stencils
    never straddle a seam or sit on a square-root cusp.
    """
    edges = poly.breakpoints
    margin = _KEEP_OUT * poly.r
    points: list[float] = []
    for lo, hi in zip(edges, edges[1:], strict=False):
        if hi - lo <= 2.0 * margin:
            continue
        points.extend(np.linspace(lo + margin, hi - margin, per_piece).tolist())
    return points


def _seams(poly: RegularPolygon) -> list[float]:
    return [p for p in poly.breakpoints if 0 < p < poly.max_chord]


def _check_endpoints(dlaw: DistanceLaw) -> Outcome:
    poly = dlaw.poly
    top = poly.max_chord
    law = dlaw.chord
    errors = [
        abs(law.cdf(0.0)),
        abs(law.cdf(top) - 1.0),
        abs(dlaw.cdf(0.0)),
        abs(dlaw.cdf(top) - 1.0),
    ]
    passed = errors[0] <= 1e-12 and errors[1] <= 1e-12 and max(errors[2:]) <= 1e-9
    return passed, f"F(0), F(L), G(0), G(L) errors {max(errors):.2e}"


def _check_continuity(dlaw: DistanceLaw) -> Outcome:
    law = dlaw.chord
    worst = 0.0
    for x in _seams(dlaw.poly):
        below = float(np.nextafter(x, 0.0))
        for f in (law.cdf, dlaw.pdf, dlaw.cdf):
            worst = max(worst, abs(f(x) - f(below)))
    return worst < _SEAM_TOL, f"largest seam jump {worst:.2e}"


def _check_quadrature(dlaw: DistanceLaw) -> Outcome:
    poly = dlaw.poly
    law = dlaw.chord
    worst = 0.0
    for s in interior_grid(poly, 5):
        k = int(branch_index(poly, s))
        worst = max(worst, abs(law.cdf(s) - (1.0 - mu_numeric(poly, k, s) / poly.u)))
    return worst < 1e-8, f"max |F - (1 - mu/u)| {worst:.2e}"


def _check_round_trip(dlaw: DistanceLaw) -> Outcome:
    poly = dlaw.poly
    lengths = np.linspace(0.0, poly.max_chord, 32)[1:-1]
    angles = np.linspace(0.0, 2.0 * math.pi, 12, endpoint=False) + 0.0567
    worst = 0.0
    checked = 0
    for s in lengths:
        k = int(branch_index(poly, s))
        for phi in angles:
            p = d(poly, k, float(s), float(phi))
            if abs(p) <= _ROUND_TRIP_TOL * poly.r:
                continue
            line = Line(abs(p), phi if p > 0 else phi + math.pi)
            worst = max(worst, abs(chord_length(poly, line) - s))
            checked += 1
    passed = worst < _ROUND_TRIP_TOL and checked >= _MIN_ROUND_TRIP_LINES
    return passed, f"{checked} lines, max length error {worst:.2e}"


def _check_alpha(dlaw: DistanceLaw) -> Outcome:
    """Locate each formula switch of the distance function by root bracketing."""
    poly = dlaw.poly
    worst = 0.0
    checked = 0
    for k in range(1, poly.K + 1):
        if k == poly.K and not poly.is_odd:
            continue  # no chord past the switch
        lo, hi = poly.ell[k], poly.ell[k + 1]
        for frac in (0.25, 0.5, 0.75):
            s = lo + frac * (hi - lo)

            def gap(psi: float, k: int = k, s: float = s) -> float:
                return q(poly, k, s, psi) - q(poly, k + 1, s, psi - poly.wedge)

            root = bracket_root(gap, 0.0, poly.wedge)
            worst = max(worst, abs(root - alpha(poly, k, s)))
            checked += 1
    return worst < 1e-9, f"{checked} switch angles, max error {worst:.2e}"


def _check_linear(dlaw: DistanceLaw) -> Outcome:
    poly = dlaw.poly
    law = dlaw.chord
    upper = poly.lam if poly.n == 3 else poly.ell[1]
    worst = max(
        abs(law.cdf(s) - cdf_chord_linear(law, s))
        for s in np.linspace(0.0, upper, 11)[1:].tolist()
    )
    return worst < 1e-12, f"max deviation from linear law {worst:.2e}"


def _check_mean_chord(dlaw: DistanceLaw) -> Outcome:
    expected = mean_chord(dlaw.poly)
    actual = stieltjes_mean_chord(dlaw.chord)
    error = abs(actual - expected) / expected
    return error < 1e-6, f"integral of s dF {actual:.10g} vs pi A/u, rel {error:.2e}"


def _check_normalization(dlaw: DistanceLaw) -> Outcome:
    total = normalization(dlaw)
    return abs(total - 1.0) < 1e-6, f"integral of g = {total:.12g}"


def _check_piefke(dlaw: DistanceLaw) -> Outcome:
    worst = 0.0
    for t in interior_grid(dlaw.poly, 4):
        g = dlaw.pdf(t)
        worst = max(worst, abs(piefke_check(dlaw, t) - g) / max(abs(g), 1e-3))
    return worst < 1e-5, f"max relative deviation {worst:.2e}"


def _check_towers(dlaw: DistanceLaw) -> Outcome:
    h = _DIFF_STEP * dlaw.poly.r
    law = dlaw.chord
    worst = 0.0
    for t in interior_grid(dlaw.poly, 3):
        star = dlaw.phi_star(t)
        pairs = (
            (central_diff(dlaw.phi_star, t, h), law.cdf(t)),
            (central_diff(dlaw.phi_ring, t, h), t * star),
            (central_diff(dlaw.cdf, t, h), dlaw.pdf(t)),
        )
        for numeric, exact in pairs:
            worst = max(worst, abs(numeric - exact) / max(abs(exact), 1.0))
    return worst < 1e-6, f"max derivative mismatch {worst:.2e}"


def _check_triangle(dlaw: DistanceLaw) -> Outcome:
    poly = dlaw.poly
    r = poly.r
    grid = np.linspace(0.0, poly.max_chord, 101)[:-1].tolist()
    worst = max(abs(dlaw.pdf(t) - triangle_pdf_closed(r, t)) * r for t in grid)
    expected = math.sqrt(3.0) * r / 20.0 * (4.0 + 3.0 * math.log(3.0))
    mean_error = abs(mean_distance(dlaw) - expected) / r
    passed = worst < 1e-10 and mean_error < 1e-9
    return passed, f"density error {worst:.2e}, mean error {mean_error:.2e}"


_ANALYTIC_CHECKS: tuple[tuple[str, Check], ...] = (
    ("endpoints", _check_endpoints),
    ("continuity", _check_continuity),
    ("quadrature", _check_quadrature),
    ("round-trip", _check_round_trip),
    ("alpha", _check_alpha),
    ("linear", _check_linear),
    ("mean-chord", _check_mean_chord),
    ("normalization", _check_normalization),
    ("piefke", _check_piefke),
    ("towers", _check_towers),
)


def _run_analytic(dlaw: DistanceLaw) -> list[CheckResult]:
    n = dlaw.poly.n
    checks = list(_ANALYTIC_CHECKS)
    if n == 3:
        checks.append(("triangle", _check_triangle))
    results = []
    for name, check in checks:
        try:
            passed, detail = check(dlaw)
        except (PolygaugeException, ArithmeticError, ValueError) as err:
            passed, detail = False, f"{type(err).__name__}: {err}"
        _LOGGER.debug("Check %s for n=%d: %s (%s)", name, n, passed, detail)
        results.append(CheckResult(name, n, passed, detail))
    return results


async def _run_monte_carlo(
    dlaw: DistanceLaw, samples: int, seed: int, gate: asyncio.Semaphore
) -> list[CheckResult]:
    n = dlaw.poly.n
    if samples < MIN_MC_SAMPLES:
        detail = f"{samples} samples below minimum {MIN_MC_SAMPLES}"
        return [
            CheckResult("mc-chord", n, True, detail, skipped=True),
            CheckResult("mc-distance", n, True, detail, skipped=True),
        ]

    bound = KS_BOUND_FACTOR / math.sqrt(samples)
    results = []
    for name, sampler, cdf in (
        ("mc-chord", sample_chords, dlaw.chord.cdf_array),
        ("mc-distance", sample_pair_distances, dlaw.cdf_array),
    ):
        try:
            emp = await async_collect(
                dlaw.poly, sampler, samples, seed, DEFAULT_STREAMS, semaphore=gate
            )
            statistic = ks_distance(emp, cdf)
            passed, detail = statistic < bound, f"sup-distance {statistic:.2e}"
        except (PolygaugeException, ArithmeticError, ValueError) as err:
            passed, detail = False, f"{type(err).__name__}: {err}"
        results.append(CheckResult(name, n, passed, f"{detail} (bound {bound:.2e})"))
    return results


def _new_gate(workers: int | None) -> asyncio.Semaphore:
    return asyncio.Semaphore(worker_limit() if workers is None else max(1, workers))


async def async_run_checks(
    n: int,
    r: float = DEFAULT_RADIUS,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int | None = None,
    semaphore: asyncio.Semaphore | None = None,
) -> list[CheckResult]:
    """Run every check for one polygon.

    Analytic checks run in a worker thread; sampling checks are skipped
    below MIN_MC_SAMPLES samples. Every thread started here holds semaphore,
    a fresh one of workers slots (default: worker_limit()) if not given.

    Raises:
        PolygaugeInvalidParameterError: If n or r is invalid
    """
    dlaw = DistanceLaw(ChordLaw(new_polygon(n, r)))
    gate = _new_gate(workers) if semaphore is None else semaphore
    async with gate:
        analytic = await asyncio.to_thread(_run_analytic, dlaw)
    return analytic + await _run_monte_carlo(dlaw, samples, seed, gate)


def run_checks(
    n: int,
    r: float = DEFAULT_RADIUS,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> list[CheckResult]:
    """Run every check for one polygon and wait for the results."""
    return asyncio.run(async_run_checks(n, r, samples, seed))


async def async_run_suite(
    n_values: Iterable[int],
    r: float = DEFAULT_RADIUS,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int | None = None,
) -> list[CheckResult]:
    """Run the checks for several polygons concurrently, ordered by n.

    All polygons share one gate, so at most workers threads (default:
    worker_limit()) run at a time across the whole suite.
    """
    ordered: Sequence[int] = sorted(set(n_values))
    gate = _new_gate(workers)
    reports = await asyncio.gather(
        *(async_run_checks(n, r, samples, seed, semaphore=gate) for n in ordered)
    )
    return [result for report in reports for result in report]
