"""Monte Carlo samplers and goodness-of-fit statistics."""

from __future__ import annotations

import asyncio
import functools
import logging
import math
import os
from collections.abc import Callable

import numpy as np
from scipy import stats

from .const import DEFAULT_SEED, DEFAULT_STREAMS, SAMPLING_BATCH, THREADS_ENV
from .exceptions import PolygaugeSamplingError
from .geometry import chord_lengths, vertex_array
from .models import EmpiricalCdf, FloatArray, Point, RegularPolygon

__all__ = [
    "Sampler",
    "async_collect",
    "ks_distance",
    "make_rng",
    "sample_chord",
    "sample_chords",
    "sample_pair_distance",
    "sample_pair_distances",
    "sample_point",
    "sample_points",
    "worker_limit",
]

_LOGGER = logging.getLogger(__name__)

Sampler = Callable[[RegularPolygon, int, np.random.Generator], FloatArray]


def make_rng(seed: int = DEFAULT_SEED, stream: int = 0) -> np.random.Generator:
    """Return the generator of one independent stream derived from seed."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def _check_count(count: int) -> None:
    if count <= 0:
        raise PolygaugeSamplingError(f"Sample count {count!r} invalid (> 0)")


def sample_chords(
    poly: RegularPolygon, count: int, rng: np.random.Generator
) -> FloatArray:
    """Draw chord lengths of random lines under the invariant line measure.

    Lines x cos(phi) + y sin(phi) = p are drawn with phi uniform on
    [0, 2 pi) and p uniform on [0, r]; lines that miss the polygon are
    rejected. Since r bounds the support distance in every direction this is
    exact for the measure dp dphi restricted to lines meeting the polygon.

    Raises:
        PolygaugeSamplingError: If count <= 0
    """
    _check_count(count)
    out = np.empty(count, dtype=np.float64)
    filled = 0
    drawn = 0
    while filled < count:
        p = rng.uniform(0.0, poly.r, SAMPLING_BATCH)
        phi = rng.uniform(0.0, 2.0 * math.pi, SAMPLING_BATCH)
        lengths = chord_lengths(poly, p, phi)
        accepted = lengths[lengths > 0]
        take = min(accepted.size, count - filled)
        out[filled : filled + take] = accepted[:take]
        filled += take
        drawn += SAMPLING_BATCH
    _LOGGER.debug(
        "Drew %d chords for %r, acceptance about %.4f", count, poly, count / drawn
    )
    return out


def sample_chord(poly: RegularPolygon, rng: np.random.Generator) -> float:
    """Draw one chord length under the invariant line measure."""
    return float(sample_chords(poly, 1, rng)[0])


def sample_points(
    poly: RegularPolygon, count: int, rng: np.random.Generator
) -> FloatArray:
    """Draw uniform points of the polygon as a (count, 2) array.

    A centre-to-side triangle is picked uniformly and a point is placed in it
    with the square-root rule.

    Raises:
        PolygaugeSamplingError: If count <= 0
    """
    _check_count(count)
    corners = vertex_array(poly)
    fan = rng.integers(0, poly.n, count)
    u1, u2 = rng.random((2, count))
    radial = np.sqrt(u1)
    first = corners[fan]
    second = corners[(fan + 1) % poly.n]
    return (radial * (1.0 - u2))[:, None] * first + (radial * u2)[:, None] * second


def sample_point(poly: RegularPolygon, rng: np.random.Generator) -> Point:
    """Draw one uniform point of the polygon."""
    x, y = sample_points(poly, 1, rng)[0]
    return Point(float(x), float(y))


def sample_pair_distances(
    poly: RegularPolygon, count: int, rng: np.random.Generator
) -> FloatArray:
    """Draw distances between pairs of independent uniform points."""
    first = sample_points(poly, count, rng)
    second = sample_points(poly, count, rng)
    diff = first - second
    return np.asarray(np.hypot(diff[:, 0], diff[:, 1]), dtype=np.float64)


def sample_pair_distance(poly: RegularPolygon, rng: np.random.Generator) -> float:
    """Draw one distance between two independent uniform points."""
    return float(sample_pair_distances(poly, 1, rng)[0])


def ks_distance(
    emp: EmpiricalCdf, analytic: Callable[[FloatArray], FloatArray]
) -> float:
    """Return the sup-distance between an empirical CDF and a continuous CDF.

    Args:
        emp: Empirical CDF
        analytic: Vectorised reference CDF

    Returns:
        Kolmogorov-Smirnov statistic
    """
    result = stats.kstest(emp.samples, analytic, method="asymp")
    return float(result.statistic)


def worker_limit() -> int:
    """Return the worker cap from POLYGAUGE_THREADS.

    Unset means the CPU count; a malformed value falls back to 1.
    """
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        _LOGGER.warning("Ignoring %s=%r, expected a positive integer", THREADS_ENV, raw)
        return 1
    return value


async def async_collect(
    poly: RegularPolygon,
    sampler: Sampler,
    samples: int,
    seed: int = DEFAULT_SEED,
    streams: int = DEFAULT_STREAMS,
    workers: int | None = None,
    semaphore: asyncio.Semaphore | None = None,
) -> EmpiricalCdf:
    """Collect samples from independent streams in worker threads.

    Stream i draws from make_rng(seed, i), and the per-stream empirical CDFs
    are merged in index order, so the result depends only on seed, samples
    and streams.

    Args:
        poly: The polygon
        sampler: Batch sampler such as sample_chords
        samples: Total number of samples
        seed: Root seed
        streams: Number of streams the samples are split over
        workers: Concurrent threads (default: worker_limit()), ignored when
            semaphore is given
        semaphore: Gate shared with other callers; every stream holds it
            while its thread runs

    Returns:
        Empirical CDF of all samples

    Raises:
        PolygaugeSamplingError: If samples or streams is not positive
    """
    _check_count(samples)
    if streams <= 0:
        raise PolygaugeSamplingError(f"Stream count {streams!r} invalid (> 0)")
    limit = worker_limit() if workers is None else max(1, workers)
    gate = asyncio.Semaphore(limit) if semaphore is None else semaphore
    base, extra = divmod(samples, streams)
    counts = [base + (1 if i < extra else 0) for i in range(streams)]

    async def run_stream(index: int, count: int) -> EmpiricalCdf:
        async with gate:
            rng = make_rng(seed, index)
            values = await asyncio.to_thread(sampler, poly, count, rng)
        _LOGGER.debug("Stream %d produced %d samples for %r", index, count, poly)
        return EmpiricalCdf.from_samples(values)

    parts = await asyncio.gather(
        *(run_stream(i, c) for i, c in enumerate(counts) if c > 0)
    )
    return functools.reduce(EmpiricalCdf.merge, parts)
