"""Tests for the Monte Carlo samplers and the KS statistic."""

import asyncio
import logging
import math
import os

import numpy as np
import pytest
from scipy import integrate

from polygauge import (
    ChordLaw,
    DistanceLaw,
    EmpiricalCdf,
    PolygaugeSamplingError,
    Point,
    RegularPolygon,
    contains,
    mean_chord,
    new_polygon,
)
from polygauge.const import KS_BOUND_FACTOR, THREADS_ENV
from polygauge.distance_law import circle_chord_cdf, circle_distance_pdf
from polygauge.models import FloatArray
from polygauge.montecarlo import (
    async_collect,
    ks_distance,
    make_rng,
    sample_chord,
    sample_chords,
    sample_pair_distance,
    sample_pair_distances,
    sample_point,
    sample_points,
    worker_limit,
)

from .conftest import ThreadCounter


def test_make_rng_is_deterministic() -> None:
    """Test equal seeds and streams give equal draws, other streams differ."""
    first = make_rng(7, 2).random(5)
    assert np.array_equal(first, make_rng(7, 2).random(5))
    assert not np.array_equal(first, make_rng(7, 3).random(5))
    assert not np.array_equal(first, make_rng(8, 2).random(5))


def test_sample_points_inside(heptagon: RegularPolygon) -> None:
    """Test every sampled point lies in the polygon."""
    points = sample_points(heptagon, 2000, make_rng(1))
    assert points.shape == (2000, 2)
    for x, y in points[:500]:
        assert contains(heptagon, Point(float(x), float(y)))
    assert np.all(np.hypot(points[:, 0], points[:, 1]) <= heptagon.r + 1e-12)


def test_sample_points_uniform(square: RegularPolygon) -> None:
    """Test the point sampler is centred and fills each half evenly."""
    count = 100_000
    points = sample_points(square, count, make_rng(3))
    upper = float(np.mean(points[:, 1] > 0))
    assert abs(upper - 0.5) < 5.0 * math.sqrt(0.25 / count)
    for column in (0, 1):
        values = points[:, column]
        error = 5.0 * float(np.std(values)) / math.sqrt(count)
        assert abs(float(np.mean(values))) < error


def test_sample_chords_in_range(pentagon: RegularPolygon) -> None:
    """Test sampled chords are positive and never exceed the longest chord."""
    chords = sample_chords(pentagon, 5000, make_rng(2))
    assert chords.shape == (5000,)
    assert np.all(chords > 0)
    assert np.all(chords <= pentagon.max_chord + 1e-12)


def test_sample_chords_mean(square: RegularPolygon) -> None:
    """Test the sampled mean chord agrees with pi A / u."""
    count = 200_000
    chords = sample_chords(square, count, make_rng(4))
    error = 5.0 * float(np.std(chords)) / math.sqrt(count)
    assert abs(float(np.mean(chords)) - mean_chord(square)) < error


def test_sample_pair_distances_in_range(triangle: RegularPolygon) -> None:
    """Test pair distances lie in [0, ell_{K+1}]."""
    distances = sample_pair_distances(triangle, 5000, make_rng(5))
    assert np.all(distances >= 0)
    assert np.all(distances <= triangle.max_chord + 1e-12)


def test_single_draws(square: RegularPolygon) -> None:
    """Test the scalar samplers return plain values."""
    rng = make_rng(6)
    assert 0.0 < sample_chord(square, rng) <= 2.0
    assert contains(square, sample_point(square, rng))
    assert 0.0 <= sample_pair_distance(square, rng) <= 2.0


def test_sampler_rejects_bad_count(square: RegularPolygon) -> None:
    """Test non-positive sample counts are rejected."""
    with pytest.raises(PolygaugeSamplingError, match="Sample count"):
        sample_chords(square, 0, make_rng())
    with pytest.raises(PolygaugeSamplingError, match="Sample count"):
        sample_points(square, -3, make_rng())


def test_ks_distance_single_sample() -> None:
    """Test the KS statistic of one sample against the uniform law."""
    emp = EmpiricalCdf.from_samples([0.5])
    assert ks_distance(emp, lambda x: np.clip(x, 0.0, 1.0)) == pytest.approx(0.5)


@pytest.mark.timeout(120)
@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 12])
async def test_chord_samples_match_chord_law(n: int) -> None:
    """Test a million sampled chords stay within the KS bound of F."""
    samples = 1_000_000
    law = ChordLaw(new_polygon(n))
    emp = await async_collect(law.poly, sample_chords, samples, seed=11)
    assert emp.n_samples == samples
    assert ks_distance(emp, law.cdf_array) < KS_BOUND_FACTOR / math.sqrt(samples)


@pytest.mark.timeout(120)
@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 12])
async def test_distance_samples_match_distance_law(n: int) -> None:
    """Test a million sampled pair distances stay within the KS bound of G."""
    samples = 1_000_000
    dlaw = DistanceLaw(ChordLaw(new_polygon(n)))
    emp = await async_collect(dlaw.poly, sample_pair_distances, samples, seed=12)
    assert ks_distance(emp, dlaw.cdf_array) < KS_BOUND_FACTOR / math.sqrt(samples)


async def test_ks_detects_wrong_law() -> None:
    """Test chord samples are rejected against the distance law."""
    samples = 10_000
    dlaw = DistanceLaw(ChordLaw(new_polygon(4)))
    emp = await async_collect(dlaw.poly, sample_chords, samples, seed=13)
    assert ks_distance(emp, dlaw.cdf_array) > KS_BOUND_FACTOR / math.sqrt(samples)


async def test_collect_independent_of_workers(pentagon: RegularPolygon) -> None:
    """Test the merged samples depend on the seed but not the thread count."""
    one = await async_collect(pentagon, sample_chords, 10_001, seed=5, workers=1)
    four = await async_collect(pentagon, sample_chords, 10_001, seed=5, workers=4)
    other = await async_collect(pentagon, sample_chords, 10_001, seed=6, workers=4)
    assert one.n_samples == 10_001
    assert np.array_equal(one.samples, four.samples)
    assert not np.array_equal(one.samples, other.samples)


async def test_collect_merges_streams_in_order(pentagon: RegularPolygon) -> None:
    """Test the merged CDF holds exactly the samples of every stream."""
    emp = await async_collect(pentagon, sample_chords, 1_000, seed=8, streams=4)
    parts = [sample_chords(pentagon, 250, make_rng(8, i)) for i in range(4)]
    assert np.array_equal(emp.samples, np.sort(np.concatenate(parts)))


async def test_collect_shares_semaphore(
    pentagon: RegularPolygon, thread_counter: ThreadCounter
) -> None:
    """Test concurrent collections never exceed the slots of a shared gate."""
    gate = asyncio.Semaphore(2)
    sampler = thread_counter.wrap(sample_pair_distances)
    results = await asyncio.gather(
        *(
            async_collect(pentagon, sampler, 800, seed=i, workers=8, semaphore=gate)
            for i in range(3)
        )
    )
    assert [emp.n_samples for emp in results] == [800, 800, 800]
    assert thread_counter.peak <= 2


async def test_collect_more_streams_than_samples(square: RegularPolygon) -> None:
    """Test empty streams are skipped."""
    emp = await async_collect(square, sample_pair_distances, 5, streams=16)
    assert emp.n_samples == 5


async def test_collect_rejects_bad_counts(square: RegularPolygon) -> None:
    """Test invalid sample and stream counts raise sampling errors."""
    with pytest.raises(PolygaugeSamplingError, match="Sample count"):
        await async_collect(square, sample_chords, 0)
    with pytest.raises(PolygaugeSamplingError, match="Stream count"):
        await async_collect(square, sample_chords, 100, streams=0)


def test_worker_limit_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test the worker cap is read from the environment."""
    monkeypatch.setenv(THREADS_ENV, "3")
    assert worker_limit() == 3
    monkeypatch.delenv(THREADS_ENV)
    assert worker_limit() == (os.cpu_count() or 1)


@pytest.mark.parametrize("raw", ["abc", "0", "-2"])
def test_worker_limit_malformed(
    monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture, raw: str
) -> None:
    """Test a malformed worker cap falls back to one thread with a warning."""
    monkeypatch.setenv(THREADS_ENV, raw)
    with caplog.at_level(logging.WARNING, logger="polygauge.montecarlo"):
        assert worker_limit() == 1
    assert THREADS_ENV in caplog.text


def disc_distance_cdf(r: float) -> tuple[FloatArray, FloatArray]:
    """Return a fine grid and the cumulative integral of the disc density."""
    grid = np.linspace(0.0, 2.0 * r, 20_001)
    cdf = integrate.cumulative_trapezoid(circle_distance_pdf(r, grid), grid, initial=0)
    return grid, cdf


def test_disc_reference_laws_match_sampling() -> None:
    """Test the disc chord and distance laws against sampled discs."""
    samples = 100_000
    r = 1.5
    bound = KS_BOUND_FACTOR / math.sqrt(samples)
    rng = make_rng(21)

    p = rng.uniform(0.0, r, samples)
    chords = EmpiricalCdf.from_samples(2.0 * np.sqrt(r * r - p * p))
    assert ks_distance(chords, lambda s: circle_chord_cdf(r, s)) < bound

    radius = r * np.sqrt(rng.random((2, samples)))
    angle = rng.uniform(0.0, 2.0 * math.pi, (2, samples))
    x, y = radius * np.cos(angle), radius * np.sin(angle)
    emp = EmpiricalCdf.from_samples(np.hypot(x[0] - x[1], y[0] - y[1]))
    grid, cdf = disc_distance_cdf(r)
    assert cdf[-1] == pytest.approx(1.0, abs=1e-6)
    assert ks_distance(emp, lambda t: np.interp(t, grid, cdf)) < bound
