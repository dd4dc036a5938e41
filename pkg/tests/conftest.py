"""Shared test fixtures for polygauge tests."""

import threading
import time
from collections.abc import Callable

import numpy as np
import pytest

from polygauge import ChordLaw, DistanceLaw, RegularPolygon, new_polygon
from polygauge.models import FloatArray
from polygauge.montecarlo import Sampler


class ThreadCounter:
    """Record the largest number of sampler calls running at once."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._active = 0
        self.peak = 0

    def wrap(self, sampler: Sampler) -> Sampler:
        """Return sampler slowed down and counted while it runs."""

        def counted(
            poly: RegularPolygon, count: int, rng: np.random.Generator
        ) -> FloatArray:
            with self._lock:
                self._active += 1
                self.peak = max(self.peak, self._active)
            try:
                time.sleep(0.01)
                return sampler(poly, count, rng)
            finally:
                with self._lock:
                    self._active -= 1

        return counted


@pytest.fixture
def triangle() -> RegularPolygon:
    """Unit equilateral triangle."""
    return new_polygon(3)


@pytest.fixture
def square() -> RegularPolygon:
    """Unit square, vertices on the axes."""
    return new_polygon(4)


@pytest.fixture
def pentagon() -> RegularPolygon:
    """Unit regular pentagon."""
    return new_polygon(5)


@pytest.fixture
def heptagon() -> RegularPolygon:
    """Unit regular heptagon."""
    return new_polygon(7)


@pytest.fixture
def make_law() -> Callable[..., DistanceLaw]:
    """Build the distance law (and through it the chord law) of an n-gon."""

    def build(n: int, r: float = 1.0) -> DistanceLaw:
        return DistanceLaw(ChordLaw(new_polygon(n, r)))

    return build


@pytest.fixture
def thread_counter() -> ThreadCounter:
    """Fresh concurrency counter for sampler calls."""
    return ThreadCounter()
