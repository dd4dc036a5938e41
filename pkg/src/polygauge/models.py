"""Data models for polygauge."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt

from .const import MIN_SIDES, BranchKind
from .exceptions import PolygaugeInvalidParameterError

if TYPE_CHECKING:
    from typing_extensions import Self

__all__ = [
    "CheckResult",
    "EmpiricalCdf",
    "FloatArray",
    "Line",
    "OutputRecord",
    "Point",
    "ProfileBranch",
    "QuadratureResult",
    "RegularPolygon",
]

FloatArray = npt.NDArray[np.float64]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RegularPolygon:
    """Regular n-gon with circumradius r centred at the origin.

    Vertex i sits at angle 2*pi*i/n, so vertex 0 lies on the positive x-axis.
    All lengths are in the units of r, all angles in radians.
    """

    n: int
    """Number of sides, at least 3."""

    r: float
    """Circumradius."""

    u: float = field(init=False)
    """Perimeter 2 n r sin(pi/n)."""

    A: float = field(init=False)
    """Area (1/2) n r^2 sin(2 pi/n)."""

    K: int = field(init=False)
    """Index of the last chord-length branch, floor((n - 2) / 2)."""

    lam: float = field(init=False)
    """Odd-n threshold 2 r cos^2(pi/2n) above which some directions lose chords."""

    ell: tuple[float, ...] = field(init=False)
    """Vertex distances ell_0..ell_{K+1}, ell_k = 2 r sin(k pi/n)."""

    def __post_init__(self) -> None:
        """Validate parameters and populate the derived constants."""
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < MIN_SIDES:
            raise PolygaugeInvalidParameterError(
                f"Side count {self.n!r} invalid (integer >= {MIN_SIDES})"
            )
        if not math.isfinite(self.r) or self.r <= 0:
            raise PolygaugeInvalidParameterError(
                f"Circumradius {self.r!r} invalid (finite and > 0)"
            )

        n, r = int(self.n), float(self.r)
        big_k = (n - 2) // 2
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "u", 2.0 * n * r * math.sin(math.pi / n))
        object.__setattr__(self, "A", 0.5 * n * r * r * math.sin(_TWO_PI / n))
        object.__setattr__(self, "K", big_k)
        object.__setattr__(self, "lam", 2.0 * r * math.cos(math.pi / (2 * n)) ** 2)
        ell = tuple(2.0 * r * math.sin(k * math.pi / n) for k in range(big_k + 2))
        object.__setattr__(self, "ell", (0.0, *ell[1:]))

    @property
    def is_odd(self) -> bool:
        """Return whether the side count is odd."""
        return self.n % 2 == 1

    @property
    def wedge(self) -> float:
        """Return pi/n, the half period of the distance function."""
        return math.pi / self.n

    @property
    def apothem(self) -> float:
        """Return the distance from the centre to every side."""
        return self.r * math.cos(math.pi / self.n)

    @property
    def max_chord(self) -> float:
        """Return the longest chord length, ell_{K+1}."""
        return self.ell[self.K + 1]

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Return every abscissa where the laws switch formula, ascending.

        This is ell_0..ell_{K+1} plus lambda for odd n.
        """
        points = list(self.ell)
        if self.is_odd:
            points.append(self.lam)
        return tuple(sorted(points))

    def __repr__(self) -> str:
        """Return string representation."""
        return f"RegularPolygon(n={self.n}, r={self.r:g})"


@dataclass(frozen=True)
class Line:
    """Line {(x, y): x cos(phi) + y sin(phi) = p} in normal form."""

    p: float
    """Distance from the origin, non-negative."""

    phi: float
    """Angle of the normal, reduced to [0, 2 pi)."""

    def __post_init__(self) -> None:
        """Validate the distance and reduce the angle."""
        if not self.p >= 0:
            raise PolygaugeInvalidParameterError(
                f"Line distance {self.p!r} invalid (>= 0)"
            )
        object.__setattr__(self, "phi", float(self.phi) % _TWO_PI)


@dataclass(frozen=True)
class Point:
    """Point in the plane."""

    x: float
    y: float


@dataclass(frozen=True)
class ProfileBranch:
    """Formula of the distance function on one piece of [0, pi/n]."""

    kind: BranchKind
    """q_k, q_k shifted by -pi/n, or identically zero."""

    k: int
    """Index of the q function; 0 for the zero branch."""


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of an adaptive quadrature."""

    value: float
    error_estimate: float
    """Sum of the accepted panel error estimates, never negative."""

    panels: int
    """Number of accepted panels."""


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    """Sorted sample set standing for its empirical distribution function."""

    samples: FloatArray
    """Samples in ascending order."""

    def __post_init__(self) -> None:
        """Validate that the sample array is a non-empty ascending vector."""
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise PolygaugeInvalidParameterError(
                "Empirical CDF needs a non-empty one-dimensional sample array"
            )
        if np.any(np.diff(self.samples) < 0):
            raise PolygaugeInvalidParameterError("Empirical CDF samples not sorted")

    @classmethod
    def from_samples(cls, values: npt.ArrayLike) -> Self:
        """Build an empirical CDF from unsorted samples."""
        return cls(np.sort(np.asarray(values, dtype=np.float64).ravel()))

    @property
    def n_samples(self) -> int:
        """Return the number of samples."""
        return int(self.samples.size)

    def merge(self, other: EmpiricalCdf) -> EmpiricalCdf:
        """Return the empirical CDF of the union of both sample sets."""
        merged = np.concatenate((self.samples, other.samples))
        return EmpiricalCdf(np.sort(merged, kind="stable"))

    def __call__(self, x: npt.ArrayLike) -> FloatArray:
        """Return the fraction of samples less than or equal to x."""
        ranks = np.searchsorted(self.samples, np.asarray(x, dtype=np.float64), "right")
        return np.asarray(ranks / self.samples.size, dtype=np.float64)


@dataclass(frozen=True)
class OutputRecord:
    """One row of a tabulated law."""

    x: float
    """Abscissa, s for chord laws and t for distance laws."""

    value: float
    series: str
    """Series label, e.g. ``F`` or ``F-circle``."""

    def __post_init__(self) -> None:
        """Reject non-finite numbers."""
        if not (math.isfinite(self.x) and math.isfinite(self.value)):
            raise PolygaugeInvalidParameterError(
                f"Non-finite record ({self.x!r}, {self.value!r}) in {self.series}"
            )


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check for one polygon."""

    name: str
    n: int
    passed: bool
    detail: str = ""
    skipped: bool = False
