"""Closed-form chord length distribution of a regular polygon."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from .const import CLAMP_SLACK, DEFAULT_DIFF_STEP
from .exceptions import PolygaugeInvalidParameterError
from .models import FloatArray, RegularPolygon
from .numerics import central_diff
from .profile import branch_index

__all__ = [
    "ChordLaw",
    "arc_ratio",
    "cdf_chord",
    "cdf_chord_linear",
    "h",
    "linear_slope",
    "pdf_chord_numeric",
    "theta",
    "thetas",
]

_LOGGER = logging.getLogger(__name__)

Thetas = tuple[float, float, float, float]


def _is_singular(poly: RegularPolygon, k: int) -> bool:
    """Return whether csc(2k pi/n) or cot(2k pi/n) blows up."""
    return (2 * k) % poly.n == 0


def thetas(poly: RegularPolygon, k: int, a: float, b: float) -> Thetas:
    """Return the four coefficients of h_k for the angle arcsin(a/s) - b.

    Args:
        poly: The polygon
        k: Side separation, 1..K+1
        a: Length parameter of the angle
        b: Offset of the angle in radians

    Returns:
        Coefficients of s, 1/s, sqrt(s^2 - a^2)/s and s arcsin(a/s)

    Raises:
        PolygaugeInvalidParameterError: If k < 1 or 2k pi/n is a multiple of pi
    """
    if k < 1 or _is_singular(poly, k):
        raise PolygaugeInvalidParameterError(
            f"Coefficient index {k} invalid (k >= 1, 2k not a multiple of {poly.n})"
        )
    x = math.pi / poly.n
    two_k = 2.0 * k * x
    csc_x = 1.0 / math.sin(x)
    cot_x = math.cos(x) / math.sin(x)
    sec_k = 1.0 / math.cos(k * x)
    csc_2k = 1.0 / math.sin(two_k)
    cot_2k = math.cos(two_k) / math.sin(two_k)
    half_a = a / (2.0 * poly.r)

    theta_1 = csc_x * (math.sin(2.0 * b) * csc_2k - 2.0 * b * cot_2k) / (4.0 * poly.r)
    theta_2 = a * (
        math.cos(b) * cot_x * sec_k - half_a * math.sin(2.0 * b) * csc_x * csc_2k
    )
    theta_3 = -(
        math.sin(b) * cot_x * sec_k + half_a * math.cos(2.0 * b) * csc_x * csc_2k
    )
    theta_4 = csc_x * cot_2k / (2.0 * poly.r)
    return theta_1, theta_2, theta_3, theta_4


def theta(poly: RegularPolygon, k: int, i: int, a: float, b: float) -> float:
    """Return the i-th coefficient (1..4) of h_k."""
    if i not in (1, 2, 3, 4):
        raise PolygaugeInvalidParameterError(f"Coefficient row {i!r} invalid (1..4)")
    return thetas(poly, k, a, b)[i - 1]


def arc_ratio(a: float, s: FloatArray) -> FloatArray:
    """Return a/s clamped to 1, rejecting a > s beyond rounding.

    Raises:
        PolygaugeInvalidParameterError: If a exceeds some s by more than rounding
    """
    ratio = a / s
    if ratio.size and ratio.max() > 1.0 + CLAMP_SLACK:
        raise PolygaugeInvalidParameterError(
            f"Length parameter {a!r} exceeds {float(s.min())!r}"
        )
    return np.minimum(ratio, 1.0)


def _h(poly: RegularPolygon, k: int, s: FloatArray, a: float, b: float) -> FloatArray:
    if k == 0:
        return np.zeros_like(s)
    t1, t2, t3, t4 = thetas(poly, k, a, b)
    ratio = arc_ratio(a, s)
    root = np.sqrt(np.maximum(1.0 - ratio * ratio, 0.0))
    value = t1 * s + t3 * root + t4 * s * np.arcsin(ratio)
    if t2 != 0.0:
        value = value + t2 / s
    return np.asarray(value, dtype=np.float64)


def h(poly: RegularPolygon, k: int, s: float, a: float, b: float) -> float:
    """Return h_k(s, a, b), the scaled integral of the distance function.

    Zero for k = 0.

    Raises:
        PolygaugeInvalidParameterError: If s <= 0 or a > s
    """
    if not s > 0:
        raise PolygaugeInvalidParameterError(f"Chord length {s!r} invalid (> 0)")
    return float(_h(poly, k, np.array([s], dtype=np.float64), a, b)[0])


def linear_slope(poly: RegularPolygon) -> float:
    """Return the constant chord density on the first branch."""
    x = math.pi / poly.n
    return ((1.0 - x / math.tan(x)) / math.sin(x) + x / math.cos(x)) / (4.0 * poly.r)


@dataclass(frozen=True)
class ChordLaw:
    """Chord length distribution F of a regular polygon.

    The angle tables are built once; every evaluation is a pure function of
    them, so instances can be shared between threads.
    """

    poly: RegularPolygon

    a1: tuple[float, ...] = field(init=False, repr=False)
    """A_1(k) = 2 r sin(k pi/n) sin((k + 1) pi/n) for k = 0..K."""

    b1: tuple[float, ...] = field(init=False, repr=False)
    """B_1(k) = k pi/n for k = 0..K."""

    a2: float = field(init=False, repr=False)
    """lambda; only used for odd n."""

    b2: float = field(init=False, repr=False)
    """(pi/2)(1 - 1/n); only used for odd n."""

    def __post_init__(self) -> None:
        """Precompute the angle tables and audit the coefficient indices."""
        poly = self.poly
        x = math.pi / poly.n
        # a1[K] / ell[K] == 1 exactly for even n
        a1 = tuple(poly.ell[k] * math.sin((k + 1) * x) for k in range(poly.K + 1))
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "b1", tuple(k * x for k in range(poly.K + 1)))
        object.__setattr__(self, "a2", poly.lam)
        object.__setattr__(self, "b2", 0.5 * math.pi * (1.0 - 1.0 / poly.n))

        used = set(range(1, poly.K + 1))
        used |= {k + 1 for k in range(poly.K + 1) if self._has_next(k)}
        assert not any(_is_singular(poly, k) for k in used), f"singular index {used}"
        _LOGGER.debug("Chord law for %r uses coefficient indices %s", poly, used)

    def _has_next(self, k: int) -> bool:
        """Return whether branch k carries an h_{k+1} term."""
        return self.poly.is_odd or k < self.poly.K

    def branch(self, k: int, s: FloatArray) -> FloatArray:
        """Return H_k(s) for positive s in branch k."""
        poly = self.poly
        wedge = poly.wedge
        value = 1.0 - _h(poly, k, s, self.a1[k], self.b1[k])
        if self._has_next(k):
            value = value + _h(poly, k + 1, s, self.a1[k], self.b1[k] + wedge)
        if poly.is_odd and k == poly.K:
            upper = s >= poly.lam
            if upper.any():
                beyond = s[upper]
                value[upper] -= _h(poly, k + 1, beyond, self.a2, self.b2 + wedge)
                value[upper] -= _h(poly, k + 1, beyond, self.a2, self.b2)
        return np.asarray(value, dtype=np.float64)

    def cdf_array(self, s: npt.ArrayLike) -> FloatArray:
        """Evaluate F at every element of s."""
        values = np.asarray(s, dtype=np.float64)
        flat = np.atleast_1d(values).ravel()
        out = np.zeros_like(flat)
        out[flat >= self.poly.max_chord] = 1.0

        inner = (flat > 0) & (flat < self.poly.max_chord)
        ks = branch_index(self.poly, flat)
        for k in np.unique(ks[inner]):
            mask = inner & (ks == k)
            out[mask] = self.branch(int(k), flat[mask])
        return out.reshape(values.shape)

    def cdf(self, s: float) -> float:
        """Return F(s); exactly 0 at s <= 0 and exactly 1 from ell_{K+1} on."""
        return float(self.cdf_array(s))


def cdf_chord(law: ChordLaw, s: float) -> float:
    """Return the probability that a random chord is no longer than s."""
    return law.cdf(s)


def cdf_chord_linear(law: ChordLaw, s: float) -> float:
    """Return F(s) from the linear law valid below the first breakpoint.

    The range is [0, lambda] for the triangle and [0, ell_1] otherwise.

    Raises:
        PolygaugeInvalidParameterError: If s is outside that range
    """
    poly = law.poly
    upper = poly.lam if poly.n == 3 else poly.ell[1]
    if not 0 <= s <= upper:
        raise PolygaugeInvalidParameterError(
            f"Chord length {s!r} outside linear range [0, {upper}]"
        )
    return linear_slope(poly) * s


def pdf_chord_numeric(law: ChordLaw, s: float, step: float | None = None) -> float:
    """Return the chord density at s by a central difference of F.

    Args:
        law: The chord law
        s: Chord length
        step: Half width of the stencil (default: 1e-5 r)

    Raises:
        PolygaugeInvalidParameterError: If step <= 0 or the stencil
            straddles a breakpoint
    """
    h_step = DEFAULT_DIFF_STEP * law.poly.r if step is None else step
    if not h_step > 0:
        raise PolygaugeInvalidParameterError(f"Step {h_step!r} invalid (> 0)")
    for point in law.poly.breakpoints:
        if s - h_step < point < s + h_step:
            raise PolygaugeInvalidParameterError(
                f"Stencil [{s - h_step}, {s + h_step}] straddles breakpoint {point}"
            )
    return central_diff(law.cdf, s, h_step)
