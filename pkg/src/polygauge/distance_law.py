"""Distance between two random points of a regular polygon.

The density g and distribution G are assembled from two antiderivative
towers of the chord law: phi_star(t) is the integral of F over [0, t] and
phi_ring(t) is the integral of s phi_star(s) over [0, t]. Both are prefix
sums over the branch intervals plus one partial branch.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from . import chord_law
from .chord_law import ChordLaw, arc_ratio
from .const import CLAMP_SLACK
from .exceptions import PolygaugeInvalidParameterError
from .models import FloatArray, RegularPolygon
from .numerics import integrate_split
from .profile import branch_index

__all__ = [
    "DistanceLaw",
    "cdf_distance",
    "circle_chord_cdf",
    "circle_distance_pdf",
    "h_ring",
    "h_star",
    "mean_chord",
    "mean_distance",
    "normalization",
    "pdf_distance",
    "piefke_check",
    "quadrature_cdf",
    "stieltjes_mean_chord",
    "triangle_pdf_closed",
]

_LOGGER = logging.getLogger(__name__)

_MOMENT_TOLERANCE = 1e-12


def _tower_terms(
    poly: RegularPolygon, k: int, t: FloatArray, a: float, b: float
) -> tuple[chord_law.Thetas, FloatArray, FloatArray, FloatArray] | None:
    """Return coefficients, sqrt(t^2 - a^2) and arcsin(a/t) for positive t.

    None means the term vanishes identically (k = 0).
    """
    if k == 0:
        return None
    coefficients = chord_law.thetas(poly, k, a, b)
    if a == 0.0:
        assert coefficients[1] == 0.0, "log term must vanish when a = 0"
    safe = np.where(t > 0, t, 1.0)
    ratio = arc_ratio(a, safe)
    root = safe * np.sqrt(np.maximum(1.0 - ratio * ratio, 0.0))
    return coefficients, safe, root, np.arcsin(ratio)


def _h_star(
    poly: RegularPolygon, k: int, t: FloatArray, a: float, b: float
) -> FloatArray:
    terms = _tower_terms(poly, k, t, a, b)
    if terms is None:
        return np.zeros_like(t)
    (t1, t2, t3, t4), x, root, asin = terms
    value = (
        t1 * x * x / 2.0
        + t3 * (root + a * asin)
        + t4 * (a * root + x * x * asin) / 2.0
    )
    if t2 != 0.0:
        value = value + t2 * np.log(x)
    return np.where(t > 0, value, 0.0)


def _h_ring(
    poly: RegularPolygon, k: int, t: FloatArray, a: float, b: float
) -> FloatArray:
    terms = _tower_terms(poly, k, t, a, b)
    if terms is None:
        return np.zeros_like(t)
    (t1, t2, t3, t4), x, root, asin = terms
    x2 = x * x
    value = (
        t1 * x2 * x2 / 8.0
        + t3 * (root**3 / 3.0 + a / 2.0 * (a * root + x2 * asin))
        + t4 * (5.0 * a / 3.0 * root**3 + a**3 * root + x2 * x2 * asin) / 8.0
    )
    if t2 != 0.0:
        value = value + t2 * x2 / 4.0 * (2.0 * np.log(x) - 1.0)
    return np.where(t > 0, value, 0.0)


def _check_tower_args(t: float, a: float) -> None:
    if not t >= 0:
        raise PolygaugeInvalidParameterError(f"Distance {t!r} invalid (>= 0)")
    if t > 0 and a > t * (1.0 + CLAMP_SLACK):
        raise PolygaugeInvalidParameterError(
            f"Length parameter {a!r} exceeds distance {t!r}"
        )


def h_star(poly: RegularPolygon, k: int, t: float, a: float, b: float) -> float:
    """Return the antiderivative of h_k in its length argument.

    Zero for k = 0 and for t = 0.

    Raises:
        PolygaugeInvalidParameterError: If t < 0 or a > t > 0
    """
    _check_tower_args(t, a)
    return float(_h_star(poly, k, np.array([t], dtype=np.float64), a, b)[0])


def h_ring(poly: RegularPolygon, k: int, t: float, a: float, b: float) -> float:
    """Return the antiderivative of t h_star(t) in t.

    Zero for k = 0 and for t = 0.

    Raises:
        PolygaugeInvalidParameterError: If t < 0 or a > t > 0
    """
    _check_tower_args(t, a)
    return float(_h_ring(poly, k, np.array([t], dtype=np.float64), a, b)[0])


@dataclass(frozen=True)
class DistanceLaw:
    """Distance density g and distribution G of a regular polygon.

    Branch-boundary values of both towers are computed once at construction,
    so each evaluation costs one partial branch.
    """

    chord: ChordLaw

    c_lambda: float = field(init=False, repr=False)
    """Odd-n constant that makes H_K* continuous at lambda; 0 for even n."""

    star_start: tuple[float, ...] = field(init=False, repr=False)
    """H_k*(ell_k) for k = 0..K."""

    star_prefix: tuple[float, ...] = field(init=False, repr=False)
    """phi_star(ell_k) for k = 0..K+1."""

    ring_start: tuple[float, ...] = field(init=False, repr=False)
    """H_k°(ell_k) for k = 0..K."""

    ring_prefix: tuple[float, ...] = field(init=False, repr=False)
    """phi_ring(ell_k) for k = 0..K+1."""

    def __post_init__(self) -> None:
        """Precompute the correction constant and the branch prefix sums."""
        poly = self.poly
        c_lambda = 0.0
        if poly.is_odd:
            at_lambda = np.array([poly.lam])
            k = poly.K + 1
            chord = self.chord
            c_lambda = float(
                _h_star(poly, k, at_lambda, chord.a2, chord.b2 + poly.wedge)[0]
                + _h_star(poly, k, at_lambda, chord.a2, chord.b2)[0]
            )
        object.__setattr__(self, "c_lambda", c_lambda)

        ell = poly.ell
        star_start = []
        star_prefix = [0.0]
        for k in range(poly.K + 1):
            ends = np.array([ell[k], ell[k + 1]])
            start, end = self.branch_star(k, ends)
            star_start.append(float(start))
            star_prefix.append(star_prefix[-1] + float(end - start))
        object.__setattr__(self, "star_start", tuple(star_start))
        object.__setattr__(self, "star_prefix", tuple(star_prefix))

        ring_start = tuple(
            float(self.branch_ring(k, ell[k])[0]) for k in range(poly.K + 1)
        )
        object.__setattr__(self, "ring_start", ring_start)
        ring_prefix = [0.0]
        for k in range(poly.K + 1):
            step = self._ring_partial(k, np.array([ell[k + 1]]))[0]
            ring_prefix.append(ring_prefix[-1] + float(step))
        object.__setattr__(self, "ring_prefix", tuple(ring_prefix))

        _LOGGER.debug(
            "Distance law for %r: c_lambda=%g, phi_star(L)=%g, phi_ring(L)=%g",
            poly,
            c_lambda,
            star_prefix[-1],
            ring_prefix[-1],
        )

    @property
    def poly(self) -> RegularPolygon:
        """Return the polygon."""
        return self.chord.poly

    def _check_branch_range(self, k: int, t: FloatArray) -> None:
        poly = self.poly
        if not 0 <= k <= poly.K:
            raise PolygaugeInvalidParameterError(
                f"Branch index {k!r} invalid (0..{poly.K}) for {poly!r}"
            )
        slack = CLAMP_SLACK * poly.r
        lo, hi = poly.ell[k], poly.ell[k + 1]
        if t.size and (t.min() < lo - slack or t.max() > hi + slack):
            raise PolygaugeInvalidParameterError(
                f"Distance outside branch {k} range [{lo}, {hi}]"
            )

    def branch_star(self, k: int, t: npt.ArrayLike) -> FloatArray:
        """Return H_k*(t), the antiderivative of the chord law on branch k.

        For odd n the last branch is shifted above lambda so that it stays
        continuous there.

        Raises:
            PolygaugeInvalidParameterError: If t is outside [ell_k, ell_{k+1}]
        """
        x = np.atleast_1d(np.asarray(t, dtype=np.float64))
        self._check_branch_range(k, x)
        poly, chord = self.poly, self.chord
        wedge = poly.wedge
        value = x - _h_star(poly, k, x, chord.a1[k], chord.b1[k])
        if poly.is_odd or k < poly.K:
            value = value + _h_star(poly, k + 1, x, chord.a1[k], chord.b1[k] + wedge)
        if poly.is_odd and k == poly.K:
            upper = x >= poly.lam
            if upper.any():
                y = x[upper]
                value[upper] += self.c_lambda - (
                    _h_star(poly, k + 1, y, chord.a2, chord.b2 + wedge)
                    + _h_star(poly, k + 1, y, chord.a2, chord.b2)
                )
        return np.asarray(value, dtype=np.float64)

    def branch_ring(self, k: int, t: npt.ArrayLike) -> FloatArray:
        """Return H_k°(t), the antiderivative of t H_k*(t) on branch k.

        Raises:
            PolygaugeInvalidParameterError: If t is outside [ell_k, ell_{k+1}]
        """
        x = np.atleast_1d(np.asarray(t, dtype=np.float64))
        self._check_branch_range(k, x)
        poly, chord = self.poly, self.chord
        wedge = poly.wedge
        value = x**3 / 3.0 - _h_ring(poly, k, x, chord.a1[k], chord.b1[k])
        if poly.is_odd or k < poly.K:
            value = value + _h_ring(poly, k + 1, x, chord.a1[k], chord.b1[k] + wedge)
        if poly.is_odd and k == poly.K:
            upper = x >= poly.lam
            if upper.any():
                y = x[upper]
                value[upper] += 0.5 * y * y * self.c_lambda - (
                    _h_ring(poly, k + 1, y, chord.a2, chord.b2 + wedge)
                    + _h_ring(poly, k + 1, y, chord.a2, chord.b2)
                )
        return np.asarray(value, dtype=np.float64)

    def _ring_partial(self, k: int, t: FloatArray) -> FloatArray:
        """Return the integral of s phi_star(s) over [ell_k, t]."""
        ell_k = self.poly.ell[k]
        slope = self.star_prefix[k] - self.star_start[k]
        return np.asarray(
            0.5 * (t * t - ell_k * ell_k) * slope
            + self.branch_ring(k, t)
            - self.ring_start[k],
            dtype=np.float64,
        )

    def _split(self, t: npt.ArrayLike) -> tuple[FloatArray, npt.NDArray[np.intp]]:
        x = np.atleast_1d(np.asarray(t, dtype=np.float64)).ravel()
        if x.size and (x.min() < 0 or x.max() > self.poly.max_chord):
            raise PolygaugeInvalidParameterError(
                f"Distance outside [0, {self.poly.max_chord}]"
            )
        return x, branch_index(self.poly, x)

    def phi_star_array(self, t: npt.ArrayLike) -> FloatArray:
        """Evaluate the integral of F over [0, t] for t in [0, ell_{K+1}]."""
        shape = np.shape(t)
        x, ks = self._split(t)
        out = np.empty_like(x)
        for k in np.unique(ks):
            mask = ks == k
            kk = int(k)
            out[mask] = (
                self.star_prefix[kk]
                + self.branch_star(kk, x[mask])
                - self.star_start[kk]
            )
        return out.reshape(shape)

    def phi_ring_array(self, t: npt.ArrayLike) -> FloatArray:
        """Evaluate the integral of s phi_star(s) over [0, t]."""
        shape = np.shape(t)
        x, ks = self._split(t)
        out = np.empty_like(x)
        for k in np.unique(ks):
            mask = ks == k
            kk = int(k)
            out[mask] = self.ring_prefix[kk] + self._ring_partial(kk, x[mask])
        return out.reshape(shape)

    def phi_star(self, t: float) -> float:
        """Return the integral of F over [0, t]."""
        return float(self.phi_star_array(t))

    def phi_ring(self, t: float) -> float:
        """Return the integral of s phi_star(s) over [0, t]."""
        return float(self.phi_ring_array(t))

    def pdf_array(self, t: npt.ArrayLike) -> FloatArray:
        """Evaluate g; zero outside [0, ell_{K+1})."""
        poly = self.poly
        values = np.asarray(t, dtype=np.float64)
        flat = np.atleast_1d(values).ravel()
        out = np.zeros_like(flat)
        inside = (flat >= 0) & (flat < poly.max_chord)
        x = flat[inside]
        ratio = poly.u / poly.A
        excess = self.phi_star_array(x) - x
        out[inside] = 2.0 * x / poly.A * (math.pi + ratio * excess)
        return out.reshape(values.shape)

    def cdf_array(self, t: npt.ArrayLike) -> FloatArray:
        """Evaluate G; 0 below 0 and 1 from ell_{K+1} on."""
        poly = self.poly
        values = np.asarray(t, dtype=np.float64)
        flat = np.atleast_1d(values).ravel()
        out = np.zeros_like(flat)
        out[flat >= poly.max_chord] = 1.0
        inside = (flat >= 0) & (flat < poly.max_chord)
        x = flat[inside]
        ratio = poly.u / poly.A
        out[inside] = (
            x * x * (math.pi - 2.0 * ratio * x / 3.0)
            + 2.0 * ratio * self.phi_ring_array(x)
        ) / poly.A
        return out.reshape(values.shape)

    def pdf(self, t: float) -> float:
        """Return g(t)."""
        return float(self.pdf_array(t))

    def cdf(self, t: float) -> float:
        """Return G(t)."""
        return float(self.cdf_array(t))


def pdf_distance(dlaw: DistanceLaw, t: float) -> float:
    """Return the density of the distance between two random points at t."""
    return dlaw.pdf(t)


def cdf_distance(dlaw: DistanceLaw, t: float) -> float:
    """Return the probability that two random points are at most t apart."""
    return dlaw.cdf(t)


def mean_distance(dlaw: DistanceLaw) -> float:
    """Return the mean distance between two random points by quadrature.

    Raises:
        PolygaugeQuadratureError: If a panel fails to converge
    """
    result = integrate_split(
        lambda t: t * dlaw.pdf_array(t),
        dlaw.poly.breakpoints,
        _MOMENT_TOLERANCE,
        cusp=True,
    )
    _LOGGER.debug("Mean distance for %r in %d panels", dlaw.poly, result.panels)
    return result.value


def mean_chord(poly: RegularPolygon) -> float:
    """Return the mean chord length pi A / u."""
    return math.pi * poly.A / poly.u


def triangle_pdf_closed(r: float, t: float) -> float:
    """Return the distance density of the equilateral triangle with circumradius r.

    Raises:
        PolygaugeInvalidParameterError: If r <= 0
    """
    if not (math.isfinite(r) and r > 0):
        raise PolygaugeInvalidParameterError(f"Circumradius {r!r} invalid (> 0)")
    root3 = math.sqrt(3.0)
    if not 0 <= t < root3 * r:
        return 0.0
    u = 3.0 * root3 * r
    area = 0.75 * root3 * r * r
    seam = 1.5 * r
    if t < seam:
        phi = (3.0 * root3 + 2.0 * math.pi) * t * t / (36.0 * r)
    else:
        ratio = seam / t
        phi = (
            1.5 * (t * math.sqrt(max(1.0 - ratio * ratio, 0.0)) - 0.5 * math.pi * r)
            + (1.0 / (4.0 * root3) - math.pi / 9.0) * t * t / r
            + (seam + t * t / (3.0 * r)) * math.asin(min(ratio, 1.0))
        )
    return 2.0 * t / area * (math.pi + u / area * (phi - t))


def piefke_check(dlaw: DistanceLaw, t: float) -> float:
    """Return g(t) from the tail integral of the chord law.

    The Stieltjes integral of (s - t) against F over [t, ell_{K+1}] is taken
    by parts, which only needs quadrature of F itself.

    Raises:
        PolygaugeInvalidParameterError: If t is outside (0, ell_{K+1})
        PolygaugeQuadratureError: If a panel fails to converge
    """
    poly = dlaw.poly
    top = poly.max_chord
    if not 0 < t < top:
        raise PolygaugeInvalidParameterError(f"Distance {t!r} outside (0, {top})")
    edges = [t, *(p for p in poly.breakpoints if t < p < top), top]
    tail = integrate_split(dlaw.chord.cdf_array, edges, cusp=True).value
    return 2.0 * poly.u * t / poly.A**2 * ((top - t) - tail)


def circle_chord_cdf(r: float, s: npt.ArrayLike) -> FloatArray:
    """Return the chord length distribution of the disc of radius r."""
    x = np.clip(np.asarray(s, dtype=np.float64) / (2.0 * r), 0.0, 1.0)
    return np.asarray(1.0 - np.sqrt(1.0 - x * x), dtype=np.float64)


def circle_distance_pdf(r: float, t: npt.ArrayLike) -> FloatArray:
    """Return the distance density of two random points in the disc of radius r."""
    values = np.asarray(t, dtype=np.float64)
    x = np.clip(values / (2.0 * r), 0.0, 1.0)
    lens = np.arccos(x) - x * np.sqrt(1.0 - x * x)
    density = 4.0 * values / (math.pi * r * r) * lens
    inside = (values >= 0) & (values <= 2.0 * r)
    return np.asarray(np.where(inside, density, 0.0), dtype=np.float64)


def normalization(dlaw: DistanceLaw) -> float:
    """Return the integral of g over its support by quadrature."""
    return integrate_split(dlaw.pdf_array, dlaw.poly.breakpoints, cusp=True).value


def stieltjes_mean_chord(law: ChordLaw) -> float:
    """Return the integral of s dF(s), taken by parts as L - integral of F."""
    top = law.poly.max_chord
    return top - integrate_split(law.cdf_array, law.poly.breakpoints, cusp=True).value


def quadrature_cdf(dlaw: DistanceLaw, t: float) -> float:
    """Return G(t) as the integral of g over [0, t]."""
    if t <= 0:
        return 0.0
    edges = [p for p in dlaw.poly.breakpoints if p < t] + [t]
    return integrate_split(dlaw.pdf_array, edges, cusp=True).value

