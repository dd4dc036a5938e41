"""Quadrature, differentiation and root bracketing for the oracle paths."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence

import numpy as np
from scipy import optimize

from .const import QUAD_MAX_DEPTH, QUAD_TOLERANCE, ROUNDING_FLOOR
from .exceptions import PolygaugeInvalidParameterError, PolygaugeQuadratureError
from .models import FloatArray, QuadratureResult

__all__ = ["bracket_root", "central_diff", "integrate", "integrate_split"]

_LOGGER = logging.getLogger(__name__)

_EPS = float(np.finfo(np.float64).eps)

VectorFunction = Callable[[FloatArray], FloatArray]


def _cusp_substitution(f: VectorFunction, a: float, b: float) -> VectorFunction:
    """Map [0, 1] onto [a, b] through x = a + (b - a) v^2."""
    width = b - a

    def substituted(v: FloatArray) -> FloatArray:
        return np.asarray(f(a + width * v * v) * (2.0 * width * v), dtype=np.float64)

    return substituted


def integrate(
    f: VectorFunction,
    a: float,
    b: float,
    tol: float = QUAD_TOLERANCE,
    *,
    cusp: bool = False,
    max_depth: int = QUAD_MAX_DEPTH,
) -> QuadratureResult:
    """Integrate f over [a, b] with adaptive Simpson's rule.

    Panels are refined breadth first, so f is called once per level with
    every abscissa of that level; f must map an array to an array of the
    same shape. Each accepted panel is Richardson corrected.

    Args:
        f: Vectorised integrand, smooth on (a, b)
        a: Lower bound
        b: Upper bound, b >= a
        tol: Absolute error tolerance, shared out by panel width
        cusp: Substitute x = a + (b - a) v^2 first, which absorbs
            square-root behaviour of f at a
        max_depth: Maximum number of bisections of a panel

    Returns:
        QuadratureResult with value, summed error estimate and panel count

    Raises:
        PolygaugeInvalidParameterError: If b < a or tol <= 0
        PolygaugeQuadratureError: If a panel at max_depth misses its tolerance
    """
    if not tol > 0:
        raise PolygaugeInvalidParameterError(f"Tolerance {tol!r} invalid (> 0)")
    if not b >= a:
        raise PolygaugeInvalidParameterError(f"Interval [{a}, {b}] invalid (a <= b)")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)

    g, lo, hi = (_cusp_substitution(f, a, b), 0.0, 1.0) if cusp else (f, a, b)

    left = np.array([lo])
    right = np.array([hi])
    f_left, f_mid, f_right = g(np.array([lo, 0.5 * (lo + hi), hi]))
    f_left, f_mid, f_right = np.array([f_left]), np.array([f_mid]), np.array([f_right])
    whole = (right - left) / 6.0 * (f_left + 4.0 * f_mid + f_right)
    local_tol = np.array([tol])

    value = 0.0
    error = 0.0
    panels = 0
    for depth in range(max_depth + 1):
        mid = 0.5 * (left + right)
        quarter = g(np.concatenate((0.5 * (left + mid), 0.5 * (mid + right))))
        f_lq, f_rq = np.split(quarter, 2)
        width = right - left
        s_left = width / 12.0 * (f_left + 4.0 * f_lq + f_mid)
        s_right = width / 12.0 * (f_mid + 4.0 * f_rq + f_right)
        combined = s_left + s_right
        estimate = (combined - whole) / 15.0

        floor = ROUNDING_FLOOR * _EPS * (np.abs(s_left) + np.abs(s_right))
        done = (np.abs(estimate) <= local_tol) | (np.abs(estimate) <= floor)
        value += float(np.sum(combined[done] + estimate[done]))
        error += float(np.sum(np.abs(estimate[done])))
        panels += int(np.count_nonzero(done))

        if done.all():
            _LOGGER.debug(
                "Integrated [%g, %g] in %d panels, depth %d", a, b, panels, depth
            )
            return QuadratureResult(value, error, panels)

        if depth == max_depth:
            worst = float(np.max(np.abs(estimate[~done])))
            raise PolygaugeQuadratureError(
                f"No convergence on [{a}, {b}] after {max_depth} levels "
                f"(error estimate {worst:.3g}, tolerance {tol:.3g})"
            )

        keep = ~done
        left = np.concatenate((left[keep], mid[keep]))
        right = np.concatenate((mid[keep], right[keep]))
        f_left, f_right, f_mid = (
            np.concatenate((f_left[keep], f_mid[keep])),
            np.concatenate((f_mid[keep], f_right[keep])),
            np.concatenate((f_lq[keep], f_rq[keep])),
        )
        whole = np.concatenate((s_left[keep], s_right[keep]))
        half_tol = 0.5 * local_tol[keep]
        local_tol = np.concatenate((half_tol, half_tol))

    raise AssertionError("unreachable")  # pragma: no cover


def integrate_split(
    f: VectorFunction,
    points: Sequence[float],
    tol: float = QUAD_TOLERANCE,
    *,
    cusp: bool = False,
) -> QuadratureResult:
    """Integrate f over [points[0], points[-1]] panel by panel.

    The caller lists every kink of f in points; zero-width panels are skipped.
    """
    edges = sorted(points)
    value = 0.0
    error = 0.0
    panels = 0
    for lo, hi in zip(edges, edges[1:], strict=False):
        if hi <= lo:
            continue
        part = integrate(f, lo, hi, tol, cusp=cusp)
        value += part.value
        error += part.error_estimate
        panels += part.panels
    return QuadratureResult(value, error, panels)


def central_diff(f: Callable[[float], float], x: float, h: float) -> float:
    """Return the central difference (f(x + h) - f(x - h)) / 2h.

    Raises:
        PolygaugeInvalidParameterError: If h <= 0
    """
    if not h > 0:
        raise PolygaugeInvalidParameterError(f"Step {h!r} invalid (> 0)")
    return (f(x + h) - f(x - h)) / (2.0 * h)


def bracket_root(
    f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-14
) -> float:
    """Return a root of f inside [lo, hi].

    Raises:
        PolygaugeInvalidParameterError: If f does not change sign on [lo, hi]
    """
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise PolygaugeInvalidParameterError(
            f"No sign change on [{lo}, {hi}] (f = {f_lo:.3g}, {f_hi:.3g})"
        )
    root: float = optimize.brentq(f, lo, hi, xtol=xtol)
    return root
