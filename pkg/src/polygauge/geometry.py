"""Regular polygon model and the half-plane clipping chord oracle."""

from __future__ import annotations

import logging

import numpy as np
import numpy.typing as npt

from .const import DEFAULT_RADIUS
from .models import FloatArray, Line, Point, RegularPolygon

__all__ = [
    "chord_length",
    "chord_lengths",
    "contains",
    "new_polygon",
    "vertex_array",
    "vertices",
]

_LOGGER = logging.getLogger(__name__)

# Lines whose direction is this close to an edge direction are treated as parallel
_PARALLEL_EPS = 1e-15
_CONTAINS_SLACK = 1e-12


def new_polygon(n: int, r: float = DEFAULT_RADIUS) -> RegularPolygon:
    """Create the regular n-gon with circumradius r.

    Args:
        n: Number of sides (>= 3)
        r: Circumradius (> 0, default: 1)

    Returns:
        RegularPolygon with all derived constants populated

    Raises:
        PolygaugeInvalidParameterError: If n < 3 or r <= 0
    """
    poly = RegularPolygon(n, r)
    _LOGGER.debug(
        "Created %r: u=%g, A=%g, K=%d, max chord=%g",
        poly,
        poly.u,
        poly.A,
        poly.K,
        poly.max_chord,
    )
    return poly


def vertex_array(poly: RegularPolygon) -> FloatArray:
    """Return the vertices as an (n, 2) array, vertex 0 on the positive x-axis."""
    angles = 2.0 * np.pi * np.arange(poly.n) / poly.n
    return np.column_stack((poly.r * np.cos(angles), poly.r * np.sin(angles)))


def vertices(poly: RegularPolygon) -> list[Point]:
    """Return the n vertices counter-clockwise, starting on the positive x-axis."""
    return [Point(float(x), float(y)) for x, y in vertex_array(poly)]


def _edge_normal_angles(poly: RegularPolygon) -> FloatArray:
    """Return the outward normal angle (2j + 1) pi/n of every side."""
    return (2.0 * np.arange(poly.n) + 1.0) * np.pi / poly.n


def chord_lengths(
    poly: RegularPolygon, p: npt.ArrayLike, phi: npt.ArrayLike
) -> FloatArray:
    """Return chord lengths for many lines in normal form at once.

    Each line x cos(phi) + y sin(phi) = p is parametrised as
    p (cos phi, sin phi) + t (-sin phi, cos phi) and the parameter interval
    is intersected with the n closed half-planes of the polygon. Empty and
    single-point intersections give 0.

    Args:
        poly: The polygon
        p: Line distances, broadcast against phi
        phi: Normal angles in radians

    Returns:
        Array of chord lengths with the broadcast shape of p and phi
    """
    p_arr, phi_arr = np.broadcast_arrays(
        np.asarray(p, dtype=np.float64), np.asarray(phi, dtype=np.float64)
    )
    theta = _edge_normal_angles(poly)
    offset = p_arr[..., None] * np.cos(phi_arr[..., None] - theta)
    slope = np.sin(theta - phi_arr[..., None])
    slack = poly.apothem - offset

    parallel = np.abs(slope) < _PARALLEL_EPS
    with np.errstate(divide="ignore", invalid="ignore"):
        bound = slack / np.where(parallel, 1.0, slope)
    upper = np.where(~parallel & (slope > 0), bound, np.inf).min(axis=-1)
    lower = np.where(~parallel & (slope < 0), bound, -np.inf).max(axis=-1)
    blocked = (parallel & (slack < 0)).any(axis=-1)

    length = np.where(blocked, 0.0, np.clip(upper - lower, 0.0, None))
    return np.asarray(length, dtype=np.float64)


def chord_length(poly: RegularPolygon, line: Line) -> float:
    """Return the length of line intersected with the closed polygon.

    Lines missing the polygon and tangent lines touching a single point give 0.
    """
    return float(chord_lengths(poly, line.p, line.phi))


def contains(poly: RegularPolygon, pt: Point) -> bool:
    """Return whether pt lies in the closed polygon."""
    theta = _edge_normal_angles(poly)
    support = pt.x * np.cos(theta) + pt.y * np.sin(theta)
    return bool(np.all(support <= poly.apothem + _CONTAINS_SLACK * poly.r))
