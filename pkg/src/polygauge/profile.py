"""Distance function of chords of a given length.

For a chord length s and a normal angle phi, the distance function gives the
signed distance from the centre to the chord of length s whose normal points
along phi. Integrating it over all directions measures the set of lines that
cut chords longer than s.
"""

from __future__ import annotations

import logging
import math
from enum import Enum, auto

import numpy as np
import numpy.typing as npt

from .const import CLAMP_SLACK, BranchKind
from .exceptions import PolygaugeInvalidParameterError
from .models import FloatArray, ProfileBranch, RegularPolygon
from .numerics import integrate_split

__all__ = [
    "alpha",
    "beta",
    "branch_at",
    "branch_index",
    "d",
    "d_array",
    "d_star",
    "d_star_array",
    "mu_numeric",
    "q",
]

_LOGGER = logging.getLogger(__name__)

_TWO_PI = 2.0 * math.pi


class _Case(Enum):
    """Piece layout of the distance function on [0, pi/n]."""

    SPLIT = auto()  # q_k, then q_{k+1} shifted
    SHIFTED_ONLY = auto()  # k = 0, q_1 shifted throughout
    EVEN_LAST = auto()  # q_K, then no chord
    ODD_LAST = auto()  # q_K, q_{K+1} shifted, gap, q_{K+1} shifted


def _clamped(value: float, what: str) -> float:
    """Clamp an arcsin/arccos argument that drifted just outside [-1, 1]."""
    if abs(value) > 1.0 + CLAMP_SLACK:
        raise PolygaugeInvalidParameterError(
            f"{what} argument {value!r} outside [-1, 1]"
        )
    return min(1.0, max(-1.0, value))


def _check_branch(poly: RegularPolygon, k: int, s: float) -> None:
    """Validate a branch index and that s lies in [ell_k, ell_{k+1}]."""
    if isinstance(k, bool) or not isinstance(k, int | np.integer):
        raise PolygaugeInvalidParameterError(f"Branch index {k!r} invalid (integer)")
    if not 0 <= k <= poly.K:
        raise PolygaugeInvalidParameterError(
            f"Branch index {k!r} invalid (0..{poly.K}) for {poly!r}"
        )
    slack = CLAMP_SLACK * poly.r
    lo, hi = poly.ell[k], poly.ell[k + 1]
    if not lo - slack <= s <= hi + slack:
        raise PolygaugeInvalidParameterError(
            f"Chord length {s!r} outside branch {k} range [{lo}, {hi}]"
        )


def branch_index(poly: RegularPolygon, s: npt.ArrayLike) -> npt.NDArray[np.intp]:
    """Return k with ell_k <= s < ell_{k+1}; s >= ell_{K+1} maps to K."""
    s_arr = np.asarray(s, dtype=np.float64)
    ks = np.searchsorted(np.asarray(poly.ell), s_arr, side="right")
    return np.clip(ks - 1, 0, poly.K)


def _q(poly: RegularPolygon, k: int, s: float, psi: FloatArray) -> FloatArray:
    if isinstance(k, bool) or not 1 <= k <= poly.K + 1 or 2 * k == poly.n:
        raise PolygaugeInvalidParameterError(
            f"q index {k!r} invalid (1..{poly.K + 1}, 2k != n) for {poly!r}"
        )
    kappa = k * math.pi / poly.n
    cos_psi = np.cos(psi)
    sin_psi = np.sin(psi)
    tilt = math.tan(kappa) * cos_psi**2 - sin_psi**2 / math.tan(kappa)
    return np.asarray(
        poly.apothem / math.cos(kappa) * cos_psi - 0.5 * s * tilt, dtype=np.float64
    )


def q(poly: RegularPolygon, k: int, s: float, psi: float) -> float:
    """Return the distance of a chord of length s joining two sides k apart.

    The sides are those whose supporting lines meet at the apex the angle psi
    is measured from.

    Raises:
        PolygaugeInvalidParameterError: If k is 0, above K + 1 or equal to n/2
    """
    return float(_q(poly, k, s, np.asarray(psi, dtype=np.float64)))


def _alpha(poly: RegularPolygon, k: int, s: float) -> float:
    if k == 0:
        return 0.0
    x = math.pi / poly.n
    ratio = poly.ell[k] * math.sin((k + 1) * x) / s
    return math.asin(_clamped(ratio, "alpha")) - k * x


def alpha(poly: RegularPolygon, k: int, s: float) -> float:
    """Return the angle at which the chord of length s reaches vertex k + 1.

    Args:
        poly: The polygon
        k: Branch index, 1..K
        s: Chord length in [ell_k, ell_{k+1}], positive

    Returns:
        Angle in [0, pi/n]

    Raises:
        PolygaugeInvalidParameterError: If k or s is out of range
    """
    if k == 0:
        raise PolygaugeInvalidParameterError("alpha is undefined for k = 0")
    _check_branch(poly, k, s)
    if not s > 0:
        raise PolygaugeInvalidParameterError(f"Chord length {s!r} invalid (> 0)")
    return _alpha(poly, k, s)


def _beta(poly: RegularPolygon, s: float) -> float:
    return math.pi / (2 * poly.n) - math.acos(_clamped(poly.lam / s, "beta"))


def beta(poly: RegularPolygon, s: float) -> float:
    """Return the half width of the chordless gap for odd n and s >= lambda.

    Raises:
        PolygaugeInvalidParameterError: If n is even or s is outside
            [lambda, ell_{K+1}]
    """
    if not poly.is_odd:
        raise PolygaugeInvalidParameterError(
            f"beta is undefined for even n ({poly!r})"
        )
    slack = CLAMP_SLACK * poly.r
    if not poly.lam - slack <= s <= poly.max_chord + slack:
        raise PolygaugeInvalidParameterError(
            f"Chord length {s!r} outside [{poly.lam}, {poly.max_chord}]"
        )
    return _beta(poly, s)


def _case(poly: RegularPolygon, k: int, s: float) -> _Case:
    if k == poly.K:
        if poly.is_odd and s >= poly.lam:
            return _Case.ODD_LAST
        if not poly.is_odd:
            return _Case.EVEN_LAST
    if k == 0:
        return _Case.SHIFTED_ONLY
    return _Case.SPLIT


def _check_psi(poly: RegularPolygon, psi: FloatArray) -> None:
    period = 2.0 * poly.wedge
    slack = CLAMP_SLACK
    if psi.size and (psi.min() < -slack or psi.max() > period + slack):
        raise PolygaugeInvalidParameterError(
            f"Angle outside [0, {period}] in d_star for {poly!r}"
        )


_Piece = tuple[float, float, BranchKind]


def _pieces(poly: RegularPolygon, k: int, s: float) -> list[_Piece]:
    """Return the (start, end, formula) pieces covering [0, pi/n] in order."""
    case = _case(poly, k, s)
    w = poly.wedge
    if case is _Case.SHIFTED_ONLY:
        return [(0.0, w, BranchKind.QK_SHIFTED)]

    a = min(max(_alpha(poly, k, s), 0.0), w)
    if case is _Case.SPLIT:
        return [(0.0, a, BranchKind.QK), (a, w, BranchKind.QK_SHIFTED)]
    if case is _Case.EVEN_LAST:
        return [(0.0, a, BranchKind.QK), (a, w, BranchKind.ZERO)]

    b = min(max(_beta(poly, s), 0.0), 0.5 * w)
    pieces: list[_Piece] = [(0.0, a, BranchKind.QK)] if k > 0 else []
    pieces += [
        (a, b, BranchKind.QK_SHIFTED),
        (b, w - b, BranchKind.ZERO),
        (w - b, w, BranchKind.QK_SHIFTED),
    ]
    return pieces


def _masks(pieces: list[_Piece], psi: FloatArray) -> list[npt.NDArray[np.bool_]]:
    """Assign every angle to the first piece whose end it does not pass.

    Piece ends are closed except for the open chordless gap, and the last
    piece takes whatever is left.
    """
    masks = [
        psi < end if kind is BranchKind.ZERO else psi <= end
        for _, end, kind in pieces[:-1]
    ]
    masks.append(np.ones_like(psi, dtype=bool))
    return masks


def _piece_values(
    poly: RegularPolygon, k: int, s: float, kind: BranchKind, psi: FloatArray
) -> FloatArray:
    if kind is BranchKind.QK:
        return _q(poly, k, s, psi)
    if kind is BranchKind.QK_SHIFTED:
        return _q(poly, k + 1, s, psi - poly.wedge)
    return np.zeros_like(psi)


def _fold(poly: RegularPolygon, psi: FloatArray) -> FloatArray:
    """Reflect angles in (pi/n, 2 pi/n] onto [0, pi/n)."""
    w = poly.wedge
    return np.where(psi > w, 2.0 * w - psi, psi)


def branch_at(poly: RegularPolygon, k: int, s: float, psi: float) -> ProfileBranch:
    """Return which formula d_star uses at psi in [0, 2 pi/n]."""
    _check_branch(poly, k, s)
    angle = np.atleast_1d(np.asarray(psi, dtype=np.float64))
    _check_psi(poly, angle)
    pieces = _pieces(poly, k, s)
    masks = _masks(pieces, _fold(poly, angle))
    kind = next(p[2] for p, m in zip(pieces, masks, strict=True) if m[0])
    if kind is BranchKind.ZERO:
        return ProfileBranch(kind, 0)
    return ProfileBranch(kind, k if kind is BranchKind.QK else k + 1)


def d_star_array(
    poly: RegularPolygon, k: int, s: float, psi: npt.ArrayLike
) -> FloatArray:
    """Evaluate the distance function of branch k over apex-relative angles.

    Angles in (pi/n, 2 pi/n] are reflected to 2 pi/n - psi first.

    Args:
        poly: The polygon
        k: Branch index, 0..K
        s: Chord length in [ell_k, ell_{k+1}]
        psi: Angles in [0, 2 pi/n]

    Returns:
        Signed distances, same shape as psi

    Raises:
        PolygaugeInvalidParameterError: If k, s or psi is out of range
    """
    _check_branch(poly, k, s)
    angles = np.asarray(psi, dtype=np.float64)
    _check_psi(poly, angles)
    folded = _fold(poly, angles)
    pieces = _pieces(poly, k, s)
    choices = [_piece_values(poly, k, s, kind, folded) for _, _, kind in pieces]
    return np.asarray(np.select(_masks(pieces, folded), choices), dtype=np.float64)


def d_star(poly: RegularPolygon, k: int, s: float, psi: float) -> float:
    """Return the distance function of branch k at one apex-relative angle."""
    return float(d_star_array(poly, k, s, psi))


def _apex_angle(poly: RegularPolygon, k: int, phi: FloatArray) -> FloatArray:
    """Map normal angles to [0, 2 pi/n) relative to the apex of sides 0 and k."""
    x = np.mod(phi - (k + 1) * poly.wedge, _TWO_PI)
    step = 2.0 * poly.wedge
    reduced = x - np.floor(poly.n * x / _TWO_PI) * step
    return np.asarray(np.clip(reduced, 0.0, step), dtype=np.float64)


def d_array(poly: RegularPolygon, k: int, s: float, phi: npt.ArrayLike) -> FloatArray:
    """Evaluate the distance function of branch k at normal angles phi.

    A negative value -p means the chord of length s lies on the line at
    distance p with normal angle phi + pi.
    """
    return d_star_array(
        poly, k, s, _apex_angle(poly, k, np.asarray(phi, dtype=np.float64))
    )


def d(poly: RegularPolygon, k: int, s: float, phi: float) -> float:
    """Return the distance function of branch k at the normal angle phi."""
    return float(d_array(poly, k, s, phi))


def mu_numeric(poly: RegularPolygon, k: int, s: float) -> float:
    """Return the measure of lines cutting chords longer than s, by quadrature.

    Each piece of d_star on [0, pi/n] is integrated with its own formula, so
    every panel sees a smooth integrand and the jumps into the chordless
    pieces never enter a Simpson stencil.

    Raises:
        PolygaugeInvalidParameterError: If k or s is out of range
        PolygaugeQuadratureError: If a panel fails to converge
    """
    _check_branch(poly, k, s)
    total = 0.0
    panels = 0
    for start, end, kind in _pieces(poly, k, s):
        if kind is BranchKind.ZERO or end <= start:
            continue
        part = integrate_split(
            lambda psi, kind=kind: _piece_values(poly, k, s, kind, psi), (start, end)
        )
        total += part.value
        panels += part.panels
    _LOGGER.debug("mu_%d(%g) for %r: %d panels", k, s, poly, panels)
    return 2.0 * poly.n * total
