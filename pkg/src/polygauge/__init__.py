"""Exact chord length and point distance laws of regular polygons."""

from __future__ import annotations

import logging
from importlib.metadata import version

from .chord_law import ChordLaw, cdf_chord, cdf_chord_linear, h, pdf_chord_numeric
from .const import (
    DEFAULT_POINTS,
    DEFAULT_RADIUS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_STREAMS,
    MIN_MC_SAMPLES,
    MIN_SIDES,
    BranchKind,
    OutputFormat,
    Quantity,
)
from .distance_law import (
    DistanceLaw,
    cdf_distance,
    mean_chord,
    mean_distance,
    pdf_distance,
    piefke_check,
    triangle_pdf_closed,
)
from .exceptions import (
    PolygaugeException,
    PolygaugeInvalidParameterError,
    PolygaugeQuadratureError,
    PolygaugeSamplingError,
)
from .geometry import chord_length, contains, new_polygon, vertices
from .models import (
    CheckResult,
    EmpiricalCdf,
    Line,
    OutputRecord,
    Point,
    ProfileBranch,
    QuadratureResult,
    RegularPolygon,
)
from .profile import alpha, beta, d, d_star, mu_numeric, q
from .verification import async_run_checks, async_run_suite, run_checks

__version__ = version("polygauge")

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "ChordLaw",
    "DistanceLaw",
    "RegularPolygon",
    "Line",
    "Point",
    "ProfileBranch",
    "QuadratureResult",
    "EmpiricalCdf",
    "OutputRecord",
    "CheckResult",
    "PolygaugeException",
    "PolygaugeInvalidParameterError",
    "PolygaugeQuadratureError",
    "PolygaugeSamplingError",
    "new_polygon",
    "vertices",
    "chord_length",
    "contains",
    "q",
    "alpha",
    "beta",
    "d",
    "d_star",
    "mu_numeric",
    "h",
    "cdf_chord",
    "cdf_chord_linear",
    "pdf_chord_numeric",
    "pdf_distance",
    "cdf_distance",
    "mean_chord",
    "mean_distance",
    "piefke_check",
    "triangle_pdf_closed",
    "run_checks",
    "async_run_checks",
    "async_run_suite",
    "DEFAULT_POINTS",
    "DEFAULT_RADIUS",
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "DEFAULT_STREAMS",
    "MIN_MC_SAMPLES",
    "MIN_SIDES",
    "BranchKind",
    "OutputFormat",
    "Quantity",
]
