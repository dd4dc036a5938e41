"""Constants for polygauge."""

from __future__ import annotations

import sys
from enum import Enum, IntEnum
from typing import Final

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # pragma: no cover - compat for Python 3.10

    class StrEnum(str, Enum):
        """Backport of enum.StrEnum (str() and format() yield the value)."""

        __str__ = str.__str__
        __format__ = str.__format__


__all__ = [
    "DEFAULT_RADIUS",
    "DEFAULT_POINTS",
    "DEFAULT_SAMPLES",
    "DEFAULT_SEED",
    "DEFAULT_STREAMS",
    "MIN_SIDES",
    "MIN_MC_SAMPLES",
    "QUAD_TOLERANCE",
    "QUAD_MAX_DEPTH",
    "THREADS_ENV",
    "BranchKind",
    "OutputFormat",
    "Quantity",
]

# Polygon defaults
MIN_SIDES: Final = 3
DEFAULT_RADIUS: Final = 1.0

# Quadrature
QUAD_TOLERANCE: Final = 1e-10  # absolute, per integral
QUAD_MAX_DEPTH: Final = 60  # bisection levels before non-convergence is raised
ROUNDING_FLOOR: Final = 64.0  # multiples of machine epsilon accepted as converged

# Relative overshoot of arcsin/arccos arguments that is clamped instead of rejected
CLAMP_SLACK: Final = 1e-12

# Finite differences
DEFAULT_DIFF_STEP: Final = 1e-5  # in units of r

# Monte Carlo
DEFAULT_SAMPLES: Final = 1_000_000
MIN_MC_SAMPLES: Final = 10_000  # below this the statistical checks are skipped
DEFAULT_SEED: Final = 42
DEFAULT_STREAMS: Final = 16  # fixed so output does not depend on worker count
SAMPLING_BATCH: Final = 65_536
KS_BOUND_FACTOR: Final = 4.0  # sup-distance must stay below factor / sqrt(N)

# Tabulation and CLI
DEFAULT_POINTS: Final = 201
SEAM_NUDGE: Final = 1e-12  # in units of r
EVAL_DIGITS: Final = 12
OUTPUT_DIGITS: Final = 17
THREADS_ENV: Final = "POLYGAUGE_THREADS"

# Exit codes
EXIT_OK: Final = 0
EXIT_CHECK_FAILED: Final = 1
EXIT_USAGE: Final = 2


class BranchKind(IntEnum):
    """Which formula the distance function uses on a piece of [0, pi/n]."""

    QK = 0
    QK_SHIFTED = 1
    ZERO = 2


class Quantity(StrEnum):
    """Quantities the CLI can evaluate or tabulate."""

    CHORD_CDF = "F"
    DISTANCE_PDF = "g"
    DISTANCE_CDF = "G"
    MEAN_CHORD = "meanchord"
    MEAN_DISTANCE = "meandist"


class OutputFormat(StrEnum):
    """Table output formats."""

    CSV = "csv"
    JSON = "json"
