"""Exceptions for polygauge library."""

from __future__ import annotations

__all__ = [
    "PolygaugeException",
    "PolygaugeInvalidParameterError",
    "PolygaugeQuadratureError",
    "PolygaugeSamplingError",
]


class PolygaugeException(Exception):
    """Base exception for polygauge library."""


class PolygaugeInvalidParameterError(PolygaugeException, ValueError):
    """Exception raised when an argument lies outside its admissible range."""


class PolygaugeQuadratureError(PolygaugeException, ArithmeticError):
    """Exception raised when adaptive quadrature fails to converge."""


class PolygaugeSamplingError(PolygaugeException):
    """Exception raised when a Monte Carlo request cannot be honoured."""
