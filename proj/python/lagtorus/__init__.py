"""Twisted Lagrangian tori in C^2.

Curves are exchanged as JSON documents of the form
``{"log_rho": {"a0", "cos", "sin"}, "f": {"k", "cos", "sin"}}``; the helpers
below accept either the JSON text or the decoded dict.
"""

import json

from . import _core
from ._core import (
    BudgetExhausted,
    CrossCheckMismatch,
    DomainError,
    Error,
    IntegrationFailure,
    IoError,
    OrientationError,
    ParseError,
    RegularityViolation,
)

__all__ = [
    "origin_circle",
    "offset_circle",
    "radial_cosine",
    "random_star_curve",
    "points",
    "winding_number",
    "total_curvature",
    "defect",
    "analyze_stationarity",
    "classify",
    "period_analysis",
    "integrate_profile",
    "reduced_curve",
    "level_set_check",
    "find_double_points",
    "verify_pullbacks",
    "run_cli",
    "Error",
    "BudgetExhausted",
    "CrossCheckMismatch",
    "DomainError",
    "IntegrationFailure",
    "IoError",
    "OrientationError",
    "ParseError",
    "RegularityViolation",
]


def _text(curve):
    return curve if isinstance(curve, str) else json.dumps(curve)


def origin_circle(radius):
    return json.loads(_core.origin_circle(radius))


def offset_circle(center, radius):
    return json.loads(_core.offset_circle(complex(center).real, complex(center).imag, radius))


def radial_cosine(amplitude, harmonic=1):
    return json.loads(_core.radial_cosine(amplitude, harmonic))


def random_star_curve(seed):
    return json.loads(_core.random_star_curve(seed))


def points(curve, betas):
    return [complex(x, y) for x, y in _core.points(_text(curve), list(betas))]


def winding_number(curve):
    return _core.winding_number(_text(curve))


def total_curvature(curve):
    return _core.total_curvature(_text(curve))


def defect(curve, n_samples=2048):
    """Returns (c_estimate, defect)."""
    return _core.defect(_text(curve), n_samples)


def analyze_stationarity(curve, n_samples=2048):
    return json.loads(_core.analyze_stationarity(_text(curve), n_samples))


def classify(curve):
    return _core.classify(_text(curve))


def period_analysis(c, k=0):
    return json.loads(_core.period_analysis(c, k))


def integrate_profile(c, n_steps=1024, k=0):
    """Profile header plus samples as [u, R, rho_candidate, f] rows."""
    return json.loads(_core.integrate_profile(c, n_steps, k))


def reduced_curve(curve):
    return json.loads(_core.reduced_curve(_text(curve)))


def level_set_check(curve):
    return _core.level_set_check(_text(curve))


def find_double_points(curve):
    return json.loads(_core.find_double_points(_text(curve)))


def verify_pullbacks(n_trials=100, seed=20240611):
    return json.loads(_core.verify_pullbacks(n_trials, seed))


def run_cli(command, input="", output_dir="", samples=2048):
    """Runs a CLI command in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli(command, str(input), str(output_dir), samples)
