"""Shared argument validation and error types."""

from __future__ import annotations

import math


#: Seed used by the CLI when none is given, so bare invocations reproduce.
DEFAULT_SEED = 123456789


class ParameterError(ValueError):
    """An argument lies outside its mathematical domain."""


class IterationCapError(RuntimeError):
    """The Poisson-point loop exceeded its iteration cap.

    Usually means the radial measure's generalized inverse is bounded away
    from zero, so the componentwise-maximum recursion can never stop.
    """


def validate_dimension(d) -> int:
    """Return ``d`` as an int, requiring an integral value >= 2."""
    if isinstance(d, bool) or int(d) != d:
        raise ParameterError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 2:
        raise ParameterError(f"dimension must be >= 2, got {d}")
    return d


def validate_power(p) -> float:
    """Validate the norm exponent ``p >= 1`` and return theta = 1/p."""
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise ParameterError(f"norm exponent must be a finite real >= 1, got {p}")
    return 1.0 / p


def validate_count(n, name: str = "sample count") -> int:
    """Return ``n`` as an int, requiring an integral value >= 1."""
    if isinstance(n, bool) or int(n) != n:
        raise ParameterError(f"{name} must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ParameterError(f"{name} must be >= 1, got {n}")
    return n
