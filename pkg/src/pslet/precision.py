"""Scalar precision contexts: double (Python float) or extended (mpmath).

All core routines are written against plain arithmetic operators, so they run
unchanged on floats or ``mpmath.mpf`` values; this module only centralizes
construction and the square root.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class Precision:
    name: str
    make: Callable  # number or numeric string -> scalar
    sqrt: Callable
    eps: float      # relative resolution of the scalar type


DOUBLE = Precision("double", float, math.sqrt, sys.float_info.epsilon)


def extended(dps: int = 40) -> Precision:
    """mpmath-backed scalars with at least ``dps`` decimal digits.

    mpmath precision is a process-global setting; we only ever raise it.
    """
    import mpmath

    if mpmath.mp.dps < dps:
        mpmath.mp.dps = dps
    return Precision("extended", mpmath.mpf, mpmath.sqrt, 10.0 ** (3 - dps))


def scalar_sqrt(x):
    """Square root matching the scalar type of ``x``."""
    if isinstance(x, (int, float)):
        return math.sqrt(x)
    import mpmath

    return mpmath.sqrt(x)


def by_name(name: str) -> Precision:
    if name == "double":
        return DOUBLE
    if name == "extended":
        return extended()
    raise ValueError(f"unknown precision {name!r}")
