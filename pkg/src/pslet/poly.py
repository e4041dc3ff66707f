"""Dense univariate polynomial arithmetic over real coefficients.

``coeffs[m]`` multiplies x**m.  Coefficients are plain Python scalars: float
by default, ``mpmath.mpf`` in extended-precision runs; every operation is
written with ordinary arithmetic so both work.  Trailing zeros are stripped on
construction by exact comparison with 0 -- numerical noise is never silently
truncated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple


def _normalized(coeffs: Iterable) -> tuple:
    cs = list(coeffs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    return tuple(cs) if cs else (0.0,)


@dataclass(frozen=True)
class Polynomial:
    """Immutable dense polynomial; the zero polynomial stores a single 0."""

    coeffs: Tuple

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", _normalized(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def coeff(self, power: int):
        """Coefficient of x**power; 0 beyond the stored degree."""
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return 0.0

    def __call__(self, x):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return multiply(self, other)

    def scaled(self, factor) -> "Polynomial":
        return Polynomial([factor * c for c in self.coeffs])

    def odd_part(self) -> "Polynomial":
        """Keep odd-power slots as computed; zero out even slots."""
        return Polynomial([c if m % 2 else c * 0 for m, c in enumerate(self.coeffs)])

    def even_part(self) -> "Polynomial":
        return Polynomial([c * 0 if m % 2 else c for m, c in enumerate(self.coeffs)])

    def max_abs_coeff(self) -> float:
        return max(abs(c) for c in self.coeffs)


ZERO = Polynomial([0.0])


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Convolution product; degree adds unless a factor is zero."""
    if p.is_zero() or q.is_zero():
        return ZERO
    a, b = p.coeffs, q.coeffs
    out = [a[0] * b[0] * 0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return Polynomial(out)


def differentiate(p: Polynomial) -> Polynomial:
    """d/dx; the derivative of a constant is the zero polynomial."""
    if p.degree == 0:
        return ZERO
    return Polynomial([m * c for m, c in enumerate(p.coeffs)][1:])


def linear_combine(terms: Sequence[tuple]) -> Polynomial:
    """Sum of (scalar, Polynomial) pairs, normalized."""
    if not terms:
        return ZERO
    size = max(len(p.coeffs) for _, p in terms)
    out = [0.0] * size
    for s, p in terms:
        for m, c in enumerate(p.coeffs):
            out[m] = out[m] + s * c
    return Polynomial(out)
