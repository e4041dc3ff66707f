"""Polynomial potentials V(q) with exact derivatives of any order.

Only polynomial potentials are supported: the perturbation terms need
arbitrary-order derivatives at the expansion point, and exact differentiation
removes a noise source from the coefficient hierarchy.  Coefficients are
stored for q**k from k=0 up to the degree, odd powers included, so no parity
assumption is built in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

from .precision import Precision


@dataclass(frozen=True)
class PotentialSpec:
    """``coeffs[k]`` multiplies q**k.  Requires a nonconstant term (binding)."""

    coeffs: Tuple

    def __init__(self, coeffs):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if len(cs) < 2 or all(c == 0 for c in cs[1:]):
            raise ValueError("potential needs at least one nonzero coefficient of q**k, k >= 1")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def quartic(alpha0, alpha) -> PotentialSpec:
    """V(q) = alpha0*q**2 + alpha*q**4; rejects the all-zero potential."""
    if alpha0 == 0 and alpha == 0:
        raise ValueError("quartic potential needs alpha0 or alpha nonzero")
    zero = alpha0 * 0 + alpha * 0
    return PotentialSpec((zero, zero, alpha0, zero, alpha))


def from_terms(terms: Iterable[tuple]) -> PotentialSpec:
    """Build from (power, coefficient) pairs; repeated powers accumulate."""
    pairs = list(terms)
    if not pairs:
        raise ValueError("no potential terms given")
    size = max(int(k) for k, _ in pairs) + 1
    coeffs = [0.0] * size
    for k, c in pairs:
        k = int(k)
        if k < 0:
            raise ValueError("negative powers are not supported")
        coeffs[k] = coeffs[k] + c
    return PotentialSpec(coeffs)


def derivative_at(pot: PotentialSpec, n: int, q):
    """Exact n-th derivative of V at q; n=0 evaluates V(q).

    Orders beyond the polynomial degree return exactly zero.
    """
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n > pot.degree:
        return 0.0
    # Horner on the differentiated coefficients k!/(k-n)! * c_k.
    cs = [math.perm(k, n) * pot.coeffs[k] for k in range(n, pot.degree + 1)]
    acc = cs[-1]
    for c in reversed(cs[:-1]):
        acc = acc * q + c
    return acc


def evaluate(pot: PotentialSpec, q):
    return derivative_at(pot, 0, q)


def lifted(pot: PotentialSpec, prec: Precision) -> PotentialSpec:
    """Copy with coefficients converted to the target scalar type."""
    return PotentialSpec(tuple(prec.make(c) for c in pot.coeffs))
