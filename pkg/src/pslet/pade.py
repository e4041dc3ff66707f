"""Rational ([den-degree N, num-count M+1]) resummation of truncated series.

The fit matches the Taylor expansion of  (P_0 + ... + P_M u**M) /
(1 + q_1 u + ... + q_N u**N)  to the input coefficients c_0..c_{M+N}.  The
denominator comes from the Hankel-block linear system
sum_j q_j c_{M+i-j} = -c_{M+i} (i = 1..N), solved with partial pivoting; the
numerator follows by convolution.  Series whose trailing block is zero are
polynomials already and are returned with a zero denominator, which keeps the
degenerate-but-well-posed cases (zero series, low-degree polynomials) out of
the singular-system path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import PoleAtEvaluation, SingularSystem
from .hierarchy import EnergyExpansion


@dataclass(frozen=True)
class PadeApproximant:
    num: Tuple          # P_0..P_M, powers of u = 1/lbar
    den: Tuple          # q_1..q_N; the leading 1 is implicit
    condition: float    # condition estimate of the denominator system


def fit(coeffs: Sequence, n_den: int = 4, m_num: int = 4) -> PadeApproximant:
    """Fit the [n_den, m_num+1] approximant to coeffs c_0..c_{n_den+m_num}.

    Raises SingularSystem when the Hankel block is numerically singular
    (condition estimate above 1e14); callers should fall back to the raw
    partial sum in that case.
    """
    need = n_den + m_num + 1
    if len(coeffs) < need:
        raise ValueError(f"need {need} series coefficients, got {len(coeffs)}")
    c = list(coeffs[:need])

    tail_scale = max(abs(x) for x in c[m_num + 1:])
    head_scale = max(abs(x) for x in c[:m_num + 1])
    if tail_scale <= 1e-13 * max(1.0, float(head_scale)):
        # Input is (numerically) a polynomial of degree <= m_num: exact fit.
        return PadeApproximant(num=tuple(c[:m_num + 1]),
                               den=tuple(x * 0 for x in c[:n_den]),
                               condition=1.0)

    def entry(i, j):
        idx = m_num + i - j
        return c[idx] if idx >= 0 else c[0] * 0

    rows = [[entry(i, j) for j in range(1, n_den + 1)] for i in range(1, n_den + 1)]
    rhs = [-c[m_num + i] for i in range(1, n_den + 1)]

    a_float = np.array([[float(x) for x in row] for row in rows], dtype=float)
    cond = float(np.linalg.cond(a_float))
    if not np.isfinite(cond) or cond > 1e14:
        raise SingularSystem(f"denominator system condition {cond:.3e} above 1e14")

    if all(isinstance(x, (int, float)) for x in c):
        den = list(np.linalg.solve(a_float, np.array(rhs, dtype=float)))
    else:
        import mpmath

        den = list(mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs)))

    num = []
    for i in range(m_num + 1):
        acc = c[i]
        for j in range(1, min(i, n_den) + 1):
            acc = acc + den[j - 1] * c[i - j]
        num.append(acc)
    return PadeApproximant(num=tuple(num), den=tuple(den), condition=cond)


def _horner(coeffs: Sequence, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def evaluate(pa: PadeApproximant, inv_lbar):
    """num(u)/den(u) at u = inv_lbar; raises PoleAtEvaluation near a pole."""
    num = _horner(pa.num, inv_lbar)
    den = 1 + _horner((0,) + pa.den, inv_lbar) if pa.den else 1 + inv_lbar * 0
    if abs(den) < 1e-12 * abs(num):
        raise PoleAtEvaluation(f"denominator {den} vanishes at u = {inv_lbar}")
    return num / den


def resummed_energy(exp: EnergyExpansion, pa: PadeApproximant):
    """Leading term plus the resummed correction series at u = 1/lbar."""
    return exp.lbar * exp.lbar * exp.e_minus2 + evaluate(pa, 1 / exp.lbar)


def taylor_coefficients(pa: PadeApproximant, count: int) -> list:
    """First ``count`` series coefficients of num/den (re-expansion check)."""
    n_den = len(pa.den)
    out = []
    for i in range(count):
        acc = pa.num[i] if i < len(pa.num) else 0.0
        for j in range(1, min(i, n_den) + 1):
            acc = acc - pa.den[j - 1] * out[i - j]
        out.append(acc)
    return out


def real_poles_within(pa: PadeApproximant, u_max: float) -> list:
    """Real denominator zeros in (0, u_max]; diagnostics for the pole check."""
    if not pa.den or all(float(d) == 0 for d in pa.den):
        return []
    coeffs = [1.0] + [float(d) for d in pa.den]  # ascending in u
    roots = np.roots(list(reversed(coeffs)))
    return sorted(r.real for r in roots
                  if abs(r.imag) <= 1e-10 * (1 + abs(r)) and 0 < r.real <= u_max)
