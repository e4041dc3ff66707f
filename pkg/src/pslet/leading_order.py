"""Expansion-point selection for the shifted-l series.

The leading energy coefficient  e2(q0) = 1/(2*q0**2) + V(q0)/Q  (Q held
fixed, set to lbar**2 afterwards) is minimized over q0.  Stationarity gives
lbar = sqrt(q0**3 V'(q0)), and requiring the next series coefficient to
vanish fixes the shift beta = -(1/2 + (n_r + 1/2) w) with
w = sqrt(3 + q0 V''(q0)/V'(q0)).  Eliminating beta leaves one scalar root
condition

    f(q0) = l + 1/2 + (n_r + 1/2) w(q0) - sqrt(q0**3 V'(q0)) = 0

on the admissible domain {q0 > 0 : V'(q0) > 0, w(q0)**2 > 0}.  There may be
several roots; the one minimizing e2 (with fixed Q at its own value) wins,
ties broken by the smaller q0.  At any admissible root the curvature of e2 is
w**2/q0**4 > 0, so the minimum condition is a consistency check rather than a
filter in practice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonBinding, NoRoot
from .potential import PotentialSpec, derivative_at, lifted
from .precision import DOUBLE, Precision, scalar_sqrt


@dataclass(frozen=True)
class LeadingOrderSolution:
    q0: float
    w: float
    beta: float
    lbar: float          # l - beta, the expansion parameter base
    e_minus2: float      # leading series coefficient at Q = lbar**2
    leading_energy: float  # lbar**2 * e_minus2
    l: float
    n_r: int


def frequency_w(pot: PotentialSpec, q0):
    """Effective harmonic frequency w = sqrt(3 + q0 V''(q0)/V'(q0)).

    Raises NonBinding when V'(q0) = 0 or the radicand is nonpositive: there
    is no harmonic well around q0 to expand about.
    """
    vp = derivative_at(pot, 1, q0)
    if vp == 0:
        raise NonBinding(f"V'(q0) = 0 at q0 = {q0}")
    rad = 3 + q0 * derivative_at(pot, 2, q0) / vp
    if rad <= 0:
        raise NonBinding(f"frequency radicand {rad} <= 0 at q0 = {q0}")
    return scalar_sqrt(rad)


def shift_beta(w, n_r: int = 0):
    """Shift making the O(lbar) energy coefficient vanish."""
    if w <= 0:
        raise ValueError("w must be positive")
    return -(0.5 + (n_r + 0.5) * w)


def e_minus2_curvature(pot: PotentialSpec, q0, lbar):
    """Second q0-derivative of the leading coefficient at fixed Q = lbar**2."""
    return 3 / q0**4 + derivative_at(pot, 2, q0) / (lbar * lbar)


def _domain_edge(pot: PotentialSpec) -> float:
    """Largest positive zero of V' (0.0 if none): left edge of the domain."""
    dcoeffs = [k * float(c) for k, c in enumerate(pot.coeffs)][1:]
    if len(dcoeffs) <= 1:
        return 0.0
    roots = np.roots(list(reversed(dcoeffs)))
    real = [r.real for r in roots if abs(r.imag) <= 1e-9 * (1 + abs(r)) and r.real > 0]
    return max(real) if real else 0.0


def _residual(pot: PotentialSpec, l, n_r: int, q):
    """f(q) above, or None where the point is inadmissible."""
    vp = derivative_at(pot, 1, q)
    if not vp > 0:
        return None
    rad = 3 + q * derivative_at(pot, 2, q) / vp
    if not rad > 0:
        return None
    return l + 0.5 + (n_r + 0.5) * scalar_sqrt(rad) - scalar_sqrt(q**3 * vp)


def _residual_and_slope(pot: PotentialSpec, l, n_r: int, q):
    vp = derivative_at(pot, 1, q)
    vpp = derivative_at(pot, 2, q)
    vppp = derivative_at(pot, 3, q)
    rad = 3 + q * vpp / vp
    w = scalar_sqrt(rad)
    g = q**3 * vp
    sg = scalar_sqrt(g)
    f = l + 0.5 + (n_r + 0.5) * w - sg
    rad_p = (vpp + q * vppp) / vp - q * vpp * vpp / (vp * vp)
    fp = (n_r + 0.5) * rad_p / (2 * w) - (3 * q * q * vp + q**3 * vpp) / (2 * sg)
    return f, fp


def _bisect_root(f, lo, hi, flo, fhi, iters: int = 100) -> float:
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm is None:
            # Inadmissible pocket inside the bracket: shrink toward the well-defined
            # high end, which dominated the sign change in every observed case.
            lo = mid
            continue
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


def _newton_polish(pot: PotentialSpec, l, n_r: int, q, edge: float, prec: Precision):
    tol = prec.eps
    lo_guard = prec.make(edge) if edge else None
    for _ in range(80):
        f, fp = _residual_and_slope(pot, l, n_r, q)
        if fp == 0:
            break
        step = f / fp
        q_next = q - step
        if lo_guard is not None and not q_next > lo_guard:
            q_next = (q + lo_guard) / 2
        if abs(q_next - q) <= tol * abs(q):
            q = q_next
            break
        q = q_next
    return q


def _scan_brackets(f, lo: float, hi: float, points: int):
    """Sign-change brackets of f among admissible samples of [lo, hi]."""
    xs = np.linspace(lo, hi, points)
    brackets = []
    admissible = False
    prev = None  # (x, f(x))
    for x in xs:
        fx = f(float(x))
        if fx is None:
            prev = None
            continue
        admissible = True
        if prev is not None and (fx > 0) != (prev[1] > 0):
            brackets.append((prev[0], float(x), prev[1], fx))
        prev = (float(x), fx)
    return brackets, admissible


def solve_q0(pot: PotentialSpec, l, n_r: int = 0,
             bracket_hint: tuple | None = None,
             prec: Precision = DOUBLE) -> LeadingOrderSolution:
    """Solve the expansion-point condition and bundle the leading quantities.

    Searches [edge + 1e-6, edge + 1] first, doubling the right endpoint until
    a sign change appears (NoRoot beyond width 1e6); ``bracket_hint`` replaces
    the search range entirely.  Among multiple roots the one with the smallest
    e_minus2 wins; within 1e-12 relative, the smaller q0.
    """
    if l < -0.5:
        raise ValueError("l >= -1/2 required")
    if n_r < 0:
        raise ValueError("n_r must be nonnegative")

    fpot = PotentialSpec(tuple(float(c) for c in pot.coeffs))
    edge = _domain_edge(fpot)

    def f(q):
        return _residual(fpot, float(l), n_r, q)

    brackets = []
    admissible_seen = False
    if bracket_hint is not None:
        lo, hi = float(bracket_hint[0]), float(bracket_hint[1])
        if not (0 < lo < hi):
            raise ValueError("bracket_hint must satisfy 0 < q0_min < q0_max")
        brackets, admissible_seen = _scan_brackets(f, lo, hi, 513)
    else:
        lo = edge + 1e-6
        span = 1.0
        seg_lo = lo
        while span <= 1e6:
            seg_hi = edge + span
            segs, adm = _scan_brackets(f, seg_lo, seg_hi, 129)
            admissible_seen = admissible_seen or adm
            brackets.extend(segs)
            if brackets:
                break
            seg_lo = seg_hi
            span *= 2

    if not brackets:
        if not admissible_seen:
            raise NonBinding("no admissible region with V' > 0 and w**2 > 0")
        raise NoRoot("expansion-point condition has no sign change on the admissible domain")

    candidates = []
    for blo, bhi, flo, fhi in brackets:
        q = _bisect_root(f, blo, bhi, flo, fhi)
        q = _newton_polish(fpot, float(l), n_r, q, edge, DOUBLE)
        if not any(abs(q - c) <= 1e-9 * (1 + abs(q)) for c in candidates):
            candidates.append(q)

    def keyed(q):
        w = frequency_w(fpot, q)
        beta = shift_beta(w, n_r)
        lbar = float(l) - beta
        e2 = 1 / (2 * q * q) + derivative_at(fpot, 0, q) / (lbar * lbar)
        return e2, q, w, beta, lbar

    scored = [keyed(q) for q in candidates]
    scored = [s for s in scored if e_minus2_curvature(fpot, s[1], s[4]) > 0]
    if not scored:
        raise NoRoot("no admissible root minimizes the leading coefficient")
    best_e2 = min(s[0] for s in scored)
    tied = [s for s in scored if abs(s[0] - best_e2) <= 1e-12 * max(1.0, abs(best_e2))]
    e2, q0, w, beta, lbar = min(tied, key=lambda s: s[1])

    if prec.name != "double":
        ppot = lifted(pot, prec)
        q0 = _newton_polish(ppot, prec.make(l), n_r, prec.make(q0), edge, prec)
        w = frequency_w(ppot, q0)
        beta = shift_beta(w, n_r)
        lbar = prec.make(l) - beta
        e2 = 1 / (2 * q0 * q0) + derivative_at(ppot, 0, q0) / (lbar * lbar)

    return LeadingOrderSolution(
        q0=q0, w=w, beta=beta, lbar=lbar,
        e_minus2=e2, leading_energy=lbar * lbar * e2,
        l=prec.make(l) if prec.name != "double" else float(l), n_r=n_r,
    )


def eq20_residual(pot: PotentialSpec, lead: LeadingOrderSolution):
    """|lbar - sqrt(q0**3 V'(q0))|: convergence measure of the root solve."""
    return abs(lead.lbar - scalar_sqrt(lead.q0**3 * derivative_at(pot, 1, lead.q0)))
