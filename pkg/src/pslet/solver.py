"""End-to-end single-instance pipeline: expansion point, hierarchy, series,
resummation, optional shooting cross-check, and a JSON-stable result record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import oracle, pade
from .errors import PoleAtEvaluation, SingularSystem
from .hierarchy import (EnergyExpansion, build_v_terms, energy_expansion,
                        riccati_residual, solve_hierarchy)
from .leading_order import LeadingOrderSolution, eq20_residual, solve_q0
from .potential import PotentialSpec, lifted
from .precision import by_name


@dataclass(frozen=True)
class SolveRequest:
    potential: PotentialSpec
    l: float
    n_r: int = 0                 # the exp(U) ansatz is nodeless; 0 enforced
    order: int = 8               # deepest 1/lbar power in the energy sum
    pade: bool = True
    oracle_check: bool = False
    precision: str = "double"    # "double" | "extended"
    q0_bracket: Optional[tuple] = None
    hierarchy_depth: Optional[int] = None  # default 2*(order+1)
    oracle_points: Optional[int] = None

    def __post_init__(self):
        if self.n_r != 0:
            raise ValueError("only nodeless states (n_r = 0) are supported")
        if self.order < 0:
            raise ValueError("order must be nonnegative")


@dataclass
class SolveResult:
    request: SolveRequest
    leading: LeadingOrderSolution
    series: EnergyExpansion
    e_total: float
    e_pade: Optional[float]
    e_oracle: Optional[float]
    diagnostics: dict = field(default_factory=dict)


def run_solve(req: SolveRequest) -> SolveResult:
    """Run the full pipeline for one (potential, l) instance."""
    prec = by_name(req.precision)
    pot = lifted(req.potential, prec)
    depth = req.hierarchy_depth or 2 * (req.order + 1)

    lead = solve_q0(pot, req.l, req.n_r, bracket_hint=req.q0_bracket, prec=prec)
    terms = build_v_terms(pot, lead, depth)
    hier = solve_hierarchy(terms, lead, depth)
    series = energy_expansion(hier, lead, req.order)

    flags: list[str] = []
    residual_max = 0.0
    for k in range(hier.K + 1):
        res, scale = riccati_residual(terms, hier, lead, k)
        if scale > 0:
            residual_max = max(residual_max, float(res.max_abs_coeff() / scale))

    e_pade = None
    pade_cond = None
    if req.pade:
        try:
            approx = pade.fit(series.e, 4, 4)
            pade_cond = approx.condition
            e_pade = pade.resummed_energy(series, approx)
            if pade.real_poles_within(approx, float(1 / series.lbar)):
                flags.append("PADE_POLE_IN_RANGE")
        except SingularSystem:
            flags.append("SINGULAR_PADE")
        except PoleAtEvaluation:
            flags.append("PADE_POLE")

    e_oracle = None
    if req.oracle_check:
        cfg = oracle.default_config(req.potential, float(req.l), req.n_r,
                                    n_points=req.oracle_points)
        e_oracle = oracle.solve_radial(req.potential, float(req.l), cfg)

    diagnostics = {
        "eq20_residual": float(eq20_residual(pot, lead)),
        "e_minus1_bracket": float(series.e_minus1_bracket),
        "riccati_residual_max": residual_max,
        "pade_condition": None if pade_cond is None else float(pade_cond),
        "flags": flags,
    }
    return SolveResult(request=req, leading=lead, series=series,
                       e_total=float(series.total),
                       e_pade=None if e_pade is None else float(e_pade),
                       e_oracle=e_oracle, diagnostics=diagnostics)


def result_to_dict(res: SolveResult) -> dict:
    """Stable-key-order JSON payload (floats use shortest round-trip form)."""
    req = res.request
    return {
        "request": {
            "potential": [float(c) for c in req.potential.coeffs],
            "l": float(req.l),
            "n_r": req.n_r,
            "order": req.order,
            "pade": req.pade,
            "oracle": req.oracle_check,
            "precision": req.precision,
        },
        "leading": {
            "q0": float(res.leading.q0),
            "w": float(res.leading.w),
            "beta": float(res.leading.beta),
            "lbar": float(res.leading.lbar),
            "e_minus2": float(res.leading.e_minus2),
            "leading_energy": float(res.leading.leading_energy),
        },
        "series": {
            "e": [float(x) for x in res.series.e],
            "total": float(res.series.total),
        },
        "e_total": res.e_total,
        "e_pade": res.e_pade,
        "e_oracle": res.e_oracle,
        "diagnostics": res.diagnostics,
    }
