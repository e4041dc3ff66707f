"""Reproduction of the three published benchmark tables.

Reference values are stored as the strings actually printed in the source
tables, so "matches to all printed digits" has an exact meaning: agreement
within one unit of the last printed digit.

Conventions:

* Tables 1 and 2 are eigenvalues of  -u''/2 + [l(l+1)/(2q**2) + V] u = E u
  directly.
* Table 3 (double well, depth a) quotes energies in the m = 1/2 convention
  H = -d^2/dq^2 - a q^2 + q^4, which is exactly twice our reduced
  Hamiltonian with V = -(a/2) q^2 + (1/2) q^4; computed values are doubled
  before comparison.  (Cross-checked against the shooting solver and a
  harmonic-plus-anharmonic estimate of the deep wells.)
* Two Table 3 rows (a = 10 and a = 100) carry internal print inconsistencies
  between the comparison column and the series columns; they are flagged
  DISPUTED and judged by agreement between the resummed energy and the
  shooting solver instead of by printed digits.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import oracle
from .errors import PsletError
from .potential import quartic
from .precision import extended
from .solver import SolveRequest, run_solve

# (l, reference phase-integral, series sum, resummed, exact-numerical)
T1_REFS = [
    (0, "2.32483", "2.32440", "2.32441", "2.32441"),
    (1, "4.19026", "4.19017", "4.19017", "4.19017"),
    (2, "6.24280", "6.24278", "6.24278", "6.24278"),
    (5, "13.2644599", "13.2644588", "13.2644588", "13.2644588"),
    (10, "27.092492362", "27.092492304", "27.092492304", "27.092492305"),
    (50, "187.529708014021", "187.5297080140025", "187.5297080140025",
     "187.529708014003"),
]

# (alpha, series sum, resummed, reference open-perturbation, exact)
T2_REFS = [
    ("0.002", "1.50741940", "1.50741940", "1.5074194", "1.50741939"),
    ("0.006", "1.52180570", "1.52180570", "1.5218057", "1.52180565"),
    ("0.01", "1.53564844", "1.53564846", "1.5356483", "1.53564828"),
    ("0.05", "1.653439", "1.653439", "1.653441", "1.65343601"),
    ("0.1", "1.769512", "1.769625", "1.769529", "1.76950264"),
    ("0.3", "2.094678", "2.094640", "2.094795", "2.09464199"),
    ("0.5", "2.324401", "2.324407", "2.324661", "2.32440635"),
    ("0.7", "2.50916", "2.50923", "2.50956", "2.50922810"),
    ("1", "2.73773", "2.73791", "2.73832", "2.73789227"),
    ("2", "3.29248", "3.29294", "3.29350", "3.29286782"),
    ("50", "8.91321", "8.91661", "8.91741", "8.91509636"),
    ("200", "14.05617", "14.06253", "14.06296", "14.0592268"),
    ("1000", "23.96693", "23.97893", "23.97863", "23.9722061"),
    ("8000", "47.88019", "47.89095", "47.90366", "47.8907687"),
    ("20000", "64.97232", "65.00664", "65.00418", "64.9866757"),
]

# (a, reference variational, series sum, resummed)
T3_REFS = [
    (1, "2.8345", "2.8353", "2.8344"),
    (5, "-3.25068", "-3.25085", "-3.25084"),
    (10, "-20.63355", "-25.63369", "-20.63350"),
    (15, "-50.841387", "-50.84142", "-50.84142"),
    (25, "-149.219456", "-149.219454", "-149.219454"),
    (50, "-615.0200909", "-615.0200910", "-615.0200910"),
    (100, "-2845.86788034", "-2485.867880337", "-2485.867880337"),
]

DISPUTED_T3 = {10, 100}

# Rows whose printed precision exceeds what the double pipeline can carry.
_EXTENDED_ROWS = {("t1", 50), ("t3", 100)}


@dataclass
class TableRow:
    table: str
    index: int
    params: dict
    e_pslet: Optional[float] = None
    e_pade: Optional[float] = None
    e_oracle: Optional[float] = None
    refs: dict = field(default_factory=dict)
    deviations: dict = field(default_factory=dict)
    flag: str = "ok"
    passed: bool = False
    precision: str = "double"
    elapsed: float = 0.0


def printed_unit(ref: str) -> float:
    """One unit in the last printed digit of a decimal string."""
    s = ref.strip().lstrip("+-")
    if "." in s:
        return 10.0 ** -len(s.split(".")[1])
    return 1.0


def matches_printed(value: float, ref: str) -> bool:
    return abs(value - float(ref)) <= printed_unit(ref) * (1 + 1e-9)


def sig_unit(value: float, digits: int) -> float:
    """One unit in the ``digits``-th significant digit of ``value``."""
    if value == 0:
        return 10.0 ** (1 - digits)
    return 10.0 ** (math.floor(math.log10(abs(value))) - digits + 1)


def _row_t1(i: int) -> TableRow:
    l, pim, pslet, pd, exact = T1_REFS[i]
    prec = "extended" if ("t1", l) in _EXTENDED_ROWS else "double"
    row = TableRow("t1", i, {"l": l}, precision=prec,
                   refs={"ref_pim": pim, "ref_pslet": pslet,
                         "ref_pade": pd, "ref_exact": exact})
    t0 = time.perf_counter()
    try:
        res = run_solve(SolveRequest(potential=quartic(0.5, 0.5), l=float(l),
                                     pade=True, oracle_check=True, precision=prec))
    except PsletError as exc:
        row.flag = exc.code
        row.elapsed = time.perf_counter() - t0
        return row
    row.elapsed = time.perf_counter() - t0
    row.e_pslet, row.e_pade, row.e_oracle = res.e_total, res.e_pade, res.e_oracle
    row.deviations = {
        "dev_pslet": abs(res.e_total - float(pslet)),
        "dev_pade": abs(res.e_pade - float(pd)),
        "dev_oracle": abs(res.e_oracle - float(exact)),
    }
    row.passed = (matches_printed(res.e_total, pslet)
                  and matches_printed(res.e_pade, pd)
                  and matches_printed(res.e_oracle, exact))
    return row


def _row_t2(i: int) -> TableRow:
    alpha, pslet, pd, bb, exact = T2_REFS[i]
    row = TableRow("t2", i, {"alpha": alpha},
                   refs={"ref_pslet": pslet, "ref_pade": pd,
                         "ref_bb": bb, "ref_exact": exact})
    t0 = time.perf_counter()
    try:
        res = run_solve(SolveRequest(potential=quartic(0.5, float(alpha)), l=0.0,
                                     pade=True, oracle_check=True))
    except PsletError as exc:
        row.flag = exc.code
        row.elapsed = time.perf_counter() - t0
        return row
    row.elapsed = time.perf_counter() - t0
    row.e_pslet, row.e_pade, row.e_oracle = res.e_total, res.e_pade, res.e_oracle
    row.deviations = {
        "dev_pslet": abs(res.e_total - float(pslet)),
        "dev_pade": abs(res.e_pade - float(pd)),
        "dev_oracle": abs(res.e_oracle - float(exact)),
    }
    row.passed = (matches_printed(res.e_total, pslet)
                  and matches_printed(res.e_pade, pd)
                  and matches_printed(res.e_oracle, exact))
    return row


def _row_t3(i: int) -> TableRow:
    a, pvm, pslet, pd = T3_REFS[i]
    disputed = a in DISPUTED_T3
    prec = "extended" if ("t3", a) in _EXTENDED_ROWS else "double"
    row = TableRow("t3", i, {"a": a}, precision=prec,
                   refs={"ref_pvm": pvm, "ref_pslet": pslet, "ref_pade": pd},
                   flag="DISPUTED" if disputed else "ok")
    t0 = time.perf_counter()
    try:
        res = run_solve(SolveRequest(potential=quartic(-a / 2.0, 0.5), l=0.0,
                                     pade=True, oracle_check=True, precision=prec))
    except PsletError as exc:
        row.flag = exc.code
        row.elapsed = time.perf_counter() - t0
        return row
    row.elapsed = time.perf_counter() - t0
    # Published values use H = -d^2 - a q^2 + q^4: twice the reduced problem.
    row.e_pslet = 2.0 * res.e_total
    row.e_pade = 2.0 * res.e_pade
    row.e_oracle = 2.0 * res.e_oracle
    row.deviations = {
        "dev_pslet": abs(row.e_pslet - float(pslet)),
        "dev_pade": abs(row.e_pade - float(pd)),
        "dev_pade_oracle": abs(row.e_pade - row.e_oracle),
    }
    if disputed:
        row.passed = row.deviations["dev_pade_oracle"] <= sig_unit(row.e_oracle, 6)
    else:
        row.passed = (matches_printed(row.e_pslet, pslet)
                      and matches_printed(row.e_pade, pd))
    return row


_BUILDERS = {"t1": (_row_t1, len(T1_REFS)),
             "t2": (_row_t2, len(T2_REFS)),
             "t3": (_row_t3, len(T3_REFS))}


def reproduce_table(table_id: str, workers: int = 4) -> list[TableRow]:
    """Compute every row of one table; rows are independent jobs.

    Output order is fixed by row index regardless of completion order, so
    serial and parallel runs emit identical bytes.
    """
    table_id = table_id.lower()
    if table_id not in _BUILDERS:
        raise ValueError(f"unknown table {table_id!r}; expected t1, t2 or t3")
    build, count = _BUILDERS[table_id]
    extended()  # raise global mpmath precision once, before worker dispatch
    if workers <= 1:
        return [build(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=min(workers, count)) as pool:
        return list(pool.map(build, range(count)))


_COLUMNS = {
    "t1": ["l", "e_pslet", "e_pade", "e_oracle", "ref_pim", "ref_pslet",
           "ref_pade", "ref_exact", "dev_pslet", "dev_pade", "dev_oracle",
           "precision", "flag", "passed"],
    "t2": ["alpha", "e_pslet", "e_pade", "e_oracle", "ref_pslet", "ref_pade",
           "ref_bb", "ref_exact", "dev_pslet", "dev_pade", "dev_oracle",
           "precision", "flag", "passed"],
    "t3": ["a", "e_pslet", "e_pade", "e_oracle", "ref_pvm", "ref_pslet",
           "ref_pade", "dev_pslet", "dev_pade", "dev_pade_oracle",
           "precision", "flag", "passed"],
}


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def row_to_dict(row: TableRow) -> dict:
    d = dict(row.params)
    d.update({"e_pslet": row.e_pslet, "e_pade": row.e_pade,
              "e_oracle": row.e_oracle})
    d.update(row.refs)
    d.update(row.deviations)
    d.update({"precision": row.precision, "flag": row.flag,
              "passed": row.passed})
    return d


def rows_to_csv(rows: list[TableRow]) -> str:
    """Header + one line per row; '.' decimals, LF endings, 17 sig digits."""
    cols = _COLUMNS[rows[0].table]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        d = row_to_dict(row)
        writer.writerow([_fmt(d.get(c)) for c in cols])
    return buf.getvalue()


def table_exit_code(rows: list[TableRow]) -> int:
    """0 when every row passed its own criterion (disputed rows included)."""
    return 0 if all(r.passed for r in rows) else 2


def adjudicate_t3_disputes(workers: int = 2) -> dict:
    """Shooting-solver verdict for the two inconsistent double-well rows."""
    out = {}
    for a in sorted(DISPUTED_T3):
        pot = quartic(-a / 2.0, 0.5)
        cfg = oracle.default_config(pot, 0.0, 0)
        out[a] = 2.0 * oracle.solve_radial(pot, 0.0, cfg)
    return out
