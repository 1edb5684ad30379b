"""Dual-characterization matrices and truncated matrix-class condition statistics.

The multiplier questions ("for which a does a*x stay summable / do the
partial sums converge, whenever x lies in the transformed space") reduce to
matrix-class conditions on two derived triangles:

* the masked inverse, entry (n, k) = a_n * phat_inv(n, k), which realizes
  the termwise products a_n * x_n as a matrix applied to the transformed
  sequence, and
* the partial-sum triangle, entry (n, k) = sum_{j=k..n} phat_inv(j, k) * a_j,
  whose row n reproduces the partial sum of a*x up to n.

Conditions over all of N are undecidable from finite data, so every
statistic here is reported as a sequence S_1..S_N over growing horizons
together with a stabilization hint, never as a boolean membership claim.
Sup-type statistics are nondecreasing in the horizon by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List

from .coeffs import Numeric, is_integral, stable_sum
from .operators import DenseTriangle, phat_inv_operator
from .spaces import PExponent
from .transform import as_prefix

__all__ = [
    "ConditionReport",
    "SubsetBudgetError",
    "SUBSET_BUDGET",
    "alpha_matrix",
    "beta_matrix",
    "stat_subset_sup_l1",
    "stat_row_qsum_sup",
    "stat_column_limits",
    "dual_membership_report",
]

SUBSET_BUDGET = 16

STABILIZED = "stabilized"
GROWING = "growing"
INCONCLUSIVE = "inconclusive"


class SubsetBudgetError(ValueError):
    """Subset enumeration request beyond the supported budget."""


@dataclass
class ConditionReport:
    """A truncated condition statistic with a stabilization hint.

    ``values`` holds the statistic at horizons 1..N (or per column, for the
    column diagnostics).  The hint is ``stabilized`` only when the last
    quarter of the sequence is constant to 1e-10 relative; ``growing`` when
    that window is nondecreasing with genuine growth; otherwise
    ``inconclusive``.
    """

    statistic_name: str
    values: List[Numeric]
    horizon: int
    verdict_hint: str
    informational: bool = False


def _verdict(values) -> str:
    if not values:
        return INCONCLUSIVE
    floats = [float(v) for v in values]
    window = floats[-max(2, len(floats) // 4):]
    scale = max(1.0, abs(window[-1]))
    if max(window) - min(window) <= 1e-10 * scale:
        return STABILIZED
    nondecreasing = all(b >= a for a, b in zip(window, window[1:]))
    if nondecreasing and window[-1] - window[0] > 1e-10 * scale:
        return GROWING
    return INCONCLUSIVE


def alpha_matrix(tau, a, n: int) -> DenseTriangle:
    """Masked inverse triangle: row n is a_n times row n of the inverse operator.

    Applied to a transformed sequence it returns the termwise products
    a_n * x_n, which is the object the summability question is about.
    """
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    coeffs = as_prefix(a, n)
    inv = phat_inv_operator(tau)
    return DenseTriangle(
        [[coeffs[r] * v for v in inv.row(r)] for r in range(n)])


def beta_matrix(tau, a, n: int) -> DenseTriangle:
    """Partial-sum triangle: entry (n, k) = sum_{j=k..n} phat_inv(j, k) * a_j.

    Row n applied to a transformed prefix reproduces sum_{k<=n} a_k x_k.
    The diagonal is always a_n.  Built with running column sums, so entry
    (n, k) extends entry (n-1, k) by one term.
    """
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    coeffs = as_prefix(a, n)
    inv = phat_inv_operator(tau)
    partial: list = [0] * n
    rows = []
    for r in range(n):
        inv_row = inv.row(r)
        row = []
        for k in range(r + 1):
            partial[k] = partial[k] + inv_row[k] * coeffs[r]
            row.append(partial[k])
        rows.append(row)
    return DenseTriangle(rows)


def stat_subset_sup_l1(a: DenseTriangle, m: int, n: int) -> ConditionReport:
    """Brute-force subset condition: sup over K within {0..m} of sum_n |sum_{k in K} a_nk|.

    Exhaustive over all 2^(m+1) column subsets; per-subset row sums are built
    incrementally over the low bit, and the reported sequence is the running
    statistic at each row horizon (nondecreasing by construction).
    """
    if m < 0:
        raise ValueError(f"column cutoff must be nonnegative, got {m}")
    if m > SUBSET_BUDGET:
        raise SubsetBudgetError(
            f"subset enumeration supports m <= {SUBSET_BUDGET}, got {m}")
    if n < 1:
        raise ValueError(f"horizon must be positive, got {n}")
    width = m + 1
    masks = 1 << width
    running: list = [0] * masks
    values = []
    for r in range(n):
        cols = [a.entry(r, k) for k in range(width)]
        row_sum: list = [0] * masks
        for mask in range(1, masks):
            low = mask & -mask
            row_sum[mask] = row_sum[mask ^ low] + cols[low.bit_length() - 1]
        for mask in range(1, masks):
            running[mask] = running[mask] + abs(row_sum[mask])
        values.append(max(running))
    return ConditionReport("subset-sup-l1", values, n, _verdict(values))


def _coerce_q(q):
    """Normalize an exponent to math.inf, an int, or a float >= 1."""
    if isinstance(q, str):
        token = q.strip().lower()
        if token in ("inf", "infinity", "oo"):
            return math.inf
        q = Fraction(token)
    if isinstance(q, float) and math.isinf(q):
        return math.inf
    q = int(q) if is_integral(q) else float(q)
    if q < 1:
        raise ValueError(f"q must be at least 1, got {q}")
    return q


def _row_q_stat(row, q) -> Numeric:
    absed = [abs(v) for v in row]
    if isinstance(q, float) and math.isinf(q):
        return max(absed, default=0)
    if q == 1:
        return stable_sum(absed)
    if isinstance(q, int):
        return stable_sum([v ** q for v in absed])
    return math.fsum(float(v) ** q for v in absed)


def stat_row_qsum_sup(a: DenseTriangle, q, n: int) -> ConditionReport:
    """Running sup over rows of the row q-sums (row sup of |entries| for q = inf).

    Integral q keeps exact arithmetic for exact entries; fractional q drops
    to floats.  Labeled ``row-abs-sum-sup`` in the q = 1 case.
    """
    if n < 1:
        raise ValueError(f"horizon must be positive, got {n}")
    q = _coerce_q(q)
    values = []
    best: Numeric = 0
    for r in range(n):
        stat = _row_q_stat(a.values[r] if r < a.size else [], q)
        if stat > best:
            best = stat
        values.append(best)
    name = "row-abs-sum-sup" if q == 1 else "row-q-sum-sup"
    return ConditionReport(name, values, n, _verdict(values))


def stat_column_limits(a: DenseTriangle, n: int) -> tuple:
    """Column-limit diagnostics: per-column oscillation and deviation sums.

    Both statistics run over the triangle's support (k <= row), so the
    implicit zeros above the diagonal never count as deviation.  The limit
    of column k is estimated by the final row's entry.  The first report
    gives, per column, the spread (max minus min) over the rows of the last
    quarter where the column is defined; the second gives, per row, the
    total deviation of that row from the estimated limits.  Purely
    diagnostic; both vanish for columns that are constant where defined.
    """
    if n < 8:
        raise ValueError(f"column diagnostics need n >= 8, got {n}")
    limits = [a.entry(n - 1, k) for k in range(n)]
    start = n - max(2, n // 4)
    oscillation = []
    for k in range(n):
        window = [a.entry(r, k) for r in range(max(start, k), n)]
        oscillation.append(max(window) - min(window))
    deviation = [
        stable_sum([abs(a.entry(r, k) - limits[k]) for k in range(r + 1)])
        for r in range(n)
    ]
    return (
        ConditionReport("column-limit-oscillation", oscillation, n,
                        _verdict(oscillation)),
        ConditionReport("limit-deviation-sum", deviation, n, _verdict(deviation)),
    )


def dual_membership_report(tau, a, p, n: int) -> Dict[str, ConditionReport]:
    """Truncated statistics for the four multiplier sets, keyed D1..D4.

    * D1: running sup of row q-sums of the masked inverse triangle (q the
      conjugate exponent) -- the summability characterization.
    * D2: q-sum of the strictly sub-diagonal entries of the latest
      partial-sum row, per horizon -- the convergence-of-partial-sums part.
    * D3: sup of |entries| of the latest partial-sum row, per horizon.
    * D4: |entries| of the final partial-sum row indexed by column -- the
      trend toward zero.  Informational only: it is defined alongside the
      others but not used by the stated characterizations.

    Finitely supported a makes every partial-sum bracket eventually constant,
    so all four statistics stabilize exactly.
    """
    pe = PExponent.coerce(p)
    q = _coerce_q(pe.q)
    masked = alpha_matrix(tau, a, n)
    sums = beta_matrix(tau, a, n)
    d1 = stat_row_qsum_sup(masked, q, n)

    d2_values = []
    for h in range(1, n + 1):
        row = sums.values[h - 1][: h - 1]
        d2_values.append(_row_q_stat(row, q))
    d2 = ConditionReport("row-q-sum-sup", d2_values, n, _verdict(d2_values))

    d3_values = []
    for h in range(1, n + 1):
        d3_values.append(_row_q_stat(sums.values[h - 1], math.inf))
    d3 = ConditionReport("row-q-sum-sup", d3_values, n, _verdict(d3_values))

    last_row = sums.values[n - 1]
    d4_values = [abs(v) for v in last_row]
    d4 = ConditionReport("limit-deviation-sum", d4_values, n, _verdict(d4_values),
                         informational=True)
    return {"D1": d1, "D2": d2, "D3": d3, "D4": d4}
