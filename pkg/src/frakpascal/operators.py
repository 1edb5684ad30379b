"""Lazy lower-triangular operator algebra.

A :class:`TriangularOperator` is an infinite lower-triangular matrix given
by an entry rule; rows are materialized on demand and cached per operator.
The module provides the elementary triangles, the product operator (Pascal
composed with a fractional difference), its closed-form inverse, generic
composition, truncation to dense triangles, and an identity-residual
diagnostic used throughout the verification suites.

Entries inherit the arithmetic of the order: integer orders produce exact
integers, Fraction orders exact rationals, float orders floats (with
compensated summation).  Repeated evaluation is bit-identical.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List

from .coeffs import (
    Numeric,
    as_number,
    coeff_table,
    delta_entry,
    delta_inv_entry,
    order_key,
    pascal_entry,
    pascal_inv_entry,
    stable_sum,
)

__all__ = [
    "TriangularOperator",
    "DenseTriangle",
    "identity_operator",
    "pascal_operator",
    "pascal_inv_operator",
    "delta_operator",
    "delta_inv_operator",
    "phat_operator",
    "phat_inv_operator",
    "phat_entry",
    "phat_inv_entry",
    "compose",
    "truncate",
    "identity_residual",
    "identity_residual_between",
]


class TriangularOperator:
    """Infinite lower-triangular matrix defined by an entry rule.

    The rule is only consulted on and below the diagonal, so triangularity
    holds by construction.  Rows are cached; the cache is append-only and
    lock-protected, making shared concurrent use safe.
    """

    __slots__ = ("_rule", "_row_builder", "descriptor", "_rows", "_scaled", "_lock")

    def __init__(self, entry_rule: Callable[[int, int], Numeric], descriptor: str,
                 row_builder: Callable[[int], tuple] = None):
        self._rule = entry_rule
        self._row_builder = row_builder
        self.descriptor = descriptor
        self._rows: dict = {}
        self._scaled: dict = {}
        self._lock = threading.Lock()

    def row(self, n: int) -> tuple:
        """Entries (n, 0) .. (n, n) as a tuple, computed once and cached.

        A row builder, when present, produces the whole row at once; it must
        agree with the entry rule (exact builders do so identically).
        """
        cached = self._rows.get(n)
        if cached is None:
            with self._lock:
                cached = self._rows.get(n)
                if cached is None:
                    if self._row_builder is not None:
                        cached = tuple(self._row_builder(n))
                    else:
                        cached = tuple(self._rule(n, k) for k in range(n + 1))
                    self._rows[n] = cached
        return cached

    def scaled_row(self, n: int):
        """Row n as (integer numerators, common denominator), or None.

        Only rows made of exact values (int/Fraction) have a scaled form;
        float rows return None.  Used by the transforms to run exact
        matrix-vector products in plain integer arithmetic.
        """
        cached = self._scaled.get(n, _UNSET)
        if cached is _UNSET:
            row = self.row(n)
            cached = _scale_exact(row)
            with self._lock:
                self._scaled[n] = cached
        return cached

    def entry(self, n: int, k: int) -> Numeric:
        """Entry (n, k); zero above the diagonal."""
        if k > n:
            return 0
        return self.row(n)[k]

    def __repr__(self) -> str:
        return f"TriangularOperator({self.descriptor})"


_UNSET = object()


def _scale_exact(values):
    """(numerators, denominator) for exact rational values, else None."""
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = math.lcm(den, v.denominator)
        elif not isinstance(v, int):
            return None
    nums = tuple(
        v.numerator * (den // v.denominator) if isinstance(v, Fraction) else v * den
        for v in values
    )
    return nums, den


@dataclass
class DenseTriangle:
    """Finite truncation of a triangular operator.

    ``values[n]`` holds the n+1 entries of row n; everything above the
    diagonal is implicitly zero.
    """

    values: List[list]

    def __post_init__(self):
        for n, row in enumerate(self.values):
            if len(row) != n + 1:
                raise ValueError(f"row {n} must have {n + 1} entries, got {len(row)}")

    @property
    def size(self) -> int:
        return len(self.values)

    def entry(self, n: int, k: int) -> Numeric:
        if k > n:
            return 0
        return self.values[n][k]

    def to_lists(self) -> List[list]:
        """Full square layout with explicit zeros above the diagonal."""
        n = self.size
        return [list(row) + [0] * (n - len(row)) for row in self.values]


_OPERATORS: dict = {}
_OPERATORS_LOCK = threading.Lock()


def _shared(name: str, key, factory) -> TriangularOperator:
    full_key = (name, key)
    op = _OPERATORS.get(full_key)
    if op is None:
        with _OPERATORS_LOCK:
            op = _OPERATORS.get(full_key)
            if op is None:
                op = factory()
                _OPERATORS[full_key] = op
    return op


def identity_operator() -> TriangularOperator:
    return _shared("id", (), lambda: TriangularOperator(
        lambda n, k: 1 if n == k else 0, "I"))


def pascal_operator() -> TriangularOperator:
    return _shared("pascal", (), lambda: TriangularOperator(pascal_entry, "P"))


def pascal_inv_operator() -> TriangularOperator:
    return _shared("pascal-inv", (), lambda: TriangularOperator(
        pascal_inv_entry, "P^-1"))


def delta_operator(tau) -> TriangularOperator:
    t = as_number(tau)
    return _shared("delta", order_key(t), lambda: TriangularOperator(
        lambda n, k: delta_entry(t, n, k), f"Delta({t})"))


def delta_inv_operator(tau) -> TriangularOperator:
    t = as_number(tau)
    return _shared("delta-inv", order_key(t), lambda: TriangularOperator(
        lambda n, k: delta_inv_entry(t, n, k), f"Delta(-{t})"))


def phat_entry(tau, n: int, k: int) -> Numeric:
    """Entry (n, k) of the product operator: Pascal row against difference column.

    Evaluates sum_{i=k..n} pascal(n, i) * delta(tau, i, k).  Zero above the
    diagonal, exactly one on it.
    """
    if k > n:
        return 0
    t = as_number(tau)
    prow = pascal_operator().row(n)
    coeffs = coeff_table(t).prefix(n - k + 1)
    terms = []
    for i in range(k, n + 1):
        term = prow[i] * coeffs[i - k]
        terms.append(term if (i - k) % 2 == 0 else -term)
    return stable_sum(terms)


def phat_inv_entry(tau, n: int, k: int) -> Numeric:
    """Entry (n, k) of the closed-form inverse of the product operator.

    Evaluates sum_{j=k..n} delta_inv(tau, n, j) * pascal_inv(j, k).
    """
    if k > n:
        return 0
    t = as_number(tau)
    pinv = pascal_inv_operator()
    coeffs = coeff_table(-t).prefix(n - k + 1)
    terms = []
    for j in range(k, n + 1):
        c = coeffs[n - j]
        term = (c if (n - j) % 2 == 0 else -c) * pinv.row(j)[k]
        terms.append(term)
    return stable_sum(terms)


def _signed_scaled_coeffs(t, count: int):
    """((-1)^m * numerator of C(t, m), common denominator) for m < count."""
    scaled = _scale_exact(coeff_table(t).prefix(count))
    nums, den = scaled
    return [c if m % 2 == 0 else -c for m, c in enumerate(nums)], den


def _exact_phat_row(t, n: int) -> list:
    """Row n of the product operator via one integer dot per entry."""
    prow = pascal_operator().row(n)
    signed, den = _signed_scaled_coeffs(t, n + 1)
    out = []
    for k in range(n + 1):
        acc = 0
        for i in range(k, n + 1):
            acc += prow[i] * signed[i - k]
        out.append(acc if den == 1 else Fraction(acc, den))
    return out


def _exact_phat_inv_row(t, n: int) -> list:
    """Row n of the inverse operator via integer dots against inverse Pascal rows."""
    pinv = pascal_inv_operator()
    pinv_rows = [pinv.row(j) for j in range(n + 1)]
    signed, den = _signed_scaled_coeffs(-t, n + 1)
    out = []
    for k in range(n + 1):
        acc = 0
        for j in range(k, n + 1):
            acc += signed[n - j] * pinv_rows[j][k]
        out.append(acc if den == 1 else Fraction(acc, den))
    return out


def phat_operator(tau) -> TriangularOperator:
    t = as_number(tau)
    key = order_key(t)
    builder = (lambda n: _exact_phat_row(t, n)) if key[0] != "float" else None
    return _shared("phat", key, lambda: TriangularOperator(
        lambda n, k: phat_entry(t, n, k), f"Phat(tau={t})", row_builder=builder))


def phat_inv_operator(tau) -> TriangularOperator:
    t = as_number(tau)
    key = order_key(t)
    builder = (lambda n: _exact_phat_inv_row(t, n)) if key[0] != "float" else None
    return _shared("phat-inv", key, lambda: TriangularOperator(
        lambda n, k: phat_inv_entry(t, n, k), f"Phat(tau={t})^-1",
        row_builder=builder))


def compose(a: TriangularOperator, b: TriangularOperator) -> TriangularOperator:
    """Lazy matrix product: entry (n, k) is sum_{j=k..n} a(n, j) * b(j, k).

    Nothing is memoized across the composition itself; the factor operators
    keep their own row caches.
    """

    def rule(n: int, k: int) -> Numeric:
        arow = a.row(n)
        return stable_sum([arow[j] * b.entry(j, k) for j in range(k, n + 1)])

    return TriangularOperator(rule, f"({a.descriptor})*({b.descriptor})")


def truncate(a: TriangularOperator, n: int) -> DenseTriangle:
    """First n rows of the operator as a dense triangle."""
    if n < 1:
        raise ValueError(f"truncation size must be positive, got {n}")
    return DenseTriangle([list(a.row(r)) for r in range(n)])


def identity_residual_between(a: TriangularOperator, b: TriangularOperator,
                              n: int) -> Numeric:
    """Scaled deviation of the truncated product a*b from the identity.

    For each position the deviation |sum - delta| is divided by the largest
    intermediate product magnitude (at least 1), because raw entries grow
    combinatorially and an unscaled residual would be meaningless at large n.
    """
    if n < 1:
        raise ValueError(f"truncation size must be positive, got {n}")
    worst: Numeric = 0
    brows = [b.row(j) for j in range(n)]
    for r in range(n):
        arow = a.row(r)
        for k in range(r + 1):
            prods = [arow[j] * brows[j][k] for j in range(k, r + 1)]
            total = stable_sum(prods)
            target = 1 if k == r else 0
            scale = max(1, max(abs(p) for p in prods))
            deviation = abs(total - target) / scale
            if deviation > worst:
                worst = deviation
    return worst


def identity_residual(tau, n: int) -> Numeric:
    """Residual of the product operator against its closed-form inverse."""
    return identity_residual_between(phat_operator(tau), phat_inv_operator(tau), n)
