"""Norms of the transformed sequence spaces and their structural diagnostics.

The weighted norm of a sequence is the classical p-norm of its forward
transform at a stated horizon.  For finitely supported input the transform
need not be finitely supported, so every value here is a truncated norm and
callers are expected to carry the horizon alongside it (the CLI does).

The parallelogram check runs its transforms in exact rational arithmetic
(every float is an exact binary rational, so lifting is lossless); only the
final p-norms are evaluated in floating point.  This keeps the two sides of
the identity free of round-trip noise, which at these horizons would
otherwise swamp the 1e-12 equality margin at p = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import as_number, stable_sum
from .operators import phat_operator
from .transform import FiniteSequence, as_prefix, apply, inverse_apply

__all__ = [
    "PExponent",
    "p_norm",
    "phat_norm",
    "parallelogram_gap",
    "absoluteness_gap",
    "inclusion_bound",
]


@dataclass(frozen=True)
class PExponent:
    """An exponent p in [1, inf] with its conjugate q (1/p + 1/q = 1)."""

    p: float

    def __post_init__(self):
        if math.isnan(self.p) or self.p < 1:
            raise ValueError(f"exponent must satisfy p >= 1, got {self.p!r}")

    @classmethod
    def coerce(cls, p) -> "PExponent":
        """Accept a PExponent, a number, or the token 'inf'."""
        if isinstance(p, PExponent):
            return p
        if isinstance(p, str):
            token = p.strip().lower()
            if token in ("inf", "infinity", "oo"):
                return cls(math.inf)
            return cls(float(Fraction(token)))
        return cls(float(p))

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.p)

    @property
    def q(self) -> float:
        """Conjugate exponent: inf for p = 1, 1 for p = inf."""
        if self.p == 1:
            return math.inf
        if self.is_inf:
            return 1.0
        return self.p / (self.p - 1)


def p_norm(values, p) -> float:
    """Classical p-norm of a prefix (sup of absolute values for p = inf)."""
    pe = PExponent.coerce(p)
    vals = [abs(float(v)) for v in values]
    if pe.is_inf:
        return max(vals, default=0.0)
    if pe.p == 1:
        return math.fsum(vals)
    if pe.p == 2:
        return math.sqrt(math.fsum(v * v for v in vals))
    return math.fsum(v ** pe.p for v in vals) ** (1.0 / pe.p)


def phat_norm(tau, x, p, n: int) -> float:
    """Truncated weighted norm: the p-norm of the forward transform at horizon n."""
    return p_norm(apply(tau, x, n), p)


def parallelogram_gap(tau, p, n: int) -> tuple:
    """Both sides of the parallelogram identity for the canonical witnesses.

    u and v are the inverse transforms of (1, 1, 0, ...) and (1, -1, 0, ...),
    so their forward transforms are exactly those two sequences.  Returns
    (lhs, rhs) with lhs = |u+v|^2 + |u-v|^2 and rhs = 2(|u|^2 + |v|^2), all
    in the weighted norm.  Identically lhs = 8 and rhs = 4 * 2^(2/p),
    independent of the order; they agree exactly when p = 2.
    """
    if n < 2:
        raise ValueError(f"horizon must be at least 2, got {n}")
    t = Fraction(as_number(tau))
    u = inverse_apply(t, [1, 1], n)
    v = inverse_apply(t, [1, -1], n)
    u_plus_v = [a + b for a, b in zip(u, v)]
    u_minus_v = [a - b for a, b in zip(u, v)]
    lhs = phat_norm(t, u_plus_v, p, n) ** 2 + phat_norm(t, u_minus_v, p, n) ** 2
    rhs = 2.0 * (phat_norm(t, u, p, n) ** 2 + phat_norm(t, v, p, n) ** 2)
    return lhs, rhs


def absoluteness_gap(tau, p, w, n: int) -> float:
    """Weighted-norm discrepancy between a sequence and its absolute value.

    A strictly positive gap witnesses that the weighted norm is not
    determined by entry magnitudes alone.  Sign-free input gives zero.
    """
    if isinstance(w, FiniteSequence):
        w_abs = abs(w)
    else:
        w = as_prefix(w, n)
        w_abs = [abs(v) for v in w]
    return abs(phat_norm(tau, w, p, n) - phat_norm(tau, w_abs, p, n))


def inclusion_bound(tau, p, n: int) -> float:
    """Horizon-dependent operator-norm bound for the forward transform.

    Returns B such that the truncated weighted norm of any x supported in
    [0, n) is at most B times its p-norm; B is the p-norm of the vector of
    row absolute sums (the maximum row sum for p = inf).
    """
    if n < 1:
        raise ValueError(f"horizon must be positive, got {n}")
    pe = PExponent.coerce(p)
    op = phat_operator(tau)
    row_sums = [stable_sum([abs(v) for v in op.row(r)]) for r in range(n)]
    if pe.is_inf:
        return float(max(row_sums))
    if pe.p == 1:
        return math.fsum(float(s) for s in row_sums)
    return math.fsum(float(s) ** pe.p for s in row_sums) ** (1.0 / pe.p)
