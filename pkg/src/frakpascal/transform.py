"""Sequence transforms under the product operator and its inverse.

All transforms act on explicit prefixes of a caller-chosen length.  The
underlying sums are row-finite, so a prefix result is exact, not an
approximation to something longer: entry n of the forward transform depends
only on inputs 0..n.

Inputs may be :class:`FiniteSequence` objects or plain sequences of numbers;
arithmetic follows the types involved (exact for int/Fraction data and
orders, float otherwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import List

from .coeffs import Numeric, stable_dot
from .operators import phat_inv_operator, phat_operator

__all__ = [
    "FiniteSequence",
    "BasisVector",
    "as_prefix",
    "apply",
    "inverse_apply",
    "basis_vector",
    "reconstruct",
]


def _check_value(value) -> Numeric:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ValueError(f"sequence values must be real numbers, got {value!r}")
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError(f"sequence values must be finite, got {value!r}")
    return value


class FiniteSequence:
    """A finitely supported sequence: a map from index to nonzero value.

    Zero entries are pruned on construction, so two sequences are equal
    exactly when their supports and values coincide.
    """

    __slots__ = ("_support",)

    def __init__(self, values=()):
        support = {}
        for index, value in enumerate(values):
            _check_value(value)
            if value != 0:
                support[index] = value
        self._support = support

    @classmethod
    def from_items(cls, items) -> "FiniteSequence":
        """Build from (index, value) pairs; indices must be nonnegative ints."""
        seq = cls()
        support = {}
        for index, value in items:
            if not isinstance(index, int) or index < 0:
                raise ValueError(f"indices must be nonnegative integers, got {index!r}")
            _check_value(value)
            if value != 0:
                support[index] = value
        seq._support.update(dict(sorted(support.items())))
        return seq

    @classmethod
    def unit(cls, k: int) -> "FiniteSequence":
        """The coordinate sequence e^(k)."""
        return cls.from_items([(k, 1)])

    def __getitem__(self, index: int) -> Numeric:
        return self._support.get(index, 0)

    def support(self) -> tuple:
        return tuple(sorted(self._support))

    @property
    def max_index(self) -> int:
        """Largest index with a nonzero value, or -1 for the zero sequence."""
        return max(self._support, default=-1)

    def prefix(self, n: int) -> List[Numeric]:
        return [self._support.get(i, 0) for i in range(n)]

    def items(self):
        return sorted(self._support.items())

    def __add__(self, other: "FiniteSequence") -> "FiniteSequence":
        indices = set(self._support) | set(other._support)
        return FiniteSequence.from_items(
            [(i, self[i] + other[i]) for i in sorted(indices)])

    def __sub__(self, other: "FiniteSequence") -> "FiniteSequence":
        indices = set(self._support) | set(other._support)
        return FiniteSequence.from_items(
            [(i, self[i] - other[i]) for i in sorted(indices)])

    def __mul__(self, scalar) -> "FiniteSequence":
        _check_value(scalar)
        return FiniteSequence.from_items(
            [(i, v * scalar) for i, v in self._support.items()])

    __rmul__ = __mul__

    def __abs__(self) -> "FiniteSequence":
        return FiniteSequence.from_items(
            [(i, abs(v)) for i, v in self._support.items()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        return self._support == other._support

    def __len__(self) -> int:
        return len(self._support)

    def __repr__(self) -> str:
        return f"FiniteSequence({self.items()!r})"


def as_prefix(x, n: int) -> List[Numeric]:
    """Coerce a FiniteSequence or plain sequence to a length-n prefix list.

    Shorter inputs are zero-padded; entries beyond index n-1 are dropped
    (they cannot influence the first n transform outputs).
    """
    if n < 1:
        raise ValueError(f"prefix length must be positive, got {n}")
    if isinstance(x, FiniteSequence):
        return x.prefix(n)
    values = list(x)
    if len(values) < n:
        return values + [0] * (n - len(values))
    return values[:n]


@dataclass
class BasisVector:
    """Prefix of the k-th expansion vector; zero before index k, one at it."""

    k: int
    values: List[Numeric]

    @property
    def length(self) -> int:
        return len(self.values)


def _scale_vector(values):
    """(numerators, denominator) for exact values, else None."""
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = math.lcm(den, v.denominator)
        elif not isinstance(v, int):
            return None
    nums = [
        v.numerator * (den // v.denominator) if isinstance(v, Fraction) else v * den
        for v in values
    ]
    return nums, den


def _matvec(op, xs, n: int) -> List[Numeric]:
    """Triangular matrix-vector product against the first n rows of op.

    Exact data (int/Fraction throughout) runs in scaled integer arithmetic,
    which keeps the cost of one division per output instead of one gcd per
    term; anything involving floats uses compensated float summation.
    """
    scaled_x = _scale_vector(xs)
    if scaled_x is not None and op.scaled_row(0) is not None:
        x_nums, x_den = scaled_x
        out = []
        for i in range(n):
            row_nums, row_den = op.scaled_row(i)
            acc = 0
            for a, b in zip(row_nums, x_nums):
                acc += a * b
            denom = row_den * x_den
            out.append(acc if denom == 1 else Fraction(acc, denom))
        return out
    return [stable_dot(op.row(i), xs[: i + 1]) for i in range(n)]


def apply(tau, x, n: int) -> List[Numeric]:
    """Forward transform: output_i = sum_{k<=i} phat(i, k) * x_k for i < n."""
    xs = as_prefix(x, n)
    return _matvec(phat_operator(tau), xs, n)


def inverse_apply(tau, y, n: int) -> List[Numeric]:
    """Inverse transform: output_k = sum_{j<=k} phat_inv(k, j) * y_j for k < n.

    Left-inverse of :func:`apply` on prefixes.
    """
    ys = as_prefix(y, n)
    return _matvec(phat_inv_operator(tau), ys, n)


def basis_vector(tau, k: int, n: int) -> BasisVector:
    """The k-th expansion vector: column k of the inverse operator.

    Its forward transform is the coordinate sequence e^(k) on the truncation.
    """
    if not 0 <= k < n:
        raise ValueError(f"basis index must satisfy 0 <= k < {n}, got {k}")
    op = phat_inv_operator(tau)
    return BasisVector(k=k, values=[op.entry(i, k) for i in range(n)])


def reconstruct(tau, x, big_k: int, n: int) -> List[Numeric]:
    """Partial expansion sum_{k<=K} mu_k * b^(k) truncated to length n.

    The coefficients mu_k are recomputed from the forward transform of x
    rather than accepted from the caller, which rules out inconsistent
    expansions.  For x supported within [0, K] the result matches x exactly
    on indices <= K.
    """
    if not 0 <= big_k < n:
        raise ValueError(f"expansion cutoff must satisfy 0 <= K < {n}, got {big_k}")
    mu = apply(tau, x, big_k + 1)
    inv = phat_inv_operator(tau)
    out = []
    for i in range(n):
        top = min(i, big_k)
        out.append(stable_dot([inv.entry(i, k) for k in range(top + 1)], mu[: top + 1]))
    return out
