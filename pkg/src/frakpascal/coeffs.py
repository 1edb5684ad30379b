"""Generalized binomial coefficients and the four elementary triangles.

The scalar kernel of the whole package is the generalized binomial
coefficient

    C(t, i) = Gamma(t+1) / (i! * Gamma(t-i+1)),

always evaluated through the multiplicative recurrence

    C(t, 0) = 1,    C(t, i) = C(t, i-1) * (t - i + 1) / i.

Direct Gamma evaluation would hit poles at nonpositive integer arguments;
the recurrence passes through those points exactly (the factor ``t - i + 1``
lands on zero and every later coefficient stays zero).  A high-precision
Gamma-ratio evaluator exists only in the test suite, as an independent
oracle.

Arithmetic follows the type of the order:

* integral orders (including the negative integers fed in by the inverse
  triangles) use exact integer arithmetic,
* ``fractions.Fraction`` orders stay exact rationals,
* ``float`` orders use float arithmetic.

All entry functions here are total for finite orders.  Enforcement of the
admissible set (no zero, no negative integers) is the job of
:class:`FracOrder`; the numeric layer underneath deliberately accepts any
finite real so that inverse triangles and the order-zero reduction work.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Real
from typing import Union

Numeric = Union[int, float, Fraction]

__all__ = [
    "Numeric",
    "OrderError",
    "FracOrder",
    "CoeffTable",
    "as_number",
    "is_integral",
    "order_key",
    "stable_sum",
    "stable_dot",
    "coeff_table",
    "frac_binom",
    "delta_entry",
    "delta_inv_entry",
    "pascal_entry",
    "pascal_inv_entry",
]


class OrderError(ValueError):
    """A difference order outside the admissible set, or not a finite real."""


def as_number(tau) -> Numeric:
    """Unwrap a FracOrder or validate a raw numeric order.

    Only finiteness is checked here; zero and negative integers are legal at
    this level (the inverse triangles negate the order, and the order-zero
    operator is the identity).
    """
    if isinstance(tau, FracOrder):
        return tau.tau
    if isinstance(tau, bool) or not isinstance(tau, Real):
        raise OrderError(f"order must be a real number, got {tau!r}")
    if isinstance(tau, float) and not math.isfinite(tau):
        raise OrderError(f"order must be finite, got {tau!r}")
    if isinstance(tau, Integral) and not isinstance(tau, int):
        return int(tau)
    return tau


def is_integral(value) -> bool:
    """True when the number is an exact integer (int, integral float/Fraction)."""
    if isinstance(value, Integral):
        return True
    if isinstance(value, Fraction):
        return value.denominator == 1
    if isinstance(value, float):
        return value.is_integer()
    return False


def order_key(tau) -> tuple:
    """Cache key separating exact-integer, exact-rational and float orders.

    Needed because ``0.5 == Fraction(1, 2)`` would otherwise collide in a
    dict while demanding different arithmetic.
    """
    value = as_number(tau)
    if is_integral(value):
        return ("int", int(value))
    if isinstance(value, Fraction):
        return ("frac", value)
    return ("float", float(value))


def stable_sum(terms) -> Numeric:
    """Sum that is exact for int/Fraction inputs and compensated for floats."""
    terms = list(terms)
    if not terms:
        return 0
    if any(isinstance(t, float) for t in terms):
        return math.fsum(float(t) for t in terms)
    return sum(terms)


def stable_dot(xs, ys) -> Numeric:
    """Dot product of two equal-length slices using :func:`stable_sum`."""
    return stable_sum([x * y for x, y in zip(xs, ys)])


@dataclass(frozen=True)
class FracOrder:
    """A fractional difference order.

    Admissible values are all finite reals except zero and the negative
    integers, where the defining Gamma ratio degenerates.  Positive integers
    are accepted: they reduce the fractional triangle to the classical
    binomial difference of that order.
    """

    tau: Numeric

    def __post_init__(self):
        value = self.tau
        if isinstance(value, bool) or not isinstance(value, Real):
            raise OrderError(f"order must be a real number, got {value!r}")
        if isinstance(value, float) and not math.isfinite(value):
            raise OrderError(f"order must be finite, got {value!r}")
        if is_integral(value) and int(value) <= 0:
            raise OrderError(
                f"order {value!r} is not admissible: zero and negative integers are excluded"
            )

    @property
    def value(self) -> Numeric:
        return self.tau

    def __neg__(self) -> Numeric:
        # The negation leaves the admissible set in general, so it is
        # returned as a plain number rather than a FracOrder.
        return -self.tau


class CoeffTable:
    """Lazily extended table of the coefficients C(tau, i).

    The table is append-only: once an index has been produced its value
    never changes, so snapshots can be shared freely across threads.
    Extension is serialized by an internal lock.
    """

    __slots__ = ("tau", "_coeffs", "_integral", "_lock")

    def __init__(self, tau):
        value = as_number(tau)
        self._integral = is_integral(value)
        if self._integral:
            value = int(value)
            seed: Numeric = 1
        elif isinstance(value, Fraction):
            seed = Fraction(1)
        else:
            value = float(value)
            seed = 1.0
        self.tau = value
        self._coeffs = [seed]
        self._lock = threading.Lock()

    def coeff(self, i: int) -> Numeric:
        """C(tau, i); the table grows on demand."""
        if i < 0:
            raise ValueError(f"coefficient index must be nonnegative, got {i}")
        if i >= len(self._coeffs):
            self._extend(i)
        return self._coeffs[i]

    def prefix(self, count: int) -> list:
        """The first ``count`` coefficients as a list (extends on demand)."""
        if count < 0:
            raise ValueError(f"count must be nonnegative, got {count}")
        if count > len(self._coeffs):
            self._extend(count - 1)
        return self._coeffs[:count]

    def _extend(self, i: int) -> None:
        with self._lock:
            coeffs = self._coeffs
            tau = self.tau
            while len(coeffs) <= i:
                j = len(coeffs)
                prev = coeffs[-1]
                num = prev * (tau - j + 1)
                if self._integral:
                    # Exact: i divides C(m, i-1) * (m - i + 1) for every integer m.
                    coeffs.append(num // j)
                else:
                    coeffs.append(num / j)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __repr__(self) -> str:
        return f"CoeffTable(tau={self.tau!r}, computed={len(self._coeffs)})"


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def coeff_table(tau) -> CoeffTable:
    """Shared coefficient table for the given order."""
    key = order_key(tau)
    table = _TABLES.get(key)
    if table is None:
        with _TABLES_LOCK:
            table = _TABLES.get(key)
            if table is None:
                table = CoeffTable(tau)
                _TABLES[key] = table
    return table


def frac_binom(tau, i: int) -> Numeric:
    """Generalized binomial coefficient C(tau, i).

    Total for every finite real order, including the negated orders used by
    the inverse triangles.  For a nonnegative integer order m the value is
    exactly binom(m, i), vanishing for i > m.
    """
    return coeff_table(tau).coeff(i)


def delta_entry(tau, n: int, k: int) -> Numeric:
    """Entry (n, k) of the fractional difference triangle of the given order.

    (-1)^(n-k) * C(tau, n-k) on and below the diagonal, zero above.
    """
    if k > n:
        return 0
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    d = n - k
    c = frac_binom(tau, d)
    return c if d % 2 == 0 else -c


def delta_inv_entry(tau, n: int, k: int) -> Numeric:
    """Entry (n, k) of the inverse difference triangle: the order is negated."""
    return delta_entry(-as_number(tau), n, k)


def pascal_entry(n: int, k: int) -> int:
    """Entry (n, k) of the Pascal triangle: binom(n, n-k) below the diagonal.

    Always an exact integer; Python's arbitrary-precision integers make a
    floating fallback unnecessary at any size.
    """
    if k > n:
        return 0
    if n < 0 or k < 0:
        raise ValueError("indices must be nonnegative")
    return math.comb(n, n - k)


def pascal_inv_entry(n: int, k: int) -> int:
    """Entry (n, k) of the inverse Pascal triangle: alternating-sign binomials."""
    if k > n:
        return 0
    value = pascal_entry(n, k)
    return value if (n - k) % 2 == 0 else -value
