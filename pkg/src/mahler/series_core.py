"""Exact polynomials and truncated power series in one variable q.

Everything here is exact: coefficients are Python ints, ``fractions.Fraction``
or (for :func:`taylor_shift`) elements of a cyclotomic ring.  Floating point
never enters this module.

A :class:`TruncatedSeries` of order ``O`` stores exactly the coefficients of
``q^0 .. q^(O-1)``; anything at or above ``q^O`` is unknown, never zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import OrderMismatchError, ParameterError

__all__ = [
    "NEG_INF",
    "Polynomial",
    "IntPolynomial",
    "TruncatedSeries",
    "poly_mul",
    "series_mul",
    "substitute_square",
    "taylor_shift",
    "geometric_half_shift",
]

NEG_INF = float("-inf")


_SAFE = 1 << 62


def _to_array(values: Sequence[int]) -> np.ndarray:
    """int64 when every entry is comfortably inside the range, object otherwise."""
    arr = np.asarray(values, dtype=object) if values else np.zeros(0, dtype=np.int64)
    if arr.dtype == object and len(arr):
        if max(abs(int(x)) for x in (max(values), min(values))) < _SAFE:
            arr = arr.astype(np.int64)
    return arr


def _max_abs(a: np.ndarray) -> int:
    if len(a) == 0:
        return 0
    return max(abs(int(a.max())), abs(int(a.min())))


def _widen(a: np.ndarray, b: np.ndarray, bound: int) -> tuple[np.ndarray, np.ndarray]:
    """Promote both operands to object dtype when an int64 result could overflow."""
    if a.dtype == object or b.dtype == object or bound >= _SAFE:
        return a.astype(object), b.astype(object)
    return a, b


def _scale(a: np.ndarray, k: int) -> np.ndarray:
    if k == 1:
        return a
    if a.dtype != object and _max_abs(a) * abs(k) < _SAFE:
        return a * k
    return a.astype(object) * k


def _add_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a, b = _widen(a, b, _max_abs(a) + _max_abs(b))
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    return out


class Polynomial:
    """Dense polynomial ``sum coeffs[k] * q**k`` with exact rational coefficients.

    Stored as an integer numerator vector over one positive common
    denominator.  The vector is int64 while every entry stays below 2^62 in
    magnitude and silently becomes an object array of Python ints beyond
    that, so arithmetic is exact at any size.  Trailing zeros are trimmed;
    the zero polynomial has ``coeffs == ()`` and degree ``NEG_INF``.
    """

    __slots__ = ("_num", "_den", "_coeffs")

    def __init__(self, coeffs: Iterable[Any] = ()) -> None:
        vals = [Fraction(c) if not isinstance(c, int) else c for c in coeffs]
        den = reduce(math.lcm, (v.denominator for v in vals if isinstance(v, Fraction)), 1)
        nums = [int(v * den) if isinstance(v, Fraction) else v * den for v in vals]
        self._set(_to_array(nums), den)

    @classmethod
    def _make(cls, num: np.ndarray, den: int = 1) -> Polynomial:
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    def _set(self, num: np.ndarray, den: int) -> None:
        nz = np.flatnonzero(num)
        num = num[: nz[-1] + 1] if len(nz) else num[:0]
        if den != 1 and len(num):
            if num.dtype == object:
                g = reduce(math.gcd, (int(x) for x in num), den)
            else:
                g = math.gcd(den, int(np.gcd.reduce(num)))
            if g > 1:
                num = num // g
                den //= g
        elif not len(num):
            den = 1
        num.flags.writeable = False
        self._num = num
        self._den = den
        self._coeffs = None

    @classmethod
    def monomial(cls, k: int, c: Any = 1) -> Polynomial:
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c: Any) -> Polynomial:
        return cls([c])

    @property
    def coeffs(self) -> tuple:
        """Coefficients as ints (or Fractions when not integral)."""
        if self._coeffs is None:
            vals = self._num.tolist()
            if self._den == 1:
                self._coeffs = tuple(int(v) for v in vals)
            else:
                d = self._den
                self._coeffs = tuple(
                    v // d if v % d == 0 else Fraction(v, d) for v in map(int, vals)
                )
        return self._coeffs

    @property
    def numerators(self) -> np.ndarray:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def degree(self) -> int | float:
        return len(self._num) - 1 if len(self._num) else NEG_INF

    def is_zero(self) -> bool:
        return not len(self._num)

    def is_integral(self) -> bool:
        return self._den == 1

    def __getitem__(self, k: int) -> Any:
        if 0 <= k < len(self._num):
            v = int(self._num[k])
            return v // self._den if v % self._den == 0 else Fraction(v, self._den)
        return 0

    def __len__(self) -> int:
        return len(self._num)

    def __iter__(self):
        return iter(self.coeffs)

    def _coerce(self, other: Any) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        return None

    def __add__(self, other: Any) -> Polynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = math.lcm(self._den, o._den)
        a = _scale(self._num, den // self._den)
        b = _scale(o._num, den // o._den)
        return Polynomial._make(_add_arrays(a, b), den)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._make(-self._num, self._den)

    def __sub__(self, other: Any) -> Polynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> Polynomial:
        return (-self) + other

    def __mul__(self, other: Any) -> Polynomial:
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Polynomial._make(_scale(self._num, f.numerator), self._den * f.denominator)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._den == o._den and np.array_equal(self._num, o._num)

    def __hash__(self) -> int:
        return hash((self._den, self.coeffs))

    def __call__(self, x: Any) -> Any:
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> Polynomial:
        """Multiply by ``q**k``."""
        if self.is_zero() or k == 0:
            return self
        pad = np.zeros(k, dtype=self._num.dtype)
        return Polynomial._make(np.concatenate([pad, self._num]), self._den)

    def compose_power(self, k: int) -> Polynomial:
        """Return ``p(q**k)``."""
        if k < 1:
            raise ParameterError("compose_power needs k >= 1")
        if self.is_zero():
            return self
        out = np.zeros(k * (len(self._num) - 1) + 1, dtype=self._num.dtype)
        out[::k] = self._num
        return Polynomial._make(out, self._den)

    def substitute_square(self) -> Polynomial:
        return self.compose_power(2)

    def to_series(self, order: int) -> TruncatedSeries:
        return TruncatedSeries.from_coeffs(self.coeffs[:order], order)

    def __repr__(self) -> str:
        head = [str(c) for c in self.coeffs[:16]]
        more = ", ..." if len(self) > 16 else ""
        return f"Polynomial([{', '.join(head)}{more}])"


# The integer-valued polynomials ({q}_n, U(q;N)) use the same class.
IntPolynomial = Polynomial


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact product (direct convolution)."""
    if a.is_zero() or b.is_zero():
        return Polynomial()
    x, y = a.numerators, b.numerators
    x, y = _widen(x, y, _max_abs(x) * _max_abs(y) * min(len(x), len(y)))
    return Polynomial._make(np.convolve(x, y), a.denominator * b.denominator)


def _common_denominator(values: Sequence[Fraction]) -> int:
    return reduce(math.lcm, (Fraction(v).denominator for v in values), 1)


@dataclass(frozen=True)
class TruncatedSeries:
    """Formal power series known modulo ``q**order``.

    ``coeffs`` always has length exactly ``order``; entries are ``Fraction``.
    """

    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ParameterError("order must be non-negative")
        if len(self.coeffs) != self.order:
            raise ParameterError(
                f"a series of order {self.order} needs {self.order} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Any], order: int) -> TruncatedSeries:
        """Truncate or zero-pad ``coeffs`` to ``order`` entries."""
        vals = [Fraction(c) for c, _ in zip(coeffs, range(order))]
        vals += [Fraction(0)] * (order - len(vals))
        return cls(tuple(vals), order)

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls((Fraction(0),) * order, order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.from_coeffs([1], order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.coeffs)

    def _check(self, other: TruncatedSeries) -> None:
        if self.order != other.order:
            raise OrderMismatchError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: Any) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)
        if isinstance(other, Polynomial):
            return self + other.to_series(self.order)
        if self.order == 0:
            return self
        return TruncatedSeries((self.coeffs[0] + other,) + self.coeffs[1:], self.order)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: Any) -> TruncatedSeries:
        return self + (-other)

    def __rsub__(self, other: Any) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other: Any) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        if isinstance(other, Polynomial):
            return self.mul_poly(other)
        return TruncatedSeries(tuple(c * other for c in self.coeffs), self.order)

    def __rmul__(self, other: Any) -> TruncatedSeries:
        return self * other

    def mul_poly(self, p: Polynomial) -> TruncatedSeries:
        """Multiply by a (typically sparse, short) polynomial; stays in the window."""
        out = [Fraction(0)] * self.order
        for k, c in enumerate(p.coeffs):
            if c == 0 or k >= self.order:
                continue
            for i in range(self.order - k):
                out[i + k] += c * self.coeffs[i]
        return TruncatedSeries(tuple(out), self.order)

    def substitute_square(self) -> TruncatedSeries:
        return substitute_square(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if self.order > 8 else ""
        return f"TruncatedSeries([{head}{more}], order={self.order})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product of two series of equal order, truncated to that order.

    The convolution runs over integers after clearing denominators.
    """
    if a.order != b.order:
        raise OrderMismatchError(f"order mismatch: {a.order} vs {b.order}")
    n = a.order
    da = _common_denominator(a.coeffs)
    db = _common_denominator(b.coeffs)
    ia = [int(c * da) for c in a.coeffs]
    ib = [int(c * db) for c in b.coeffs]
    out = [0] * n
    for i, x in enumerate(ia):
        if x == 0:
            continue
        for j in range(n - i):
            out[i + j] += x * ib[j]
    den = da * db
    return TruncatedSeries(tuple(Fraction(v, den) for v in out), n)


def substitute_square(f: TruncatedSeries) -> TruncatedSeries:
    """``f(q**2)`` in the same window: even slots get f's coefficients, odd get 0."""
    out = [Fraction(0)] * f.order
    for n in range((f.order + 1) // 2):
        out[2 * n] = f.coeffs[n]
    return TruncatedSeries(tuple(out), f.order)


def taylor_shift(p: Polynomial, c: Any, terms: int | None = None) -> list:
    """Coefficients ``d_k`` with ``p(q) = sum d_k (q - c)**k``.

    ``c`` may be an int, a Fraction or a cyclotomic element; the result lives
    in the ring generated by the coefficients of ``p`` and ``c``.  Repeated
    synthetic division by ``q - c``: pass ``k`` leaves ``d_k`` in slot ``k``.
    With ``terms`` given only ``d_0 .. d_{terms-1}`` are produced, costing
    ``terms`` passes instead of ``deg p``.
    """
    a = list(p.coeffs)
    n = len(a)
    if n == 0:
        return []
    passes = n if terms is None else min(terms, n)
    for k in range(passes):
        for i in range(n - 2, k - 1, -1):
            a[i] = a[i] + c * a[i + 1]
    if terms is not None:
        a = a[:passes] + [0] * max(0, terms - n)
    return a


def geometric_half_shift(order: int) -> TruncatedSeries:
    """The series of ``1 / (2 (1 - q))``: every coefficient is 1/2."""
    if order < 1:
        raise ParameterError("order must be >= 1")
    return TruncatedSeries((Fraction(1, 2),) * order, order)
