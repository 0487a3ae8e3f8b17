"""Exact arithmetic in Q(zeta_{2^m}) for the dyadic roots of unity.

Level ``m`` uses the power basis ``1, z, ..., z^(h-1)`` with ``h = 2^(m-1)``
and the relation ``z^h = -1`` (the 2-power cyclotomic polynomial is
``x^h + 1``), so reduction after a product is a signed fold.  Level 0 is the
field Q itself and is represented by plain ints / Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

import mpmath

from . import config
from .errors import LevelError, ParameterError

__all__ = [
    "DyadicRoot",
    "CyclotomicElement",
    "Exact",
    "cyc_add",
    "cyc_mul",
    "cyc_pow",
    "promote",
    "demote",
    "root_to_element",
    "root_power_element",
    "root_square",
    "embed_complex",
    "embed_error_bound",
    "all_roots",
]

Exact = Union[int, Fraction, "CyclotomicElement"]


def _norm(x: Any) -> int | Fraction:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True, order=True)
class DyadicRoot:
    """``exp(2 pi i j / 2^m)``, stored reduced: 0 <= j < 2^m, j odd unless m = 0.

    Construct with :meth:`of` to reduce arbitrary ``(j, m)``; the plain
    constructor rejects unreduced input.
    """

    j: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ParameterError("m must be non-negative")
        if not 0 <= self.j < 2**self.m:
            raise ParameterError(f"j={self.j} out of range for m={self.m}")
        if self.m > 0 and self.j % 2 == 0:
            raise ParameterError(f"({self.j}, {self.m}) is not reduced; use DyadicRoot.of")

    @classmethod
    def of(cls, j: int, m: int) -> DyadicRoot:
        if m < 0:
            raise ParameterError("m must be non-negative")
        j %= 2**m
        while m > 0 and j % 2 == 0:
            j //= 2
            m -= 1
        return cls(j if m else 0, m)

    @property
    def level(self) -> int:
        return self.m

    def square(self) -> DyadicRoot:
        return root_square(self)

    def __str__(self) -> str:
        if self.m == 0:
            return "1"
        return f"exp(2*pi*i*{self.j}/{2**self.m})"


def root_square(root: DyadicRoot) -> DyadicRoot:
    """The reduced representation of xi^2; the level drops by one for m >= 1."""
    if root.m == 0:
        return root
    return DyadicRoot.of(2 * root.j, root.m)


class CyclotomicElement:
    """An element ``sum coeffs[i] z^i`` of Q(z), z a primitive 2^level-th root of 1."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level: int, coeffs) -> None:
        if level < 1:
            raise LevelError("CyclotomicElement needs level >= 1; level 0 is plain Q")
        h = 1 << (level - 1)
        coeffs = tuple(_norm(c) for c in coeffs)
        if len(coeffs) != h:
            raise LevelError(f"level {level} needs {h} coefficients, got {len(coeffs)}")
        self.level = level
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def from_rational(cls, level: int, x: int | Fraction) -> CyclotomicElement:
        h = 1 << (level - 1)
        return cls(level, (x,) + (0,) * (h - 1))

    @classmethod
    def zeta_power(cls, level: int, e: int) -> CyclotomicElement:
        """z^e at the given level, folded into the power basis."""
        h = 1 << (level - 1)
        e %= 2 * h
        out = [0] * h
        if e < h:
            out[e] = 1
        else:
            out[e - h] = -1
        return cls(level, out)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_part(self) -> int | Fraction:
        return self.coeffs[0]

    def _coerce(self, other: Any) -> CyclotomicElement | None:
        if isinstance(other, CyclotomicElement):
            if other.level == self.level:
                return other
            raise LevelError(f"level mismatch: {self.level} vs {other.level}; promote first")
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.from_rational(self.level, other)
        return None

    def __add__(self, other: Any) -> CyclotomicElement:
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement(self.level, (self.coeffs[0] + other,) + self.coeffs[1:])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicElement(self.level, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicElement:
        return CyclotomicElement(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Any) -> CyclotomicElement:
        return self + (-other)

    def __rsub__(self, other: Any) -> CyclotomicElement:
        return (-self) + other

    def __mul__(self, other: Any) -> CyclotomicElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CyclotomicElement(self.level, (0,) * len(self.coeffs))
            return CyclotomicElement(self.level, tuple(c * other for c in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        h = len(self.coeffs)
        out = [0] * h
        bc = o.coeffs
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for k, y in enumerate(bc):
                if y == 0:
                    continue
                e = i + k
                if e < h:
                    out[e] += x * y
                else:
                    out[e - h] -= x * y
        return CyclotomicElement(self.level, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> CyclotomicElement:
        return cyc_pow(self, k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CyclotomicElement):
            if other.level != self.level:
                lvl = max(self.level, other.level)
                return promote(self, lvl).coeffs == promote(other, lvl).coeffs
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and self.is_rational()
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            d = demote(self)
            self._hash = hash(d) if not isinstance(d, CyclotomicElement) else hash((d.level, d.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"CyclotomicElement(level={self.level}, coeffs={[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.level == 2:
            a, b = self.coeffs
            if b == 0:
                return str(a)
            im = "i" if abs(b) == 1 else f"{abs(b)}*i"
            if a == 0:
                return im if b > 0 else f"-{im}"
            return f"{a} {'+' if b > 0 else '-'} {im}"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"[{body}]_{2**self.level}"


def cyc_add(a: Exact, b: Exact) -> Exact:
    return a + b


def cyc_mul(a: Exact, b: Exact) -> Exact:
    return a * b


def cyc_pow(a: Exact, k: int) -> Exact:
    """Square-and-multiply power; negative k is not supported."""
    if k < 0:
        raise ParameterError("negative powers are not supported")
    if not isinstance(a, CyclotomicElement):
        return _norm(Fraction(a) ** k)
    result: Exact = CyclotomicElement.from_rational(a.level, 1)
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def promote(a: Exact, level: int) -> CyclotomicElement:
    """Lift ``a`` to ``level`` using z_{2^m} = z_{2^level}^(2^(level-m))."""
    if level < 1:
        raise LevelError("cannot promote to level 0")
    if not isinstance(a, CyclotomicElement):
        return CyclotomicElement.from_rational(level, a)
    if level < a.level:
        raise LevelError(f"cannot promote level {a.level} down to {level}")
    step = 1 << (level - a.level)
    out = [0] * (1 << (level - 1))
    out[::step] = a.coeffs
    return CyclotomicElement(level, out)


def demote(a: Exact) -> Exact:
    """Move ``a`` to the smallest level that contains it (rationals drop to level 0)."""
    if not isinstance(a, CyclotomicElement):
        return _norm(a)
    cur = a
    while True:
        if cur.is_rational():
            return cur.coeffs[0]
        if cur.level <= 2 or any(c != 0 for c in cur.coeffs[1::2]):
            return cur
        cur = CyclotomicElement(cur.level - 1, cur.coeffs[::2])


def root_power_element(root: DyadicRoot, e: int) -> Exact:
    """xi^e for xi = root, at the root's own level."""
    if root.m == 0:
        return 1
    if root.m == 1:
        return -1 if (root.j * e) % 2 else 1
    return CyclotomicElement.zeta_power(root.m, root.j * e)


def root_to_element(root: DyadicRoot) -> Exact:
    """The element zeta^j at level m; rational 1 (or -1 at level 1) otherwise."""
    _check_level(root)
    return root_power_element(root, 1)


def _check_level(root: DyadicRoot) -> None:
    bound = config.max_level()
    if root.m > bound:
        raise LevelError(f"level {root.m} exceeds the configured bound {bound} (MAHLER_MAX_LEVEL)")


def embed_error_bound(e: Exact, precision_bits: int) -> mpmath.mpf:
    """Documented bound 2^(4-bits) * sum |coeffs| on the embedding error."""
    coeffs = e.coeffs if isinstance(e, CyclotomicElement) else (e,)
    total = sum(abs(Fraction(c)) for c in coeffs)
    with mpmath.workprec(precision_bits):
        return mpmath.mpf(2) ** (4 - precision_bits) * mpmath.mpf(total.numerator) / total.denominator


def embed_complex(e: Exact, precision_bits: int) -> mpmath.mpc:
    """Numerical value of ``e`` with ``zeta = exp(2 pi i / 2^level)``.

    Evaluated with ``precision_bits + 16`` working bits and rounded to
    ``precision_bits``; the error is within :func:`embed_error_bound`.
    """
    if precision_bits < 64:
        raise ParameterError("precision_bits must be >= 64")
    with mpmath.workprec(precision_bits + 16):
        if not isinstance(e, CyclotomicElement):
            x = Fraction(e)
            val = mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
        else:
            n = 1 << e.level
            re = mpmath.mpf(0)
            im = mpmath.mpf(0)
            for i, c in enumerate(e.coeffs):
                if c == 0:
                    continue
                c = Fraction(c)
                cm = mpmath.mpf(c.numerator) / c.denominator
                # cospi/sinpi are exact at multiples of 1/2
                re += cm * mpmath.cospi(mpmath.mpf(2 * i) / n)
                im += cm * mpmath.sinpi(mpmath.mpf(2 * i) / n)
            val = mpmath.mpc(re, im)
    with mpmath.workprec(precision_bits):
        return +val


def all_roots(max_m: int):
    """Every reduced root with level <= max_m, ordered by (m, j)."""
    for m in range(max_m + 1):
        if m == 0:
            yield DyadicRoot(0, 0)
            continue
        for j in range(1, 2**m, 2):
            yield DyadicRoot(j, m)
