"""The named objects around the Mahler equation U(q) = 1 + (q - 1) U(q^2).

Polynomials: the Mahler factorial {q}_n = prod_{j<n} (1 - q^(2^j)), the partial
sums U(q;N) and their even/odd closed forms, and the corrected sums
U~(q;N) = U(q;N) + (-1)^N/2 {q}_N.

Truncated series: the power-series solution U0 at the origin, its two halves
U+ and U-, the infinite product {q}_oo, and the one-parameter family
W(q) = 1 + a (1 - q) W(q^2) with its digit closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError
from .series_core import IntPolynomial, Polynomial, TruncatedSeries

__all__ = [
    "MahlerParams",
    "DigitStats",
    "mahler_factorial",
    "partial_sum",
    "partial_sum_closed_form",
    "corrected_partial",
    "u0_signs",
    "solve_u0",
    "u0_fixed_point",
    "u_plus",
    "u_minus",
    "mahler_infinity",
    "r2",
    "s2",
    "digit_stats",
    "a059010_indicator",
    "w_closed_form",
    "w_solve",
    "mahler_residual",
    "w_residual",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class MahlerParams:
    """Parameter ``a`` of W(q; a) = sum a^n {q}_n.  ``a = -1`` gives U."""

    a: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))

    @classmethod
    def parse(cls, text: str) -> MahlerParams:
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError):
            raise ParameterError(f"cannot parse {text!r} as a rational number p/q")

    def require_not_one(self) -> None:
        if self.a == 1:
            raise ParameterError("a = 1 is excluded: the constant term would satisfy c0 = 1 + c0 (need a != 1)")


@dataclass(frozen=True)
class DigitStats:
    m: int
    r2: int
    s2: int

    @property
    def z(self) -> int:
        """Count of non-leading binary zeros."""
        return self.r2 - self.s2


def r2(m: int) -> int:
    """Number of binary digits; r2(0) = 0."""
    if m < 0:
        raise ParameterError("m must be non-negative")
    return m.bit_length()


def s2(m: int) -> int:
    """Binary digit sum; s2(0) = 0."""
    if m < 0:
        raise ParameterError("m must be non-negative")
    return bin(m).count("1")


def digit_stats(m: int) -> DigitStats:
    return DigitStats(m, r2(m), s2(m))


def a059010_indicator(m: int) -> bool:
    """True iff m has an even number of non-leading zeros in binary (OEIS A059010)."""
    if m < 1:
        raise ParameterError("A059010 is indexed from m = 1")
    return digit_stats(m).z % 2 == 0


# --- polynomials --------------------------------------------------------------------


def mahler_factorial(n: int) -> IntPolynomial:
    """{q}_n; degree 2^n - 1, coefficients (-1)^{s2(k)} for k < 2^n.

    Each factor 1 - q^(2^j) touches a fresh binary digit, so the product
    never has carries and can be built by doubling the coefficient list.
    """
    if n < 0:
        raise ParameterError("n must be non-negative")
    return Polynomial._make(_factorial_array(n))


def _factorial_array(n: int) -> np.ndarray:
    coeffs = np.ones(1, dtype=np.int64)
    for _ in range(n):
        coeffs = np.concatenate([coeffs, -coeffs])
    return coeffs


def partial_sum(N: int) -> IntPolynomial:
    """U(q;N) = sum_{n<N} (-1)^n {q}_n, summed term by term."""
    if N < 0:
        raise ParameterError("N must be non-negative")
    if N == 0:
        return Polynomial()
    # |coefficients| <= N, so int64 accumulation is exact
    total = np.zeros(2 ** (N - 1), dtype=np.int64)
    f = np.ones(1, dtype=np.int64)
    for n in range(N):
        if n % 2 == 0:
            total[: len(f)] += f
        else:
            total[: len(f)] -= f
        f = np.concatenate([f, -f])
    return Polynomial._make(total)


def partial_sum_closed_form(N: int) -> IntPolynomial:
    """U(q;N) via the even/odd closed forms.

    N = 2k:    sum_{i<k} q^(4^i) {q}_{2i}
    N = 2k+1:  1 - sum_{i<k} q^(2 * 4^i) {q}_{2i+1}
    """
    if N < 0:
        raise ParameterError("N must be non-negative")
    k, odd = divmod(N, 2)
    if odd:
        total = Polynomial.constant(1)
        for i in range(k):
            total = total - mahler_factorial(2 * i + 1).shift(2 ** (2 * i + 1))
    else:
        total = Polynomial()
        for i in range(k):
            total = total + mahler_factorial(2 * i).shift(2 ** (2 * i))
    return total


def corrected_partial(N: int) -> Polynomial:
    """U~(q;N) = U(q;N) + (-1)^N / 2 * {q}_N, with exact half-integer coefficients."""
    sign = HALF if N % 2 == 0 else -HALF
    return partial_sum(N) + mahler_factorial(N) * sign


# --- series at the origin ------------------------------------------------------------


def u0_signs(order: int) -> list[int]:
    """Signs of 2 U0: s_0 = 1, s_{2n+1} = s_n, s_{2n} = -s_n for n >= 1."""
    if order < 1:
        raise ParameterError("order must be >= 1")
    s = [0] * order
    s[0] = 1
    if order > 1:
        s[1] = 1
    for k in range(2, order):
        s[k] = s[k >> 1] if k & 1 else -s[k >> 1]
    return s


def solve_u0(order: int) -> TruncatedSeries:
    """The power-series solution of U(q) = 1 + (q - 1) U(q^2) at the origin.

    Matching q^0 gives c0 = 1 - c0, so c0 = 1/2.  For k >= 1 the q^k
    coefficient of (q - 1) U(q^2) is c_{(k-1)/2} for odd k and -c_{k/2} for
    even k, so c_{2n+1} = c_n and c_{2n} = -c_n.  Odd k = 1 reads c_0, which is
    why c_1 = 1/2 as well.
    """
    return TruncatedSeries(tuple(HALF if s > 0 else -HALF for s in u0_signs(order)), order)


def u0_fixed_point(order: int) -> TruncatedSeries:
    """U0 by iterating f <- 1 + (q - 1) f(q^2), used as an oracle for :func:`solve_u0`.

    The constant term maps c0 -> 1 - c0 and never settles, so the iteration
    starts from its fixed point f = 1/2.  After that every pass at least
    doubles the correct prefix; we stop once a pass changes nothing.
    """
    if order < 1:
        raise ParameterError("order must be >= 1")
    step = Polynomial((-1, 1))
    f = TruncatedSeries.from_coeffs([HALF], order)
    for _ in range(order.bit_length() + 2):
        nxt = 1 + f.substitute_square().mul_poly(step)
        if nxt == f:
            return f
        f = nxt
    raise RuntimeError("fixed-point iteration did not converge")


def mahler_residual(f: TruncatedSeries) -> TruncatedSeries:
    """f(q) - 1 - (q - 1) f(q^2) within f's window."""
    return f - 1 - f.substitute_square().mul_poly(Polynomial((-1, 1)))


def _split_sum(order: int, odd: bool) -> tuple[TruncatedSeries, list[int]]:
    """Sum of q^(2^i) {q}_i over i of one parity, plus how often each slot was written."""
    out = [0] * order
    writes = [0] * order
    i = 1 if odd else 0
    while 2**i < order:
        f = mahler_factorial(i)
        base = 2**i
        for k, c in enumerate(f.coeffs):
            if base + k >= order:
                break
            out[base + k] += c
            writes[base + k] += 1
        i += 2
    return TruncatedSeries.from_coeffs(out, order), writes


def u_plus(order: int, *, with_writes: bool = False):
    """U+ = sum_{i>=0} q^(4^i) {q}_{2i}, truncated to ``order``.

    The summand for i spans exponents [2^i, 2^(i+1) - 1], so only those with
    2^i < order matter (the last one may straddle the window edge).
    """
    if order < 1:
        raise ParameterError("order must be >= 1")
    s, writes = _split_sum(order, odd=False)
    return (s, writes) if with_writes else s


def u_minus(order: int, *, with_writes: bool = False):
    """U- = 1 - sum_{i>=0} q^(2 * 4^i) {q}_{2i+1}, truncated to ``order``."""
    if order < 1:
        raise ParameterError("order must be >= 1")
    s, writes = _split_sum(order, odd=True)
    writes[0] += 1
    out = 1 - s
    return (out, writes) if with_writes else out


def mahler_infinity(order: int) -> TruncatedSeries:
    """{q}_oo = prod_{j>=0} (1 - q^(2^j)); factors with 2^j >= order are 1 in the window."""
    if order < 1:
        raise ParameterError("order must be >= 1")
    n = 0
    while 2**n < order:
        n += 1
    return mahler_factorial(n).to_series(order)


# --- the W family ----------------------------------------------------------------------


def _as_params(a) -> MahlerParams:
    return a if isinstance(a, MahlerParams) else MahlerParams(Fraction(a))


def w_closed_form(a, order: int) -> TruncatedSeries:
    """W0(q;a) = 1/(1-a) * sum_m (-1)^{s2(m)} a^{r2(m)} q^m."""
    p = _as_params(a)
    p.require_not_one()
    if order < 1:
        raise ParameterError("order must be >= 1")
    scale = 1 / (1 - p.a)
    powers = [Fraction(1)]
    out = []
    for m in range(order):
        r = r2(m)
        while len(powers) <= r:
            powers.append(powers[-1] * p.a)
        sign = -1 if s2(m) % 2 else 1
        out.append(sign * powers[r] * scale)
    return TruncatedSeries(tuple(out), order)


def w_solve(a, order: int) -> TruncatedSeries:
    """Power-series solution of W(q) = 1 + a (1 - q) W(q^2) by coefficient matching.

    q^0:     c0 = 1 + a c0                 ->  c0 = 1 / (1 - a)
    q^(2n):  c_{2n} = a c_n        (n >= 1)
    q^(2n+1): c_{2n+1} = -a c_n    (n >= 0)
    """
    p = _as_params(a)
    p.require_not_one()
    if order < 1:
        raise ParameterError("order must be >= 1")
    c = [Fraction(0)] * order
    c[0] = 1 / (1 - p.a)
    for k in range(1, order):
        c[k] = p.a * c[k >> 1] if k % 2 == 0 else -p.a * c[k >> 1]
    return TruncatedSeries(tuple(c), order)


def w_residual(f: TruncatedSeries, a) -> TruncatedSeries:
    """f(q) - 1 - a (1 - q) f(q^2) within f's window."""
    p = _as_params(a)
    return f - 1 - f.substitute_square().mul_poly(Polynomial((p.a, -p.a)))
