"""U at dyadic roots of unity, its Taylor data there, and radial numerics for U0.

Exact side
    U(xi) = sum_{n<=m} (-1)^n {xi}_n at a level-m root (later factorials
    contain the factor 1 - xi^(2^m) = 0).  Taylor coefficients at xi come
    either from recentring the polynomial U(q; m+K+1) at xi ("shift") or from
    multiplying the factors 1 - (xi + t)^(2^j) as series in t = q - xi
    ("local").  The shift route is limited by the 2^(m+K) degree, the local
    route only by K.

Numerical side
    U0(rho xi) by direct summation of its +-1/2 coefficient series in
    fixed-point integer arithmetic, with a certified bound on truncation
    and rounding, compared against the Taylor polynomial of U at xi.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from . import config
from .cyclotomic import (
    DyadicRoot,
    Exact,
    _check_level,
    demote,
    embed_complex,
    embed_error_bound,
    root_power_element,
    root_to_element,
)
from .errors import BudgetError, ParameterError
from .mahler_functions import partial_sum, u0_signs
from .series_core import taylor_shift

__all__ = [
    "RootExpansion",
    "RadialValue",
    "RadialResidualRow",
    "FlatnessRow",
    "GrowthRow",
    "eval_u_at_root",
    "taylor_at_root",
    "u0_eval_radial",
    "radial_residual_check",
    "infinity_flatness_check",
    "coeff_growth_at_one",
    "radial_schedule",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootExpansion:
    root: DyadicRoot
    order: int
    coeffs: tuple
    method: str = "shift"


@dataclass(frozen=True)
class RadialValue:
    value: mpmath.mpc
    tail_bound: mpmath.mpf
    terms: int
    precision_bits: int


@dataclass(frozen=True)
class RadialResidualRow:
    rho: Fraction
    K: int
    residual: mpmath.mpf
    tail_bound: mpmath.mpf
    precision_bits: int
    conclusive: bool
    decay_exponent: mpmath.mpf | None
    terms: int = 0

    @property
    def t(self) -> float:
        """-log2(1 - rho); an integer on the default schedule."""
        return -math.log2(1 - self.rho)


@dataclass(frozen=True)
class FlatnessRow:
    rho: Fraction
    value: mpmath.mpf
    rel_error: mpmath.mpf
    ratios: tuple = field(default_factory=tuple)
    factors: int = 0
    precision_bits: int = 0


@dataclass(frozen=True)
class GrowthRow:
    k: int
    coeff: int
    ratio: Fraction | None
    log_ratio: float | None
    log_ratio_over_log_k: float | None


def radial_schedule(t_min: int, t_max: int) -> list[Fraction]:
    """rho = 1 - 2^-t for t = t_min .. t_max."""
    return [1 - Fraction(1, 2**t) for t in range(t_min, t_max + 1)]


# --- exact values at roots ---------------------------------------------------------------


def eval_u_at_root(root: DyadicRoot) -> Exact:
    """Exact U(xi) = sum_{n=0}^{m} (-1)^n {xi}_n."""
    _check_level(root)
    total: Exact = 0
    prod: Exact = 1
    for n in range(root.m + 1):
        total = total + (prod if n % 2 == 0 else -prod)
        prod = prod * (1 - root_power_element(root, 2**n))
    return demote(total)


def _taylor_shift_route(root: DyadicRoot, K: int, cutoff: int) -> list:
    degree = 2**cutoff - 1
    if degree > config.max_degree():
        raise BudgetError(
            f"recentring needs degree {degree} > budget {config.max_degree()} (MAHLER_MAX_DEGREE)"
        )
    # taylor_shift is linear, so shifting U(q; cutoff+1) once equals summing
    # the shifted factorials {q}_n for n <= cutoff.
    p = partial_sum(cutoff + 1)
    return taylor_shift(p, root_to_element(root), terms=K + 1)


def _series_mul(a: list, b: list, n: int) -> list:
    out: list = [0] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j in range(n - i):
            y = b[j]
            if y != 0:
                out[i + j] = out[i + j] + x * y
    return out


def _local_route(root: DyadicRoot, K: int, cutoff: int) -> list:
    """Sum of (-1)^n prod_{j<n} (1 - (xi + t)^(2^j)) as series in t, mod t^(K+1)."""
    if K > config.DEFAULT_MAX_ORDER:
        raise BudgetError(f"order {K} exceeds the local-route budget {config.DEFAULT_MAX_ORDER}")
    n_terms = K + 1
    total: list = [0] * n_terms
    prod: list = [1] + [0] * K
    for n in range(cutoff + 1):
        sgn = 1 if n % 2 == 0 else -1
        total = [a + sgn * b for a, b in zip(total, prod)]
        e = 2**n
        # 1 - (xi + t)^e = 1 - sum_k C(e, k) xi^(e-k) t^k
        factor: list = []
        for k in range(n_terms):
            c = math.comb(e, k)
            term = c * root_power_element(root, e - k) if c else 0
            factor.append((1 if k == 0 else 0) - term)
        prod = _series_mul(prod, factor, n_terms)
    return total


def taylor_at_root(
    root: DyadicRoot,
    K: int,
    *,
    method: str = "auto",
    cutoff: int | None = None,
) -> RootExpansion:
    """Taylor coefficients U^(k)(xi)/k!, k = 0..K, exactly.

    {q}_n vanishes at a level-m root to order >= n - m, so the default cutoff
    n <= m + K loses nothing below (q - xi)^(K+1).  ``method`` is "shift",
    "local" or "auto" (shift while the degree fits the budget).
    """
    if K < 0:
        raise ParameterError("K must be non-negative")
    _check_level(root)
    if cutoff is None:
        cutoff = root.m + K
    if method == "auto":
        method = "shift" if 2**cutoff - 1 <= config.max_degree() else "local"
    if method == "shift":
        coeffs = _taylor_shift_route(root, K, cutoff)
    elif method == "local":
        coeffs = _local_route(root, K, cutoff)
    else:
        raise ParameterError(f"unknown method {method!r}")
    return RootExpansion(root, K, tuple(demote(c) for c in coeffs), method)


# --- radial numerics ---------------------------------------------------------------------


def _mpf_of(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def _root_complex(root: DyadicRoot) -> mpmath.mpc:
    if root.m == 0:
        return mpmath.mpc(1)
    ang = mpmath.mpf(2 * root.j) / 2**root.m
    return mpmath.mpc(mpmath.cospi(ang), mpmath.sinpi(ang))


def _terms_needed(rho: Fraction, eps: mpmath.mpf) -> int:
    """Smallest N with 1/2 rho^(N+1) / (1 - rho) <= eps."""
    r = _mpf_of(rho)
    target = 2 * eps * (1 - r)
    n1 = int(mpmath.ceil(mpmath.log(target) / mpmath.log(r)))
    n1 = max(n1, 1)
    while _mpf_of(Fraction(1, 2)) * r**n1 / (1 - r) > eps:
        n1 += 1
    return n1 - 1


def u0_eval_radial(root: DyadicRoot, rho: Fraction, precision_bits: int | None = None) -> RadialValue:
    """U0(rho xi) from its coefficient series, with a certified error bound.

    Terms 0..N are summed (Horner, fixed point with 64 guard bits), N being
    the least index with 1/2 rho^(N+1)/(1-rho) <= 2^(-bits/2).  ``tail_bound``
    adds that truncation term to the rounding bound of the fixed-point loop.
    """
    bits = config.default_bits() if precision_bits is None else precision_bits
    if bits < 64:
        raise ParameterError("precision_bits must be >= 64")
    rho = Fraction(rho)
    if not 0 < rho < 1:
        raise ParameterError("rho must satisfy 0 < rho < 1")
    _check_level(root)
    return _u0_eval_cached(root, rho, bits)


@functools.lru_cache(maxsize=256)
def _u0_eval_cached(root: DyadicRoot, rho: Fraction, bits: int) -> RadialValue:
    P = bits + 64
    with mpmath.workprec(P + 16):
        eps = mpmath.mpf(2) ** (-(bits // 2))
        N = _terms_needed(rho, eps)
        r = _mpf_of(rho)
        trunc = r ** (N + 1) / (2 * (1 - r))
        z = r * _root_complex(root)
        scale = mpmath.mpf(2) ** P
        zr = int(mpmath.nint(z.real * scale))
        zi = int(mpmath.nint(z.imag * scale))
    half = 1 << (P - 1)
    signs = u0_signs(N + 1)
    ar = ai = 0
    for s in reversed(signs):
        ar, ai = ((ar * zr - ai * zi) >> P) + (half if s > 0 else -half), (ar * zi + ai * zr) >> P
    with mpmath.workprec(P + 16):
        ulp = mpmath.mpf(2) ** (-P)
        # |acc| <= 1/(2(1-rho)); each step adds <= sqrt2 ulp of rounding and
        # |acc| * |dz| with |dz| <= sqrt2 ulp from rounding z itself.
        rounding = (N + 1) * ulp * 2 * (1 / (1 - r) + 2)
        value = mpmath.mpc(mpmath.mpf(ar) * ulp, mpmath.mpf(ai) * ulp)
        bound = trunc + rounding
    with mpmath.workprec(bits):
        return RadialValue(+value, +bound, N + 1, bits)


def _taylor_poly_value(exp: RootExpansion, rho: Fraction, bits: int) -> tuple[mpmath.mpc, mpmath.mpf]:
    """sum c_k ((rho - 1) xi)^k and a bound on its embedding error."""
    with mpmath.workprec(bits + 32):
        h = (_mpf_of(rho) - 1) * _root_complex(exp.root)
        val = mpmath.mpc(0)
        err = mpmath.mpf(0)
        hk = mpmath.mpc(1)
        ak = mpmath.mpf(1)
        for c in exp.coeffs:
            val += embed_complex(c, bits + 32) * hk
            err += embed_error_bound(c, bits) * ak
            hk *= h
            ak *= abs(h)
        return val, err


def radial_residual_check(
    root: DyadicRoot,
    K: int,
    rho_list: Sequence[Fraction],
    precision_bits: int | None = None,
    *,
    expansion: RootExpansion | None = None,
) -> list[RadialResidualRow]:
    """Residual |U0(rho xi) - sum_{k<=K} c_k (rho xi - xi)^k| for each rho.

    A row is conclusive when the certified numerical error is below 1/100 of
    the residual, or when both sit below 2^(-bits/2).  Only rows of the first
    kind carry the decay exponent log(residual) / log(1 - rho).
    """
    bits = config.default_bits() if precision_bits is None else precision_bits
    if expansion is None:
        expansion = taylor_at_root(root, K)
    rows = []
    for rho in rho_list:
        rho = Fraction(rho)
        u0 = u0_eval_radial(root, rho, bits)
        poly, poly_err = _taylor_poly_value(expansion, rho, bits)
        with mpmath.workprec(bits):
            residual = abs(u0.value - poly)
            bound = u0.tail_bound + poly_err
            floor = mpmath.mpf(2) ** (-(bits // 2))
            resolved = bool(bound * 100 < residual)
            conclusive = resolved or bool(bound < floor and residual < floor)
            decay = None
            # a residual that only sits under the floor says nothing about its size
            if resolved:
                decay = mpmath.log(residual) / mpmath.log(1 - _mpf_of(rho))
        if not conclusive:
            log.warning("inconclusive radial row: root=%s K=%d rho=%s", root, K, rho)
        rows.append(RadialResidualRow(rho, K, residual, bound, bits, conclusive, decay, u0.terms))
    return rows


def _one_minus_rho_pow(rho: Fraction, e: int) -> mpmath.mpf:
    """1 - rho^e without cancellation."""
    return -mpmath.expm1(e * mpmath.log1p(-_mpf_of(1 - rho)))


def infinity_flatness_check(
    root: DyadicRoot,
    K: int,
    rho_list: Sequence[Fraction],
    precision_bits: int | None = None,
) -> list[FlatnessRow]:
    """|{rho xi}_oo| and the ratios |{rho xi}_oo| / (1 - rho)^k, k = 0..K.

    The product stops at the first J with rho^(2^J) <= 2^-(bits+8); the
    neglected factors change the value by a relative amount <= 4 rho^(2^J),
    reported as ``rel_error``.
    """
    bits = config.default_bits() if precision_bits is None else precision_bits
    _check_level(root)
    rows = []
    for rho in rho_list:
        rho = Fraction(rho)
        if not 0 < rho < 1:
            raise ParameterError("rho must satisfy 0 < rho < 1")
        with mpmath.workprec(bits + 64):
            r = _mpf_of(rho)
            xi = _root_complex(root)
            thresh = mpmath.mpf(2) ** (-(bits + 8))
            prod = mpmath.mpf(1)
            j = 0
            while True:
                e = 2**j
                if j >= root.m:
                    # xi^(2^j) = 1: the factor is real and positive
                    prod *= _one_minus_rho_pow(rho, e)
                else:
                    w = r**e * xi**e
                    prod *= abs(1 - w)
                j += 1
                if r ** (2**j) <= thresh:
                    break
            rel = 4 * r ** (2**j)
            gap = _mpf_of(1 - rho)
            ratios = tuple(prod / gap**k for k in range(K + 1))
        with mpmath.workprec(bits):
            rows.append(FlatnessRow(rho, +prod, +rel, tuple(+x for x in ratios), j, bits))
    return rows


def coeff_growth_at_one(order: int) -> list[GrowthRow]:
    """First ``order`` coefficients of U in powers of (q - 1) with ratio diagnostics.

    Exploratory only: ratio c_k / c_(k-1), its log, and log-ratio / log k.
    """
    if order < 1:
        raise ParameterError("order must be >= 1")
    exp = taylor_at_root(DyadicRoot(0, 0), order - 1)
    coeffs = [int(c) for c in exp.coeffs]
    rows = []
    for k, c in enumerate(coeffs):
        ratio = lr = lrk = None
        if k >= 1 and coeffs[k - 1] != 0:
            ratio = Fraction(c, coeffs[k - 1])
            if ratio > 0:
                lr = math.log(ratio)
                lrk = lr / math.log(k) if k >= 2 else None
        rows.append(GrowthRow(k, c, ratio, lr, lrk))
    return rows
