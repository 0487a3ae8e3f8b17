"""Named verification suites run by ``mahler verify``.

``exact`` covers the polynomial, series and cyclotomic identities.
``radial`` covers the numerical side: radial limits of U0 at roots of unity,
the o((1 - rho)^K) behaviour of the Taylor remainder, and flatness of {q}_oo
once the ratios have passed their peak.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .cyclotomic import DyadicRoot, all_roots, embed_complex, promote, root_square, root_to_element
from .expansions import (
    eval_u_at_root,
    infinity_flatness_check,
    radial_residual_check,
    radial_schedule,
    taylor_at_root,
)
from .mahler_functions import (
    a059010_indicator,
    corrected_partial,
    mahler_factorial,
    mahler_infinity,
    mahler_residual,
    partial_sum,
    partial_sum_closed_form,
    s2,
    solve_u0,
    u0_fixed_point,
    u_minus,
    u_plus,
    w_closed_form,
    w_residual,
    w_solve,
)
from .series_core import Polynomial, geometric_half_shift

__all__ = ["CheckResult", "SUITES", "run_suite", "lift"]

EXPANSION_AT_ONE = (1, 1, 2, 9, 80, 1390, 47094, 3127145, 409428448)
U0_PREFIX = (1, 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1)
A059010_PREFIX = (1, 3, 4, 7, 9, 10, 12, 15, 16, 19)
RADIAL_ROOTS = (DyadicRoot(0, 0), DyadicRoot(1, 1), DyadicRoot(1, 2), DyadicRoot(1, 3))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def lift(x, level: int):
    """Bring an exact value to ``level`` so values at xi and xi^2 can be compared."""
    return promote(x, level) if level >= 2 else x


def _mpq(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def _first_mismatch(a, b) -> str:
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return f"first mismatch at index {k}: {x} != {y}"
    return f"length {len(a)} != {len(b)}"


def check_u0_prefix() -> CheckResult:
    got = tuple(2 * c for c in solve_u0(12))
    return CheckResult("u0-prefix", got == U0_PREFIX, "" if got == U0_PREFIX else str(got))


def check_expansion_at_one() -> CheckResult:
    got = taylor_at_root(DyadicRoot(0, 0), 8).coeffs
    return CheckResult("expansion-at-1", tuple(got) == EXPANSION_AT_ONE, "" if tuple(got) == EXPANSION_AT_ONE else str(got))


def check_a059010(order: int = 4096) -> CheckResult:
    hits = tuple(m for m in range(1, 21) if a059010_indicator(m))
    if hits != A059010_PREFIX:
        return CheckResult("a059010", False, f"prefix {hits}")
    gen = solve_u0(order) + geometric_half_shift(order)
    for m in range(1, order):
        if gen[m] != (1 if a059010_indicator(m) else 0):
            return CheckResult("a059010", False, f"coefficient mismatch at q^{m}")
    return CheckResult("a059010", True)


def check_partial_sums(max_n: int = 24) -> CheckResult:
    for N in range(max_n + 1):
        if partial_sum(N) != partial_sum_closed_form(N):
            return CheckResult("partial-sum-closed-form", False, f"N={N}")
    return CheckResult("partial-sum-closed-form", True)


def check_degree_law(max_i: int = 12) -> CheckResult:
    for i in range(max_i + 1):
        d = mahler_factorial(i).shift(2**i).degree
        if d != 2 ** (i + 1) - 1:
            return CheckResult("degree-law", False, f"i={i}: degree {d}")
    return CheckResult("degree-law", True)


def check_corrected_recursion(max_n: int = 20) -> CheckResult:
    step = Polynomial((-1, 1))
    for N in range(max_n + 1):
        lhs = 1 + step * corrected_partial(N).substitute_square()
        if lhs != corrected_partial(N + 1):
            return CheckResult("corrected-recursion", False, f"N={N}")
    return CheckResult("corrected-recursion", True)


def check_splitting(order: int = 2048) -> CheckResult:
    u0 = solve_u0(order)
    half_inf = mahler_infinity(order) * Fraction(1, 2)
    ok_plus = u0 == u_plus(order) + half_inf
    ok_minus = u0 == u_minus(order) - half_inf
    return CheckResult("splitting", ok_plus and ok_minus, f"plus={ok_plus} minus={ok_minus}")


def check_alphabets(order: int = 2048) -> CheckResult:
    trits = {-1, 0, 1}
    for n in range(13):
        if not set(mahler_factorial(n).coeffs) <= trits:
            return CheckResult("alphabets", False, f"{{q}}_{n}")
    for name, ser in (("U+", u_plus(order)), ("U-", u_minus(order)), ("{q}_oo", mahler_infinity(order))):
        if not set(ser.coeffs) <= trits:
            return CheckResult("alphabets", False, name)
    if not {2 * c for c in solve_u0(order)} <= {-1, 1}:
        return CheckResult("alphabets", False, "2*U0")
    return CheckResult("alphabets", True)


def check_non_mixing(order: int = 2048) -> CheckResult:
    for fn in (u_plus, u_minus):
        _, writes = fn(order, with_writes=True)
        if max(writes) > 1:
            return CheckResult("non-mixing", False, fn.__name__)
    return CheckResult("non-mixing", True)


def check_functional_equations(u0_order: int = 4096, w_order: int = 512) -> CheckResult:
    if not mahler_residual(solve_u0(u0_order)).is_zero():
        return CheckResult("functional-equations", False, "U0 residual")
    for a in (Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3)):
        w = w_solve(a, w_order)
        if not w_residual(w, a).is_zero():
            return CheckResult("functional-equations", False, f"W residual a={a}")
        if w != w_closed_form(a, w_order):
            return CheckResult("functional-equations", False, f"w_solve != w_closed_form a={a}")
    return CheckResult("functional-equations", True)


def check_roots(max_m: int = 5) -> CheckResult:
    if eval_u_at_root(DyadicRoot(0, 0)) != 1 or eval_u_at_root(DyadicRoot(1, 1)) != -1:
        return CheckResult("roots", False, "U(1) or U(-1)")
    i = root_to_element(DyadicRoot(1, 2))
    if eval_u_at_root(DyadicRoot(1, 2)) != 2 - i:
        return CheckResult("roots", False, "U(i)")
    for root in all_roots(max_m):
        lvl = root.m
        lhs = lift(eval_u_at_root(root), lvl)
        rhs = 1 + (lift(root_to_element(root), lvl) - 1) * lift(eval_u_at_root(root_square(root)), lvl)
        if lhs != rhs:
            return CheckResult("roots", False, f"functional equation fails at {root}")
        if taylor_at_root(root, 0).coeffs[0] != eval_u_at_root(root):
            return CheckResult("roots", False, f"taylor/value bridge fails at {root}")
    return CheckResult("roots", True)


def check_positivity(order: int = 30) -> CheckResult:
    coeffs = taylor_at_root(DyadicRoot(0, 0), order - 1).coeffs
    bad = [k for k, c in enumerate(coeffs) if not (isinstance(c, int) and c > 0)]
    return CheckResult("positivity", not bad, f"non-positive at {bad}" if bad else "")


def check_oracles(order: int = 4096) -> CheckResult:
    if solve_u0(order) != u0_fixed_point(order):
        return CheckResult("oracles", False, _first_mismatch(solve_u0(order), u0_fixed_point(order)))
    inf = mahler_infinity(order)
    for m in range(order):
        if inf[m] != (-1) ** s2(m):
            return CheckResult("oracles", False, f"{{q}}_oo coefficient at q^{m}")
    return CheckResult("oracles", True)


def check_radial_limits(bits: int = 256) -> CheckResult:
    """K = 0: |U0(rho xi) - U(xi)| strictly decreasing along the schedule."""
    for root in RADIAL_ROOTS:
        rows = radial_residual_check(root, 0, radial_schedule(4, 10), bits)
        res = [r.residual for r in rows]
        if not all(r.conclusive for r in rows) or any(b >= a for a, b in zip(res, res[1:])):
            return CheckResult("radial-limit", False, str(root))
    return CheckResult("radial-limit", True)


def check_little_o(bits: int = 256) -> CheckResult:
    """Remainder / (1 - rho)^K decreasing and remainder / (1 - rho)^(K+1) -> |c_(K+1)|."""
    for root in RADIAL_ROOTS:
        for K in (0, 1, 2, 4):
            rows = radial_residual_check(root, K, radial_schedule(6, 12), bits)
            if not all(r.conclusive for r in rows):
                return CheckResult("little-o", False, f"{root} K={K}: inconclusive row")
            nxt = taylor_at_root(root, K + 1).coeffs[K + 1]
            with mpmath.workprec(bits):
                c_next = abs(embed_complex(nxt, bits))
                scaled = [r.residual / _mpq(1 - r.rho) ** K for r in rows]
                dev = [abs(r.residual / _mpq(1 - r.rho) ** (K + 1) / c_next - 1) for r in rows]
            if any(b >= a for a, b in zip(scaled, scaled[1:])):
                return CheckResult("little-o", False, f"{root} K={K}: not o((1-rho)^K)")
            if any(b >= a for a, b in zip(dev, dev[1:])):
                return CheckResult("little-o", False, f"{root} K={K}: no convergence to next coefficient")
    return CheckResult("little-o", True)


def check_flatness_tail(bits: int = 256) -> CheckResult:
    """|{rho xi}_oo| / (1 - rho)^k decreasing for k <= 6 once t >= 10."""
    for root in RADIAL_ROOTS:
        rows = infinity_flatness_check(root, 6, radial_schedule(10, 16), bits)
        for k in range(7):
            col = [r.ratios[k] for r in rows]
            if any(b >= a for a, b in zip(col, col[1:])):
                return CheckResult("flatness", False, f"{root} k={k}")
    half = infinity_flatness_check(DyadicRoot(0, 0), 0, [Fraction(1, 2)], bits)[0].value
    # exact partial product; the omitted factors j >= 7 move it by < 2^-127
    oracle = Fraction(1)
    for j in range(7):
        oracle *= 1 - Fraction(1, 2 ** (2**j))
    with mpmath.workprec(bits):
        off = abs(half - _mpq(oracle))
    if off > 1e-30:
        return CheckResult("flatness", False, f"{{1/2}}_oo = {half}, oracle {oracle}")
    return CheckResult("flatness", True)


EXACT_SUITE: tuple[Callable[[], CheckResult], ...] = (
    check_u0_prefix,
    check_expansion_at_one,
    check_a059010,
    check_partial_sums,
    check_degree_law,
    check_corrected_recursion,
    check_splitting,
    check_alphabets,
    check_non_mixing,
    check_functional_equations,
    check_roots,
    check_positivity,
    check_oracles,
)

RADIAL_SUITE: tuple[Callable[[], CheckResult], ...] = (
    check_radial_limits,
    check_little_o,
    check_flatness_tail,
)

SUITES = {
    "exact": EXACT_SUITE,
    "radial": RADIAL_SUITE,
    "all": EXACT_SUITE + RADIAL_SUITE,
}


def run_suite(name: str) -> list[CheckResult]:
    if name not in SUITES:
        raise KeyError(name)
    return [check() for check in SUITES[name]]
