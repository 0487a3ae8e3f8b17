from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mahler.errors import ParameterError
from mahler.mahler_functions import (
    MahlerParams,
    a059010_indicator,
    corrected_partial,
    digit_stats,
    mahler_factorial,
    mahler_infinity,
    mahler_residual,
    partial_sum,
    partial_sum_closed_form,
    r2,
    s2,
    solve_u0,
    u0_fixed_point,
    u_minus,
    u_plus,
    w_closed_form,
    w_residual,
    w_solve,
)
from mahler.series_core import Polynomial, TruncatedSeries, geometric_half_shift, poly_mul

H = Fraction(1, 2)


def brute_product(n, order=None):
    """prod_{j<n} (1 - q^(2^j)) by repeated naive multiplication."""
    coeffs = [1]
    for j in range(n):
        step = 2**j
        out = [0] * (len(coeffs) + step)
        for k, c in enumerate(coeffs):
            out[k] += c
            out[k + step] -= c
        coeffs = out if order is None else out[:order]
    return coeffs


def nonleading_zeros(m):
    return bin(m)[2:].count("0") if m else 0


def series(values, order):
    return TruncatedSeries.from_coeffs(values, order)


class TestDigits:
    def test_examples(self):
        assert (r2(0), s2(0)) == (0, 0)
        d = digit_stats(6)
        assert (d.r2, d.s2, d.z) == (3, 2, 1)
        d = digit_stats(16)
        assert (d.r2, d.s2, d.z) == (5, 1, 4)

    @given(st.integers(min_value=1, max_value=10**12))
    def test_z_matches_binary_string(self, m):
        assert digit_stats(m).z == nonleading_zeros(m)

    def test_a059010_prefix(self):
        assert [m for m in range(1, 21) if a059010_indicator(m)] == [1, 3, 4, 7, 9, 10, 12, 15, 16, 19]
        assert not a059010_indicator(2)

    def test_a059010_domain(self):
        with pytest.raises(ParameterError):
            a059010_indicator(0)

    def test_a059010_generating_function(self):
        gen = solve_u0(4096) + geometric_half_shift(4096)
        for m in range(1, 4096):
            assert gen.coeffs[m] == (1 if a059010_indicator(m) else 0)


class TestFactorial:
    def test_examples(self):
        assert mahler_factorial(0) == Polynomial([1])
        assert mahler_factorial(2).coeffs == (1, -1, -1, 1)
        assert mahler_factorial(3).coeffs == (1, -1, -1, 1, -1, 1, 1, -1)

    @pytest.mark.parametrize("n", range(11))
    def test_matches_brute_product(self, n):
        assert list(mahler_factorial(n).coeffs) == brute_product(n)

    def test_recurrence(self):
        for n in range(8):
            step = Polynomial.constant(1) - Polynomial.monomial(2**n)
            assert mahler_factorial(n + 1) == poly_mul(mahler_factorial(n), step)

    def test_negative(self):
        with pytest.raises(ParameterError):
            mahler_factorial(-1)


class TestPartialSums:
    def test_examples(self):
        assert partial_sum(0).is_zero()
        assert partial_sum(2) == Polynomial([0, 1])
        assert partial_sum(3) == Polynomial([1, 0, -1, 1])

    def test_closed_form_examples(self):
        assert partial_sum_closed_form(1) == Polynomial([1])
        q = Polynomial.monomial(1)
        assert partial_sum_closed_form(4) == q + mahler_factorial(2).shift(4)
        expected = 1 - mahler_factorial(1).shift(2) - mahler_factorial(3).shift(8)
        assert partial_sum_closed_form(5) == expected

    @pytest.mark.parametrize("N", range(0, 25))
    def test_closed_form_equals_sum(self, N):
        assert partial_sum(N) == partial_sum_closed_form(N)

    def test_naive_definition(self):
        for N in range(9):
            total = Polynomial()
            for n in range(N):
                total = total + Polynomial(brute_product(n)) * (-1) ** n
            assert partial_sum(N) == total

    @pytest.mark.parametrize("i", range(13))
    def test_degree_law(self, i):
        assert mahler_factorial(i).shift(2**i).degree == 2 ** (i + 1) - 1


class TestCorrectedPartial:
    def test_examples(self):
        assert corrected_partial(0) == Polynomial([H])
        assert corrected_partial(1) == Polynomial([H, H])

    @pytest.mark.parametrize("N", range(0, 21))
    def test_recursion(self, N):
        lhs = 1 + Polynomial([-1, 1]) * corrected_partial(N).substitute_square()
        assert lhs == corrected_partial(N + 1)

    def test_denominators_are_powers_of_two(self):
        for N in range(12):
            d = corrected_partial(N).denominator
            assert d & (d - 1) == 0


class TestU0:
    def test_prefix(self):
        got = solve_u0(12).coeffs
        assert got == tuple(H * s for s in (1, 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, -1))
        assert got[0] == H

    def test_residual_zero(self):
        assert mahler_residual(solve_u0(4096)).is_zero()

    def test_fixed_point_oracle(self):
        for order in (1, 2, 3, 17, 1000, 4096):
            assert solve_u0(order) == u0_fixed_point(order)

    def test_alphabet(self):
        assert set(solve_u0(4096).coeffs) == {H, -H}

    def test_sign_is_parity_of_zeros(self):
        c = solve_u0(2048).coeffs
        for m in range(1, 2048):
            assert c[m] == (H if nonleading_zeros(m) % 2 == 0 else -H)

    def test_order_check(self):
        with pytest.raises(ParameterError):
            solve_u0(0)


class TestSplitting:
    def test_prefixes(self):
        assert u_plus(8) == series([0, 1, 0, 0, 1, -1, -1, 1], 8)
        assert u_minus(12) == series([1, 0, -1, 1, 0, 0, 0, 0, -1, 1, 1, -1], 12)
        assert u_plus(1).coeffs[0] == 0
        assert u_minus(1).coeffs[0] == 1

    def test_infinity_prefix(self):
        assert mahler_infinity(8) == series([1, -1, -1, 1, -1, 1, 1, -1], 8)

    def test_infinity_matches_brute_product(self):
        order = 4096
        got = mahler_infinity(order).coeffs
        assert list(got) == brute_product(12, order)
        for m in range(order):
            assert got[m] == (-1) ** s2(m)

    def test_splitting_identity(self):
        order = 2048
        half_inf = mahler_infinity(order) * H
        u0 = solve_u0(order)
        assert u0 == u_plus(order) + half_inf
        assert u0 == u_minus(order) - half_inf

    def test_non_mixing(self):
        for f in (u_plus, u_minus):
            s, writes = f(2048, with_writes=True)
            assert max(writes) <= 1
            assert set(s.coeffs) <= {-1, 0, 1}

    @pytest.mark.parametrize("order", [1, 2, 3, 5, 100, 1025])
    def test_straddling_window(self, order):
        half_inf = mahler_infinity(order) * H
        assert solve_u0(order) == u_plus(order) + half_inf


class TestW:
    A_VALUES = [Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3)]

    def test_minus_one_is_u0(self):
        assert w_closed_form(-1, 512) == solve_u0(512)
        assert w_solve(-1, 512) == solve_u0(512)

    def test_a_two_prefix(self):
        assert w_closed_form(2, 8) == series([-1, 2, 4, -4, 8, -8, -8, 8], 8)

    def test_a_zero(self):
        assert w_closed_form(0, 16) == TruncatedSeries.one(16)
        assert w_solve(0, 16) == TruncatedSeries.one(16)

    def test_a_half_constant(self):
        assert w_solve(H, 4).coeffs[0] == 2

    @pytest.mark.parametrize("a", A_VALUES)
    def test_residual_and_agreement(self, a):
        w = w_solve(a, 512)
        assert w_residual(w, a).is_zero()
        assert w == w_closed_form(a, 512)

    @given(st.fractions(max_denominator=9).filter(lambda a: a != 1))
    def test_agreement_random_a(self, a):
        assert w_solve(a, 64) == w_closed_form(a, 64)
        assert w_residual(w_solve(a, 64), a).is_zero()

    def test_a_one_rejected(self):
        with pytest.raises(ParameterError, match="a != 1"):
            w_solve(1, 8)
        with pytest.raises(ParameterError):
            w_closed_form(MahlerParams(Fraction(1)), 8)

    def test_params_parse(self):
        assert MahlerParams.parse("-3/4").a == Fraction(-3, 4)
        with pytest.raises(ParameterError):
            MahlerParams.parse("abc")
