"""Exact and numerical tools for the Mahler equation U(q) = 1 + (q - 1) U(q^2).

U is defined on the dyadic roots of unity; U0 is its power-series solution
at the origin.  Their Taylor data agree at every dyadic root of unity.
"""

from .cyclotomic import CyclotomicElement, DyadicRoot, embed_complex, root_square, root_to_element
from .errors import BudgetError, LevelError, MahlerError, OrderMismatchError, ParameterError
from .expansions import (
    eval_u_at_root,
    infinity_flatness_check,
    radial_residual_check,
    taylor_at_root,
    u0_eval_radial,
)
from .mahler_functions import (
    MahlerParams,
    a059010_indicator,
    corrected_partial,
    mahler_factorial,
    mahler_infinity,
    partial_sum,
    partial_sum_closed_form,
    solve_u0,
    u_minus,
    u_plus,
    w_closed_form,
    w_solve,
)
from .series_core import IntPolynomial, Polynomial, TruncatedSeries, taylor_shift

__version__ = "0.1.0"
