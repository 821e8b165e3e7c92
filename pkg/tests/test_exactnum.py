"""Ordered-field arithmetic: examples with hand-computed values, then the
field axioms and valuation laws on random samples."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropvor.exactnum import (
    PoleError,
    RatFun,
    RF_ONE,
    RF_ZERO,
    SingularSystemError,
    of_compare,
    of_eval_at,
    of_solve_linear,
    rat_from_str,
    rat_to_str,
    ratfun_from_json,
    ratfun_to_json,
    sign_threshold,
    valstar,
)

T = RatFun.t_power(1)


def rf(num, den=(1,)) -> RatFun:
    return RatFun(num, den)


def test_compare_monomial_beats_constant():
    assert of_compare(T, RatFun.from_rat(1000)) == 1


def test_compare_positive_infinitesimal():
    assert of_compare(RatFun.t_power(-1), RF_ZERO) == 1


def test_compare_equal_after_reduction():
    # (t^2 - 1)/(t - 1) reduces to t + 1
    f = rf((-1, 0, 1), (-1, 1))
    g = rf((1, 1))
    assert of_compare(f, g) == 0
    assert f == g


def test_valstar_polynomial():
    assert valstar(rf((0, 3, 1))) == 2


def test_valstar_constant_is_zero():
    assert valstar(RF_ONE) == 0


def test_valstar_degree_difference():
    assert valstar(rf((1, 1), (0, 0, 0, 1))) == -2


def test_valstar_zero_is_minus_infinity():
    assert valstar(RF_ZERO) is None


def test_valstar_scale_divides():
    assert valstar(rf((0, 0, 0, 1)), scale=2) == Fraction(3, 2)


def test_eval_exact_value():
    f = rf((1, 0, 1), (0, 1))  # (t^2+1)/t
    value, tau = of_eval_at(f, Fraction(10))
    assert value == Fraction(101, 10)


def test_eval_sign_matches_field_sign_beyond_threshold():
    f = rf((-5, 1))  # t - 5
    tau = sign_threshold(f)
    assert tau >= 5  # threshold covers the root at 5
    value, reported = of_eval_at(f, tau + 1)
    assert value > 0 and f.sign() == 1
    assert reported == tau


def test_eval_at_pole_rejected():
    with pytest.raises(PoleError):
        of_eval_at(RatFun.t_power(-1), Fraction(0))


def test_solve_single_equation():
    assert of_solve_linear([[T]], [T * T]) == [T]


def test_solve_identity():
    sol = of_solve_linear([[RF_ONE, RF_ZERO], [RF_ZERO, RF_ONE]], [RF_ONE, T])
    assert sol == [RF_ONE, T]


def test_solve_singular_reports_rank():
    with pytest.raises(SingularSystemError) as err:
        of_solve_linear([[RF_ONE, RF_ONE], [RF_ONE, RF_ONE]], [RF_ZERO, RF_ONE])
    assert err.value.rank == 1


def test_rat_round_trip():
    assert rat_to_str(Fraction(-3, 7)) == "-3/7"
    assert rat_from_str("-3/7") == Fraction(-3, 7)
    assert rat_to_str(Fraction(5)) == "5"


def test_ratfun_json_round_trip():
    f = rf((1, Fraction(1, 2)), (0, 1))
    assert ratfun_from_json(ratfun_to_json(f)) == f


# ---------------------------------------------------------------------------
# property tests

coeffs = st.lists(st.integers(-9, 9), min_size=0, max_size=4)


@st.composite
def ratfuns(draw):
    num = draw(coeffs)
    den = draw(coeffs.filter(lambda c: any(x != 0 for x in c)))
    return RatFun(num, den)


@given(ratfuns(), ratfuns(), ratfuns())
@settings(max_examples=150, deadline=None)
def test_field_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f - f == RF_ZERO
    if not g.is_zero():
        assert (f / g) * g == f


@given(ratfuns(), ratfuns(), ratfuns())
@settings(max_examples=150, deadline=None)
def test_order_compatible_with_multiplication(f, g, h):
    if f > g and h > RF_ZERO:
        assert f * h > g * h


@given(ratfuns(), ratfuns())
@settings(max_examples=150, deadline=None)
def test_valstar_is_a_valuation(f, g):
    if f.is_zero() or g.is_zero():
        return
    assert valstar(f * g) == valstar(f) + valstar(g)
    s = f + g
    if not s.is_zero():
        assert valstar(s) <= max(valstar(f), valstar(g))
        if valstar(f) != valstar(g):
            assert valstar(s) == max(valstar(f), valstar(g))


@given(ratfuns(), st.integers(0, 5))
@settings(max_examples=150, deadline=None)
def test_sign_stable_beyond_threshold(f, bump):
    t0 = sign_threshold(f) + 1 + bump
    value, _ = of_eval_at(f, t0)
    assert (value > 0) == (f.sign() > 0)
    assert (value < 0) == (f.sign() < 0)
