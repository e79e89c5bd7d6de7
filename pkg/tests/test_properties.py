"""Randomized algebraic laws, 1000 cases each."""

import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from omega_puiseux.scalars import CycScalar, QuadReal
from omega_puiseux.semigroup import echelon_pivots
from omega_puiseux.series import (
    GSeries,
    Weight,
    exp_add,
    factor_monomial_unit,
    galois_apply,
    series_equal_upto,
    unit_inverse,
    valuation,
)

W = Weight([1, QuadReal(0, 1, 2)])
CASES = settings(
    max_examples=1000,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)

halves = st.integers(-4, 6).map(lambda v: Fraction(v, 2))
exps = st.tuples(halves, halves)
scalars = st.one_of(
    st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool).map(CycScalar.rational),
    st.tuples(st.sampled_from([3, 4, 6]), st.integers(0, 5), st.integers(1, 3)).map(
        lambda t: CycScalar.zeta(t[0], t[1]) * t[2]
    ),
)


def _series(terms, exact=True, trunc=None):
    return GSeries(W, terms, trunc=trunc, exact=exact)


nonzero_series = st.lists(st.tuples(exps, scalars), min_size=1, max_size=5).map(_series).filter(
    lambda s: not s.is_zero()
)

pos_exps = st.tuples(st.integers(0, 4), st.integers(0, 3)).filter(any).map(
    lambda t: (Fraction(t[0], 2), Fraction(t[1], 2))
)
units = st.tuples(scalars, st.lists(st.tuples(pos_exps, scalars), max_size=4)).map(
    lambda t: _series([((0, 0), t[0])] + t[1])
).filter(lambda s: not s.coeff((0, 0)).is_zero())


@CASES
@given(nonzero_series, nonzero_series)
def test_valuation_is_multiplicative(a, b):
    assert valuation(a * b) == exp_add(valuation(a), valuation(b))


@CASES
@given(nonzero_series, nonzero_series)
def test_valuation_of_sum_dominates_minimum(a, b):
    s = a + b
    if s.is_zero():
        return
    low = min(W.weight_of(valuation(a)), W.weight_of(valuation(b)))
    assert W.weight_of(valuation(s)) >= low


@CASES
@given(units, st.integers(1, 8))
def test_unit_times_inverse_is_one(u, t):
    bound = QuadReal(Fraction(t, 2))
    inv = unit_inverse(u, bound)
    one = GSeries.constant(W, 1)
    assert series_equal_upto(u * inv, one, bound)


@CASES
@given(nonzero_series)
def test_monomial_unit_round_trip(a):
    form = factor_monomial_unit(a)
    assert form.unit.coeff(W.zero()) != CycScalar.rational(0)
    assert all(w.sign() >= 0 for w in form.unit.weights)
    assert GSeries.monomial(W, form.gamma) * form.unit == a


@CASES
@given(nonzero_series, nonzero_series, st.tuples(st.integers(0, 1), st.integers(0, 1)))
def test_galois_preserves_support_and_is_a_homomorphism(a, b, mu):
    ta, tb = galois_apply(a, 2, mu), galois_apply(b, 2, mu)
    assert ta.support() == a.support()
    assert galois_apply(a * b, 2, mu) == ta * tb
    assert galois_apply(a + b, 2, mu) == ta + tb


@CASES
@given(nonzero_series, nonzero_series, nonzero_series)
def test_multiplication_associative_and_commutative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@CASES
@given(nonzero_series, nonzero_series, st.integers(0, 10))
def test_truncated_multiplication_agrees_below_bound(a, b, t):
    bound = QuadReal(Fraction(t, 2))
    if bound < a.low_weight() or bound < b.low_weight():
        return
    at, bt = a.truncate(bound), b.truncate(bound)
    prod = at * bt
    assert series_equal_upto(prod, a * b, prod.trunc)
    assert series_equal_upto(bt * at, prod, prod.trunc)


@CASES
@given(st.lists(st.dictionaries(exps, scalars, min_size=1, max_size=4), min_size=1, max_size=6),
       st.integers(0, 2**32))
def test_echelon_pivots_ignore_row_order(rows, seed):
    shuffled = list(rows)
    random.Random(seed).shuffle(shuffled)
    # a dependent row must not change the pivot set either
    extra = dict(rows[0])
    assert echelon_pivots(rows, W) == echelon_pivots(shuffled, W)
    assert echelon_pivots(rows + [extra], W) == echelon_pivots(rows, W)
