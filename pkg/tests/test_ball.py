from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from planepart.ball import Ball, ball_gt

big = st.integers(-(10**60), 10**60)
prec = st.integers(8, 96)


def _ball(v, p):
    return Ball.exact(v, p)


@given(big, big, prec)
def test_add_sub_mul_contain_exact(a, b, p):
    x, y = _ball(a, p), _ball(b, p)
    assert x.contains(a) and y.contains(b)
    assert (x + y).contains(a + b)
    assert (x - y).contains(a - b)
    assert (x * y).contains(a * b)
    assert (x * 7).contains(7 * a)
    assert (x ** 2).contains(a * a)


@given(big, st.integers(1, 10**9), prec)
def test_div_int_contains_quotient(a, k, p):
    assert _ball(a, p).div_int(k).contains(Fraction(a, k))


@given(st.lists(st.integers(1, 10**30), min_size=1, max_size=30), prec)
def test_chained_sums_stay_enclosed(vals, p):
    acc = Ball.exact(0, p)
    for v in vals:
        acc = (acc + Ball.exact(v, p)) * 3
    exact = 0
    for v in vals:
        exact = (exact + v) * 3
    assert acc.contains(exact)


def test_rounding_widens():
    b = Ball.exact(2**100 + 1, 32)
    assert b.rad > 0
    assert b.contains(2**100 + 1)
    assert abs(b.mid).bit_length() <= 32


def test_queries():
    b = Ball(10, 2, -1)
    assert b.interval() == (4, 6)
    assert b.midpoint() == 5
    assert b.rel_radius() == Fraction(1, 5)
    assert b.overlaps(Ball(12, 0, -1)) and not b.overlaps(Ball(13, 0, -1))
    assert Ball(0, 0).rel_radius() == 0
    with pytest.raises(ValueError):
        Ball(1, -1)
    with pytest.raises(ValueError):
        b.div_int(0)
    with pytest.raises(NotImplementedError):
        b ** 3


def test_ball_gt():
    assert ball_gt(Ball(10), Ball(5, 4)) is True
    assert ball_gt(Ball(1), Ball(5, 3)) is False
    assert ball_gt(Ball(5, 1), Ball(5, 1)) is None
