from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from planepart import roots as rf
from planepart.family import generate_family
from planepart.inequalities import (
    BO_PP_EXCEPTIONS, LOGCONCAVE_EXCEPTIONS, FinalStep, binomial_poly, bo_poly, bo_region, cft_poly,
    decomposition_eval, even_a_coefficient_scan, family_values, final_step_poly, jensen_poly,
    minimal_sums_table, pp_sums_table, turan_poly, verify_bo_poly, verify_bo_pp, verify_logconcave_pp,
)
from planepart.partitions import pp_ball, pp_exact
from planepart.poly import ExactPoly
from planepart.reports import Verdict


@pytest.fixture(scope="module")
def pp():
    return pp_exact(600)


def test_polys_reduce_to_pp_at_one(family60, pp):
    for a in range(1, 31):
        for b in range(1, 61 - a):
            assert bo_poly(family60, a, b)(1) == pp[a] * pp[b] - pp[a + b]


def test_turan_is_cft_on_the_diagonal(family60):
    for a in range(1, 59):
        assert turan_poly(family60, a) == -cft_poly(family60, a, a)


def test_turan_sign_at_one_is_logconcavity(family60, pp):
    rep = verify_logconcave_pp(pp, 1, 58)
    for a in range(1, 59):
        positive = turan_poly(family60, a)(1) > 0
        assert positive == (rep.verdict_at(a) is Verdict.HOLDS)
    assert set(rep.with_verdict(Verdict.FAILS)) == {(n,) for n in LOGCONCAVE_EXCEPTIONS if n > 0}


def test_jensen_degree_two_is_logconcavity(pp):
    vals = pp.values
    for n in range(0, 499):
        J = jensen_poly(vals, 2, n)
        assert rf.is_hyperbolic(J) == (vals[n + 1] ** 2 >= vals[n] * vals[n + 2]), n


def test_jensen_errors(pp):
    with pytest.raises(ValueError):
        jensen_poly(pp.values, 0, 3)
    with pytest.raises(ValueError):
        jensen_poly([1, 2], 2, 0)
    assert jensen_poly([1, 1, 3], 2, 0) == ExactPoly([1, 2, 3])


def test_bo_pp_small_region(pp):
    rep = verify_bo_pp(pp, 4, 40)
    assert set(rep.with_verdict(Verdict.FAILS)) == BO_PP_EXCEPTIONS
    assert rep.counts()["EQUALITY"] == 0
    with pytest.raises(ValueError):
        verify_bo_pp(pp, 20, 10)
    with pytest.raises(ValueError):
        verify_bo_pp(pp, 12, 601)


def test_logconcave_ball_backend(pp):
    balls = pp_ball(600, 128)
    rep = verify_logconcave_pp(balls, 1, 599)
    exact = verify_logconcave_pp(pp, 1, 599)
    assert rep.interval_backed
    for r, e in zip(rep, exact):
        assert r.verdict in (e.verdict, Verdict.UNCERTAIN)
    assert rep.counts()["UNCERTAIN"] == 0
    with pytest.raises(ValueError):
        verify_logconcave_pp(pp, 0, 10)


def test_sum_tables(family60, pp):
    assert pp_sums_table(pp, 9) == [-106, -42, -17, -30, -16, -24, -20, -13]
    assert minimal_sums_table(family60, 2, 10)[0] == -641
    # same sums at x = 1, except the k = 1 term the pp table leaves out
    m1 = minimal_sums_table(family60, 1, 9)
    for b, got in zip(range(2, 10), pp_sums_table(pp, 9)):
        assert m1[b - 1] - min(pp[1] * pp[b] - pp[1 + b], 0) == got
    with pytest.raises(ValueError):
        pp_sums_table(pp_exact(10))


def test_bo_poly_region(family60):
    region = bo_region(2, 24, 1)
    assert all(b <= a and 2 <= a + b <= 24 for a, b in region)
    assert len(region) == len(set(region))
    rep = verify_bo_poly(family60, 6, region)
    assert rep.all_hold
    assert verify_bo_poly(family60, 5, [(1, 1)]).verdict_at(1, 1) is Verdict.EQUALITY
    with pytest.raises(ValueError):
        verify_bo_poly(family60, 0, region)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 29), st.integers(1, 29), st.fractions(min_value=0, max_value=20, max_denominator=9))
def test_bo_poly_symmetric(a, b, x):
    fam = generate_family(58)
    assert bo_poly(fam, a, b)(x) == bo_poly(fam, b, a)(x)


def test_family_values(family60):
    assert family_values(family60, 1, 5) == [1, 1, 3, 6, 13, 24]


def test_even_a_scan(family60):
    rep = even_a_coefficient_scan(family60, 40)
    for (a,), r in zip([r.index for r in rep], rep):
        if a % 2 == 0:
            assert r.verdict is Verdict.HOLDS, a
    assert rep.verdict_at(3) is Verdict.FAILS
    assert rep.records[0].witness == turan_poly(family60, 2).coeff(2)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_decomposition_sums_and_flags(family60, data):
    a = data.draw(st.integers(2, 25))
    b = data.draw(st.integers(1, a))
    A = data.draw(st.integers(1, b))
    B = data.draw(st.integers(2, a + b))
    x = data.draw(st.fractions(min_value=1, max_value=10, max_denominator=5))
    d = decomposition_eval(family60, a, b, A, B, x)
    assert d.total == bo_poly(family60, a, b)(x)
    assert d.k0 == a - max(B - b, A) + 1
    if d.k0 < 2:
        assert d.R1 == 0
    assert isinstance(d.flags["R2>0"], bool)


def test_decomposition_errors(family60):
    with pytest.raises(ValueError):
        decomposition_eval(family60, 3, 5, 1, 4, 1)
    with pytest.raises(ValueError):
        decomposition_eval(family60, 5, 3, 1, 1, 1)
    with pytest.raises(ValueError):
        decomposition_eval(family60, 5, 3, 1, 9, 1)


def test_binomial_poly():
    p = binomial_poly(3, 2)
    for a in range(0, 20):
        assert p(a) == Fraction((a + 3) * (a + 2), 2)
    assert binomial_poly(0, 0) == 1


def test_final_step_polys_have_positive_lead():
    for kind in FinalStep:
        p = final_step_poly(kind)
        assert p.leading > 0
        assert final_step_poly(kind.value) == p
    assert final_step_poly("grad7").degree == 9


def test_argument_checks(family60):
    with pytest.raises(ValueError):
        bo_poly(family60, 0, 1)
    with pytest.raises(ValueError):
        cft_poly(family60, 1, -1)
    with pytest.raises(ValueError):
        turan_poly(family60, 0)
    with pytest.raises(ValueError):
        bo_poly(family60, 40, 40)
