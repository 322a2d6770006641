import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import family_series

from planepart.family import (
    check_monotone, derivative_by_recurrence, estimate_family_bytes, generate_family, increment_poly,
    lower_bound_terms, lower_bound_value,
)
from planepart.partitions import ResourceLimitError, pp_exact
from planepart.poly import ExactPoly
from planepart.reports import Verdict


@pytest.fixture(scope="module")
def fam():
    return generate_family(40)


def test_first_polys(fam):
    assert fam[0] == 1
    assert fam[1] == ExactPoly.x()
    assert fam[2] == ExactPoly.from_coeffs([0, Fraction(5, 2), Fraction(1, 2)])
    assert fam[3].denominator == 6  # stored over n!


def test_matches_generating_function(fam):
    ref = family_series(25)
    for n in range(26):
        assert fam[n] == ExactPoly.from_coeffs(ref[n]), n


def test_value_at_one_is_pp(fam):
    assert fam.values_at(1) == list(pp_exact(40).values)


def test_structure(fam):
    for n in range(1, 41):
        p = fam[n]
        assert p.degree == n
        assert p.coeff(0) == 0
        assert p.leading == Fraction(1, math.factorial(n))
        assert p.coeff(1) == Fraction(sum(d * d for d in range(1, n + 1) if n % d == 0), n)


def test_derivative_identity(fam):
    for n in range(0, 41):
        assert derivative_by_recurrence(fam, n) == fam[n].derivative(), n


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 40), st.fractions(min_value=1, max_value=30, max_denominator=7))
def test_square_weight_family_is_a_lower_bound(n, x):
    squares = [k * k for k in range(41)]
    S = generate_family(40, weights=squares)
    terms = lower_bound_terms(n, n)
    assert S[n] == ExactPoly.from_coeffs([0] + terms)
    assert lower_bound_value(n, n, x) == S[n](x)
    assert S[n](x) < generate_family(n)[n](x)


def test_monotone_and_increment(fam):
    assert check_monotone(fam, 39).all_hold
    assert check_monotone(fam, 20, Fraction(7, 3)).all_hold
    inc = increment_poly(fam, 10)
    assert inc == fam[10] - fam[9]
    assert inc(1) == pp_exact(10)[10] - pp_exact(10)[9]


def test_errors(fam):
    with pytest.raises(ValueError):
        generate_family(-1)
    with pytest.raises(ValueError):
        fam.require(41)
    with pytest.raises(ValueError):
        check_monotone(fam, 5, Fraction(1, 2))
    with pytest.raises(ValueError):
        increment_poly(fam, 0)
    with pytest.raises(ValueError):
        lower_bound_terms(1, 1)
    with pytest.raises(ValueError):
        lower_bound_terms(5, 0)
    with pytest.raises(ResourceLimitError):
        generate_family(200, memory_cap=estimate_family_bytes(200) - 1)
    assert len(generate_family(0)) == 1


def test_monotone_reports_witness(fam):
    rep = check_monotone(fam, 5)
    assert rep.verdict_at(1) is Verdict.HOLDS
    assert rep.records[0].witness == 2  # pp(2) - pp(1)
