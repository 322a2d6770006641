import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from planepart import intpoly as ip
from planepart import roots as rf
from planepart.family import generate_family
from planepart.inequalities import turan_poly
from planepart.poly import ExactPoly

F = Fraction


def _from_roots(rs):
    p = [1]
    for r in rs:
        p = [(p[i - 1] if i else 0) - r * (p[i] if i < len(p) else 0) for i in range(len(p) + 1)]
    return p


def test_two_real_roots():
    s = rf.sturm_real_roots(ExactPoly.from_coeffs([0, F(-5, 2), F(1, 2)]))
    assert len(s.real_roots) == 2 and s.real_roots[0].exact
    roots = [rf.refine_root(r, F(1, 10**9)) for r in s.real_roots]
    assert abs(roots[0].mid) < F(1, 10**8) and abs(roots[1].mid - 5) < F(1, 10**8)
    assert rf.rounded_root(roots[1], 3) == 5000


def test_double_root_at_zero():
    p = ExactPoly.from_coeffs([0, 0, F(35, 12), 0, F(1, 12)])
    s = rf.sturm_real_roots(p)
    assert len(s.real_roots) == 1
    assert s.real_roots[0].exact and s.real_roots[0].lo == 0
    assert s.real_roots[0].multiplicity == 2
    ab = rf.aberth_roots(p)
    assert sum(c.multiplicity for c in ab.complex_roots) == 4
    zero = [c for c in ab.complex_roots if c.kind == "real"]
    assert len(zero) == 1 and zero[0].multiplicity == 2
    assert not rf.is_hyperbolic(p)


def test_cubic():
    p = ExactPoly.from_coeffs([0, F(-10, 3), 0, F(1, 3)])
    r = rf.largest_real_root(p, F(1, 10**12))
    assert abs(r.mid - F(math.isqrt(10 * 10**24), 10**12)) < F(1, 10**11)
    assert len(rf.sturm_real_roots(p).real_roots) == 3
    assert rf.sturm_aberth_agree(p)


def test_hyperbolicity():
    assert rf.is_hyperbolic(ExactPoly([6, 26, 24]))
    assert not rf.is_hyperbolic(ExactPoly([3, 12, 13]))
    assert rf.is_hyperbolic(ExactPoly([1, 1]))
    assert rf.is_hyperbolic(ExactPoly(_from_roots([2, 2, 2, -1])))
    with pytest.raises(ValueError):
        rf.is_hyperbolic(ExactPoly([5]))


def test_no_positive_real_part():
    summ = rf.positive_real_part_roots(ExactPoly([1, 0, 1]))
    assert summ.complex_roots == []
    assert rf.largest_positive_root(ExactPoly([1, 0, 1])) is None


def test_turan_three_has_one_positive_root():
    fam = generate_family(4)
    t = turan_poly(fam, 3)
    assert rf.count_positive_roots(t) == 1
    assert rf.descartes_bound(t) >= 1


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        rf.sturm_real_roots(ExactPoly([]))
    with pytest.raises(ValueError):
        rf.aberth_roots([0, 0])


def test_rounding_on_boundaries():
    # x = 1/4 and x = 3/8 sit exactly on half-up boundaries
    r = rf.largest_real_root(ExactPoly([-1, 4]), F(1, 10))
    assert rf.rounded_root(r, 1) == 3
    r = rf.largest_real_root(ExactPoly([-3, 8]), F(1, 10))
    assert rf.rounded_root(r, 2) == 38
    # irrational just below a boundary: sqrt(2.25 - 1e-12)
    p = ExactPoly([-(225 * 10**10 - 1), 0, 10**12])
    r = rf.largest_real_root(p, F(1, 10))
    assert rf.rounded_root(r, 1) == 15
    assert rf.rounded_root(r, 2) == 150
    assert rf.format_rounded(150, 2) == "1.50"
    assert rf.format_rounded(-7, 1) == "-0.7"
    assert rf.format_rounded(3, 0) == "3"


def test_interval_restriction():
    p = ExactPoly(_from_roots([-3, -1, 2, 7]))
    s = rf.sturm_real_roots(p, (0, 5))
    assert len(s.real_roots) == 1
    assert s.real_roots[0].lo <= 2 <= s.real_roots[0].hi
    assert rf.count_positive_roots(p) == 2
    assert rf.largest_real_root(p, F(1, 100), (None, 0)).mid == pytest.approx(-1, abs=0.01)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=1, max_size=9))
def test_integer_roots_recovered(rs):
    p = _from_roots(rs)
    s = rf.sturm_real_roots(p)
    distinct = sorted(set(rs))
    assert len(s.real_roots) == len(distinct)
    for r, want in zip(s.real_roots, distinct):
        assert r.lo <= want <= r.hi
        assert r.multiplicity == rs.count(want)
    assert rf.is_hyperbolic(p)
    assert rf.descartes_bound(p) >= rf.count_positive_roots(p)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=12))
def test_descartes_dominates_sturm(c):
    if not any(c[1:]):
        return
    assert rf.descartes_bound(c) >= rf.count_positive_roots(c)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6), st.lists(st.integers(1, 9), max_size=3))
def test_aberth_matches_known_roots(real, quad):
    # real linear factors times x^2 + q irreducible quadratics
    p = _from_roots(real)
    for q in quad:
        p = ip.strip([sum(p[i - j] * c for j, c in enumerate([q, 0, 1]) if 0 <= i - j < len(p))
                      for i in range(len(p) + 2)])
    ab = rf.aberth_roots(p)
    assert not ab.uncertain
    assert sum(c.multiplicity for c in ab.complex_roots) == len(p) - 1
    reals = sorted(c.re for c in ab.complex_roots if c.kind == "real")
    assert reals == pytest.approx(sorted(set(real)), abs=1e-9)
    assert rf.sturm_aberth_agree(p)


def test_aberth_on_family_members():
    fam = generate_family(30)
    rng = random.Random(1)
    for _ in range(6):
        a, b = rng.randrange(2, 15), rng.randrange(1, 15)
        p = fam[a] * fam[b] - fam[a + b]
        assert rf.sturm_aberth_agree(p)
