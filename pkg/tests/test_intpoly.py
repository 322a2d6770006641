from fractions import Fraction

from hypothesis import given, settings, strategies as st

from planepart import intpoly as ip


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _from_roots(rs):
    p = [1]
    for r in rs:
        p = _mul(p, [-r, 1])
    return p


def test_basics():
    assert ip.strip([1, 2, 0, 0]) == [1, 2]
    assert ip.deg([]) == -1
    assert ip.content([4, -6, 8]) == 2
    assert ip.primitive([-4, 6, -8]) == [-2, 3, -4]  # sign kept
    assert ip.derivative([5, 3, 2]) == [3, 4]
    assert ip.eval_fraction([1, 0, 1], Fraction(1, 2)) == Fraction(5, 4)
    assert ip.eval_sign([-2, 0, 1], Fraction(3, 2)) == 1
    assert ip.strip_zero_roots([0, 0, 3, 1]) == ([3, 1], 2)
    assert ip.descartes_bound([1, -3, 0, 2]) == 2
    assert ip.variations([1, 0, -1, 2]) == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-15, 15), min_size=1, max_size=8))
def test_multiplicity_factors(rs):
    p = _from_roots(rs)
    factors = ip.multiplicity_factors(p)
    for k, h in factors.items():
        for r in set(rs):
            if rs.count(r) == k:
                assert ip.eval_fraction(h, r) == 0
    assert sum(k * ip.deg(h) for k, h in factors.items()) == len(rs)
    assert ip.is_squarefree(p) == (len(set(rs)) == len(rs))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5), st.lists(st.integers(-9, 9), min_size=1, max_size=5))
def test_gcd_of_products(xs, ys):
    g = ip.gcd(_from_roots(xs + ys), _from_roots(ys))
    assert ip.deg(g) == len(ys)
    assert ip.exact_quotient(_from_roots(xs + ys), g) is not None


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=8))
def test_root_bounds_cover_roots(rs):
    p = _from_roots(rs)
    assert max(abs(r) for r in rs) <= ip.cauchy_bound(p)
    assert max(abs(r) for r in rs) <= ip.lagrange_bound(p)
