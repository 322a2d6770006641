"""Integer-coefficient polynomial kernels used by the root finder.

Polynomials are plain lists of ints, constant term first, with no trailing
zeros; ``[]`` is the zero polynomial.  All scalings applied here are by
positive factors, so signs (and hence Sturm counts) are preserved.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce


def strip(p: list[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def deg(p: list[int]) -> int:
    return len(p) - 1


def content(p: list[int]) -> int:
    return reduce(math.gcd, p, 0)


def primitive(p: list[int]) -> list[int]:
    """Divide by the (positive) content."""
    g = content(p)
    return [v // g for v in p] if g > 1 else list(p)


def derivative(p: list[int]) -> list[int]:
    return [i * v for i, v in enumerate(p)][1:]


def sign(v) -> int:
    return (v > 0) - (v < 0)


def eval_sign(p: list[int], x) -> int:
    """Sign of p at a rational x, by homogeneous integer Horner evaluation."""
    if not p:
        return 0
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    acc = 0
    bpow = 1
    for c in reversed(p):
        acc = acc * a + c * bpow
        bpow *= b
    return sign(acc)


def eval_fraction(p: list[int], x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def prem_positive(a: list[int], b: list[int]) -> list[int]:
    """A positive multiple of the remainder of a divided by b."""
    r = list(a)
    db = deg(b)
    lb = b[-1]
    slb, alb = sign(lb), abs(lb)
    while r and deg(r) >= db:
        k = deg(r) - db
        lr = r[-1]
        r = [alb * v for v in r]
        for i, bv in enumerate(b):
            r[i + k] -= slb * lr * bv
        r = strip(r)
    return r


def exact_quotient(a: list[int], b: list[int]) -> list[int]:
    """Primitive part of a / b when b divides a over Q; raises otherwise."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = deg(b)
    lb = b[-1]
    q = [0] * max(deg(a) - db + 1, 0)
    # track q with a common positive scale: a * lb^s = q * b + r
    while r and deg(r) >= db:
        k = deg(r) - db
        lr = r[-1]
        q = [v * lb for v in q]
        q[k] += lr
        r = [v * lb for v in r]
        for i, bv in enumerate(b):
            r[i + k] -= lr * bv
        r = strip(r)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    q = primitive(strip(q))
    if q and sign(q[-1]) != sign(a[-1]) * sign(b[-1]):
        q = [-v for v in q]
    return q


def gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient (primitive remainder sequence)."""
    a, b = primitive(strip(a)), primitive(strip(b))
    while b:
        a, b = b, primitive(prem_positive(a, b))
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


def squarefree_part(p: list[int]) -> list[int]:
    g = gcd(p, derivative(p))
    return exact_quotient(p, g) if deg(g) > 0 else primitive(p)


_PRIMES = (2**61 - 1, 2**31 - 1, 1_000_000_007)


def _gcd_degree_mod(a: list[int], b: list[int], m: int) -> int:
    """Degree of gcd(a mod m, b mod m) over GF(m); -1 if both vanish."""
    def red(p):
        return strip([v % m for v in p])
    a, b = red(a), red(b)
    while b:
        inv = pow(b[-1], -1, m)
        while a and len(a) >= len(b):
            k = len(a) - len(b)
            c = a[-1] * inv % m
            for i, bv in enumerate(b):
                a[i + k] = (a[i + k] - c * bv) % m
            a = strip(a)
        a, b = b, a
    return deg(a)


def is_squarefree(p: list[int]) -> bool:
    """True iff p has no repeated root.  Tries a modular certificate first."""
    p = strip(p)
    if deg(p) < 2:
        return True
    dp = derivative(p)
    for m in _PRIMES:
        if p[-1] % m and (deg(p) * p[-1]) % m:
            if _gcd_degree_mod(p, dp, m) == 0:
                return True
    return deg(gcd(p, dp)) == 0


def gcd_tower(p: list[int]) -> list[list[int]]:
    """[g_0, g_1, ...] with g_0 = p, g_{j+1} = gcd(g_j, g_j'), stopping before the constants.

    A root of multiplicity m is a root of exactly g_0, ..., g_{m-1}.
    """
    out = []
    g = primitive(strip(p))
    if is_squarefree(g):
        return [g] if deg(g) >= 1 else []
    while deg(g) >= 1:
        out.append(g)
        g = gcd(g, derivative(g))
    return out


def multiplicity_factors(p: list[int]) -> dict[int, list[int]]:
    """{m: h_m} where h_m is square-free and vanishes exactly at the roots of multiplicity m."""
    q, k = strip_zero_roots(strip(p))
    if k:
        out = multiplicity_factors(q) if deg(q) >= 1 else {}
        out[k] = [0] + out.get(k, [1])
        return dict(sorted(out.items()))
    tower = gcd_tower(p)
    sqf = [exact_quotient(tower[j], tower[j + 1]) if j + 1 < len(tower) else primitive(tower[j])
           for j in range(len(tower))]
    out = {}
    for j in range(len(sqf)):
        h = exact_quotient(sqf[j], sqf[j + 1]) if j + 1 < len(sqf) else sqf[j]
        if deg(h) >= 1:
            out[j + 1] = h
    return out


def sturm_sequence(p: list[int]) -> list[list[int]]:
    """p, p', and negated remainders (each scaled by a positive factor)."""
    seq = [primitive(p), primitive(derivative(p))]
    if not seq[1]:
        return seq[:1]
    while True:
        r = prem_positive(seq[-2], seq[-1])
        if not r:
            break
        seq.append(primitive([-v for v in r]))
    return seq


def variations(signs) -> int:
    s = [v for v in signs if v]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def variations_at(seq: list[list[int]], x) -> int:
    """Sign variations of the Sturm sequence at x; x may be +inf / -inf as floats."""
    if x == math.inf:
        return variations(sign(q[-1]) for q in seq)
    if x == -math.inf:
        return variations(sign(q[-1]) * (-1) ** deg(q) for q in seq)
    return variations(eval_sign(q, x) for q in seq)


def cauchy_bound(p: list[int]) -> Fraction:
    """1 + max |c_i / c_d|: every root has modulus strictly below it."""
    lc = abs(p[-1])
    return 1 + max((Fraction(abs(c), lc) for c in p[:-1]), default=Fraction(0))


def lagrange_bound(p: list[int]) -> Fraction:
    """max(1, sum |c_i / c_d|)."""
    lc = abs(p[-1])
    return max(Fraction(1), sum((Fraction(abs(c), lc) for c in p[:-1]), Fraction(0)))


def descartes_bound(p: list[int]) -> int:
    """Sign variations of the coefficients: an upper bound on positive roots."""
    return variations(sign(c) for c in p)


def strip_zero_roots(p: list[int]) -> tuple[list[int], int]:
    """(q, k) with p = x^k q and q(0) != 0."""
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    return list(p[k:]), k
