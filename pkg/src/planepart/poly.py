"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored as integer numerators over one shared positive
denominator, lowest degree first.  The coefficient of x**m is
``numerators[m] / denominator``.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import reduce

KARATSUBA_CUTOFF = 512


def _strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add_into(acc: list[int], src: list[int], offset: int = 0) -> None:
    for i, v in enumerate(src):
        acc[i + offset] += v


def convolve(a: list[int], b: list[int]) -> list[int]:
    """Integer coefficient product: schoolbook below the cutoff, Karatsuba above."""
    if not a or not b:
        return []
    if min(len(a), len(b)) <= KARATSUBA_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out
    h = max(len(a), len(b)) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = convolve(a0, b0)
    z2 = convolve(a1, b1)
    sa = [x + y for x, y in _zip_pad(a0, a1)]
    sb = [x + y for x, y in _zip_pad(b0, b1)]
    z1 = convolve(sa, sb)
    for i, v in enumerate(z0):
        z1[i] -= v
    for i, v in enumerate(z2):
        z1[i] -= v
    out = [0] * (len(a) + len(b) - 1)
    _add_into(out, z0)
    _add_into(out, _strip(z1), h)
    _add_into(out, z2, 2 * h)
    return out


def _zip_pad(u, v):
    n = max(len(u), len(v))
    return zip(u + [0] * (n - len(u)), v + [0] * (n - len(v)))


class ExactPoly:
    """Immutable polynomial sum_m (numerators[m] / denominator) x^m.

    ``canonical`` marks a deliberately unreduced representation (e.g. P_n over
    n!); arithmetic results are always reduced.
    """

    __slots__ = ("numerators", "denominator", "canonical")

    def __init__(self, numerators, denominator: int = 1, canonical: bool = False):
        if denominator <= 0:
            raise ValueError("denominator must be positive")
        nums = _strip(list(numerators))
        self.numerators = tuple(nums)
        self.denominator = denominator
        self.canonical = canonical
        if not canonical:
            self._reduce()

    def _reduce(self) -> None:
        g = reduce(math.gcd, self.numerators, self.denominator)
        if g > 1:
            self.numerators = tuple(v // g for v in self.numerators)
            self.denominator //= g
        if not self.numerators:
            self.denominator = 1

    # -- constructors --------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs) -> "ExactPoly":
        """From rational coefficients, constant term first."""
        fr = [Fraction(c) for c in coeffs]
        den = reduce(math.lcm, (f.denominator for f in fr), 1)
        return cls([f.numerator * (den // f.denominator) for f in fr], den)

    @classmethod
    def constant(cls, c) -> "ExactPoly":
        return cls.from_coeffs([c])

    @classmethod
    def x(cls) -> "ExactPoly":
        return cls([0, 1])

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.numerators) - 1

    def is_zero(self) -> bool:
        return not self.numerators

    def coeffs(self) -> list[Fraction]:
        return [Fraction(v, self.denominator) for v in self.numerators]

    def coeff(self, m: int) -> Fraction:
        if 0 <= m < len(self.numerators):
            return Fraction(self.numerators[m], self.denominator)
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeff(self.degree)

    def reduced(self) -> "ExactPoly":
        return ExactPoly(self.numerators, self.denominator)

    def primitive_integer(self) -> list[int]:
        """Integer coefficients of the primitive associate with positive scaling."""
        g = reduce(math.gcd, self.numerators, 0)
        return [v // g for v in self.numerators] if g else []

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = math.lcm(self.denominator, other.denominator)
        s1, s2 = d // self.denominator, d // other.denominator
        a = [v * s1 for v in self.numerators]
        b = [v * s2 for v in other.numerators]
        if len(a) < len(b):
            a, b = b, a
        for i, v in enumerate(b):
            a[i] += v
        return ExactPoly(a, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly([-v for v in self.numerators], self.denominator, self.canonical)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactPoly([v * other for v in self.numerators], self.denominator)
        if isinstance(other, Fraction):
            return ExactPoly([v * other.numerator for v in self.numerators],
                             self.denominator * other.denominator)
        if not isinstance(other, ExactPoly):
            return NotImplemented
        return ExactPoly(convolve(list(self.numerators), list(other.numerators)),
                         self.denominator * other.denominator)

    __rmul__ = __mul__

    def shift(self, k: int = 1) -> "ExactPoly":
        """Multiply by x**k."""
        return ExactPoly([0] * k + list(self.numerators), self.denominator, self.canonical)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.numerators) != len(other.numerators):
            return False
        d1, d2 = self.denominator, other.denominator
        return all(a * d2 == b * d1 for a, b in zip(self.numerators, other.numerators))

    def __hash__(self):
        r = self.reduced()
        return hash((r.numerators, r.denominator))

    def __call__(self, x):
        """Exact value at an integer or rational point."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        d = self.degree
        if d < 0:
            return Fraction(0)
        # homogeneous Horner: sum c_i p^i q^(d-i)
        acc = 0
        qpow = 1
        for c in reversed(self.numerators):
            acc = acc * p + c * qpow
            qpow *= q
        # after the loop qpow == q^(d+1); the value is acc / (den * q^d)
        return Fraction(acc, self.denominator * (qpow // q))

    def derivative(self) -> "ExactPoly":
        return ExactPoly([m * v for m, v in enumerate(self.numerators)][1:], self.denominator)

    # -- io -------------------------------------------------------------

    def to_dict(self, n: int | None = None) -> dict:
        return {
            "n": self.degree if n is None else n,
            "denominator": str(self.denominator),
            "numerators": [str(v) for v in self.numerators],
        }

    def to_json(self, n: int | None = None) -> str:
        return json.dumps(self.to_dict(n))

    @classmethod
    def from_dict(cls, d: dict) -> "ExactPoly":
        return cls([int(v) for v in d["numerators"]], int(d["denominator"]), canonical=True)

    @classmethod
    def from_json(cls, text: str) -> "ExactPoly":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"ExactPoly({self})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: ExactPoly, var: str = "x") -> str:
    """Human form, highest degree first, e.g. ``1/2 x^2 + 5/2 x``."""
    if p.is_zero():
        return "0"
    parts = []
    for m in range(p.degree, -1, -1):
        c = p.coeff(m)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if m == 0 else (var if m == 1 else f"{var}^{m}")
        if a == 1 and m > 0:
            body = mono
        else:
            body = f"{a} {mono}".rstrip()
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
