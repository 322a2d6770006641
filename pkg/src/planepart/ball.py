"""Midpoint-radius balls over dyadic numbers.

A ball ``Ball(mid, rad, exp)`` denotes the closed interval
``[(mid - rad) * 2**exp, (mid + rad) * 2**exp]`` with integer ``mid`` and
integer ``rad >= 0``.  Every operation computes the exact midpoint first and
then rounds it to ``prec`` bits; the rounding error is pushed into the radius,
and radii only ever round up.  Containment of the true value is therefore
preserved through any chain of operations.
"""

from __future__ import annotations

from fractions import Fraction


def _ceil_shift(r: int, s: int) -> int:
    """ceil(r / 2**s) for r >= 0, s >= 0."""
    return -((-r) >> s)


class Ball:
    __slots__ = ("mid", "rad", "exp", "prec")

    def __init__(self, mid: int, rad: int = 0, exp: int = 0, prec: int = 128):
        if rad < 0:
            raise ValueError("radius must be non-negative")
        self.mid, self.rad, self.exp, self.prec = mid, rad, exp, prec
        self._normalize()

    @classmethod
    def exact(cls, value: int, prec: int = 128) -> "Ball":
        return cls(value, 0, 0, prec)

    def _normalize(self) -> None:
        extra = abs(self.mid).bit_length() - self.prec
        if extra > 0:
            half = 1 << (extra - 1)
            q, rem = divmod(self.mid + half, 1 << extra)
            # |mid - q * 2**extra| <= 2**(extra-1), at most 1 unit after the shift
            inexact = (self.mid - q * (1 << extra)) != 0
            self.mid = q
            self.rad = _ceil_shift(self.rad, extra) + (1 if inexact else 0)
            self.exp += extra

    # -- queries -------------------------------------------------------

    def lower(self) -> Fraction:
        return Fraction(self.mid - self.rad) * Fraction(2) ** self.exp

    def upper(self) -> Fraction:
        return Fraction(self.mid + self.rad) * Fraction(2) ** self.exp

    def midpoint(self) -> Fraction:
        return Fraction(self.mid) * Fraction(2) ** self.exp

    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lower(), self.upper()

    def contains(self, value) -> bool:
        v = Fraction(value)
        return self.lower() <= v <= self.upper()

    def rel_radius(self) -> Fraction:
        """rad / |mid|; infinite for a ball centred at zero with positive radius."""
        if self.mid == 0:
            return Fraction(0) if self.rad == 0 else Fraction(10**100)
        return Fraction(self.rad, abs(self.mid))

    def overlaps(self, other: "Ball") -> bool:
        return not (self.lower() > other.upper() or self.upper() < other.lower())

    # -- arithmetic ----------------------------------------------------

    def _align(self, other: "Ball"):
        e = min(self.exp, other.exp)
        s1, s2 = self.exp - e, other.exp - e
        return (self.mid << s1, self.rad << s1, other.mid << s2, other.rad << s2, e)

    def __add__(self, other):
        if isinstance(other, int):
            other = Ball.exact(other, self.prec)
        m1, r1, m2, r2, e = self._align(other)
        return Ball(m1 + m2, r1 + r2, e, max(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.exp, self.prec)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Ball.exact(other, self.prec)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Ball(self.mid * other, self.rad * abs(other), self.exp, self.prec)
        m1, r1, m2, r2 = self.mid, self.rad, other.mid, other.rad
        return Ball(m1 * m2, abs(m1) * r2 + abs(m2) * r1 + r1 * r2,
                    self.exp + other.exp, max(self.prec, other.prec))

    __rmul__ = __mul__

    def div_int(self, k: int) -> "Ball":
        """Divide by a positive integer; the quotient keeps at least ``prec`` bits."""
        if k <= 0:
            raise ValueError("divisor must be a positive integer")
        g = self.prec + k.bit_length() + 2
        m = self.mid << g
        q, rem = divmod(m, k)
        r = -((-(self.rad << g)) // k) + (1 if rem else 0)
        return Ball(q, r, self.exp - g, self.prec)

    def __pow__(self, e: int):
        if e != 2:
            raise NotImplementedError("only squaring is supported")
        return self * self

    def __repr__(self) -> str:
        return f"Ball(mid={self.mid}, rad={self.rad}, exp={self.exp}, prec={self.prec})"


def ball_gt(a: Ball, b: Ball):
    """Interval verdict on a > b, as one of True, False, None (undecided)."""
    if a.lower() > b.upper():
        return True
    if a.upper() < b.lower():
        return False
    return None
