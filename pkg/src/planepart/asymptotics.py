"""Leading-order asymptotics of pp(n) and sampled checks of the expansions behind them.

    pp(n) ~ C2 * n^r * exp(C1 * n^(2/3)),
    C1 = 3 zeta(3)^(1/3) / 2^(2/3),
    C2 = zeta(3)^(7/36) 2^(25/36) e^(zeta'(-1)) / sqrt(12 pi),   r = -25/36.

Interval checks run in mpmath's ``iv`` context; a verdict is HOLDS or FAILS
only when the whole enclosure decides it, otherwise UNCERTAIN.
"""

from __future__ import annotations

import csv
import io
import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from mpmath import iv, mp

from planepart.reports import Verdict

CONSTANT_DIGITS = 80
POINTS_PER_DECADE = 64


@contextmanager
def _iv_dps(dps: int):
    old = iv.prec
    iv.dps = dps
    try:
        yield
    finally:
        iv.prec = old


# -- constants -----------------------------------------------------------------


def zeta3_series(digits: int):
    """zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 C(2k, k)), with a truncation bound.

    Returns (value, error_bound) as mpf; the series alternates with terms
    shrinking faster than 4^-k, so the first omitted term bounds the error.
    """
    with mp.workdps(digits + 10):
        total = mp.mpf(0)
        k = 1
        c = 2  # C(2k, k)
        while True:
            term = mp.mpf(1) / (k**3 * c)
            if term < mp.mpf(10) ** (-(digits + 5)):
                break
            total += term if k % 2 else -term
            k += 1
            c = c * (2 * k) * (2 * k - 1) // (k * k)
        return +(total * 5 / 2), term * 5 / 2


@dataclass(frozen=True)
class Constants:
    digits: int
    zeta3: object
    zeta3_err: object
    zeta_prime_m1: object
    C1: object
    C2: object
    r: Fraction = Fraction(-25, 36)

    def as_dict(self) -> dict:
        return {
            "digits": self.digits,
            "zeta(3)": mp.nstr(self.zeta3, 30),
            "zeta'(-1)": mp.nstr(self.zeta_prime_m1, 30),
            "C1": mp.nstr(self.C1, 30),
            "C2": mp.nstr(self.C2, 30),
            "r": str(self.r),
        }


@lru_cache(maxsize=None)
def constants(digits: int = CONSTANT_DIGITS) -> Constants:
    """Constants at ``digits`` decimal digits (at least 64), computed once per precision.

    zeta(3) comes from the central-binomial series and is checked against
    mpmath's zeta; zeta'(-1) = 1/12 - log A (Glaisher-Kinkelin) is checked
    against mpmath's zeta derivative.
    """
    digits = max(digits, 64)
    with mp.workdps(digits + 10):
        z3, err = zeta3_series(digits)
        tol = mp.mpf(10) ** (-digits)
        if abs(z3 - mp.zeta(3)) > max(err, tol):
            raise ArithmeticError("zeta(3) series disagrees with mpmath")
        zp = mp.mpf(1) / 12 - mp.log(mp.glaisher)
        if abs(zp - mp.zeta(-1, derivative=1)) > tol:
            raise ArithmeticError("zeta'(-1) cross-check failed")
        c1 = 3 * mp.cbrt(z3) / mp.cbrt(4)
        c2 = z3 ** (mp.mpf(7) / 36) * mp.power(2, mp.mpf(25) / 36) * mp.exp(zp) / mp.sqrt(12 * mp.pi)
        return Constants(digits, z3, err, zp, c1, c2)


# -- Wright's estimate ---------------------------------------------------------


@dataclass(frozen=True)
class WrightEstimate:
    n: int
    digits: int
    estimate: object  # mpf
    constants: Constants

    def ratio(self, exact: int):
        """exact / estimate at the working precision."""
        with mp.workdps(self.digits):
            return mp.mpf(exact) / self.estimate

    def __str__(self) -> str:
        return mp.nstr(self.estimate, min(self.digits, 30))


def wright_estimate(n: int, digits: int = 30) -> WrightEstimate:
    """C2 n^(-25/36) exp(C1 n^(2/3)) at ``digits`` decimal digits."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if digits < 16:
        raise ValueError("digits must be >= 16")
    k = constants(max(CONSTANT_DIGITS, digits + 10))
    with mp.workdps(digits + 10):
        nn = mp.mpf(n)
        val = k.C2 * nn ** (mp.mpf(-25) / 36) * mp.exp(k.C1 * nn ** (mp.mpf(2) / 3))
    with mp.workdps(digits):
        return WrightEstimate(n, digits, +val, k)


# -- sampling ------------------------------------------------------------------


def log_uniform(n_lo: int, n_hi: int, per_decade: int = POINTS_PER_DECADE) -> list[int]:
    """Distinct integers n_lo * 10^(j / per_decade), rounded, clipped to [n_lo, n_hi]; both ends included."""
    if n_lo < 1 or n_hi < n_lo:
        raise ValueError("need 1 <= n_lo <= n_hi")
    steps = math.ceil(per_decade * math.log10(n_hi / n_lo)) if n_hi > n_lo else 0
    pts = {n_lo, n_hi}
    for j in range(steps + 1):
        pts.add(min(n_hi, max(n_lo, round(n_lo * 10 ** (j / per_decade)))))
    return sorted(pts)


def _interval_str(x) -> str:
    return f"[{mp.nstr(mp.mpf(x.a), 20)}, {mp.nstr(mp.mpf(x.b), 20)}]"


# -- second-difference residual ------------------------------------------------


@dataclass
class KonkavReport:
    s: Fraction
    n_values: list
    residuals: list          # interval enclosures of R_n
    dps: int

    def sup_abs(self, lo: int | None = None, hi: int | None = None):
        """Upper bound for max |R_n| over samples with lo <= n <= hi (mpf)."""
        vals = [max(abs(mp.mpf(r.a)), abs(mp.mpf(r.b)))
                for n, r in zip(self.n_values, self.residuals)
                if (lo is None or n >= lo) and (hi is None or n <= hi)]
        return max(vals) if vals else None

    def sup_by_decade(self) -> list[tuple[int, object]]:
        out = []
        d = 10 ** math.floor(math.log10(self.n_values[0]))
        while d <= self.n_values[-1]:
            s = self.sup_abs(d, 10 * d - 1)
            if s is not None:
                out.append((d, s))
            d *= 10
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "residual_lo", "residual_hi"])
        for n, r in zip(self.n_values, self.residuals):
            w.writerow([n, mp.nstr(mp.mpf(r.a), 20), mp.nstr(mp.mpf(r.b), 20)])
        return buf.getvalue()


def expansion_check_konkav(s, n_lo: int = 100, n_hi: int = 10_000,
                           per_decade: int = POINTS_PER_DECADE, dps: int = 60) -> KonkavReport:
    """R_n = (2n^s - (n+1)^s - (n-1)^s - (1-s) s n^(s-2)) n^(3-s) on a log-uniform grid."""
    if n_lo < 10 or n_hi > 10**6:
        raise ValueError("range must lie within [10, 10^6]")
    s = Fraction(s)
    ns = log_uniform(n_lo, n_hi, per_decade)
    out = []
    with _iv_dps(dps):
        si = iv.mpf(s.numerator) / s.denominator
        main = iv.mpf((1 - s).numerator * s.numerator) / ((1 - s).denominator * s.denominator)
        for n in ns:
            x = iv.mpf(n)
            if s.denominator == 1 and s >= 0:
                # integral exponent: evaluate exactly
                e = int(s)
                r = Fraction(2 * n**e - (n + 1) ** e - (n - 1) ** e) - (1 - s) * s * Fraction(n) ** (e - 2)
                out.append(iv.mpf(r.numerator) / r.denominator * x ** (3 - e))
                continue
            r = 2 * x**si - (x + 1) ** si - (x - 1) ** si - main * x ** (si - 2)
            out.append(r * x ** (3 - si))
    return KonkavReport(s, ns, out, dps)


# -- two-sided exponential bound -----------------------------------------------


@dataclass
class CorollaryRow:
    n: int
    lower: object
    middle: object
    upper: object
    lower_ok: bool | None
    upper_ok: bool | None

    @property
    def verdict(self) -> Verdict:
        if self.lower_ok is False or self.upper_ok is False:
            return Verdict.FAILS
        if self.lower_ok and self.upper_ok:
            return Verdict.HOLDS
        return Verdict.UNCERTAIN


@dataclass
class CorollaryReport:
    C1: object
    rows: list = field(default_factory=list)

    @property
    def holds_from(self) -> int | None:
        """Least sampled n from which every later sample HOLDS, or None."""
        first = None
        for row in reversed(self.rows):
            if row.verdict is not Verdict.HOLDS:
                break
            first = row.n
        return first

    def all_hold(self) -> bool:
        return all(r.verdict is Verdict.HOLDS for r in self.rows)

    def counts(self) -> dict:
        out = {v.value: 0 for v in Verdict}
        for r in self.rows:
            out[r.verdict.value] += 1
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "lower", "middle", "upper", "verdict"])
        for r in self.rows:
            w.writerow([r.n, _interval_str(r.lower), _interval_str(r.middle), _interval_str(r.upper),
                        r.verdict.value])
        return buf.getvalue()


def expansion_check_corollary(C1=None, n_lo: int = 1000, n_hi: int = 100_000,
                              per_decade: int = POINTS_PER_DECADE, dps: int = 60,
                              n_values=None) -> CorollaryReport:
    """Check 1 + (C1/9) n^(-4/3) < exp(C1 (2n^(2/3) - (n+1)^(2/3) - (n-1)^(2/3))) < 1 + (4 C1/9) n^(-4/3).

    ``C1`` defaults to the Wright constant; any positive number or Fraction is
    accepted.  ``n_values`` overrides the log-uniform grid.
    """
    ns = sorted(set(n_values)) if n_values is not None else log_uniform(n_lo, n_hi, per_decade)
    if ns and ns[0] < 2:
        raise ValueError("n must be >= 2")
    report = CorollaryReport(C1)
    with _iv_dps(dps):
        if C1 is None:
            k = constants(max(CONSTANT_DIGITS, dps + 10))
            c = iv.mpf([k.C1 - mp.mpf(10) ** -k.digits, k.C1 + mp.mpf(10) ** -k.digits])
            report.C1 = k.C1
        elif isinstance(C1, (int, Fraction, float)):
            C1 = Fraction(C1)
            if C1 <= 0:
                raise ValueError("C1 must be positive")
            c = iv.mpf(C1.numerator) / C1.denominator
        else:
            if C1 <= 0:
                raise ValueError("C1 must be positive")
            c = iv.mpf(C1)
        two3 = iv.mpf(2) / 3
        four3 = iv.mpf(4) / 3
        for n in ns:
            x = iv.mpf(n)
            mid = iv.exp(c * (2 * x**two3 - (x + 1) ** two3 - (x - 1) ** two3))
            t = x ** (-four3)
            lo = 1 + c / 9 * t
            hi = 1 + 4 * c / 9 * t
            report.rows.append(CorollaryRow(n, lo, mid, hi, lo < mid, mid < hi))
    return report
