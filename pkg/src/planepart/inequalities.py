"""Inequality polynomials for the family P_n and the sweeps that check them.

Naming follows the objects:

* ``bo_poly(a, b)``    = P_a P_b - P_{a+b}                  (Bessenrodt-Ono defect)
* ``cft_poly(a, b)``   = P_{a-1} P_{b+1} - P_a P_b          (Chern-Fu-Tang style defect)
* ``turan_poly(a)``    = P_a^2 - P_{a-1} P_{a+1}            (= cft_poly(a+1, a-1))
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from planepart.ball import Ball
from planepart.family import PolyFamily
from planepart.partitions import BallPPTable, PPTable
from planepart.poly import ExactPoly
from planepart.reports import IneqReport, Kind, Verdict, compare, compare_intervals
from planepart import roots as rf

# Pairs (a, b), 2 <= b <= a, a + b < 12, where pp(a) pp(b) < pp(a+b).
BO_PP_EXCEPTIONS = frozenset([(a, 2) for a in range(2, 10)] + [(a, 3) for a in range(3, 6)])


def bo_poly(family: PolyFamily, a: int, b: int) -> ExactPoly:
    if a < 1 or b < 1:
        raise ValueError("a, b must be >= 1")
    family.require(a + b)
    return family[a] * family[b] - family[a + b]


def cft_poly(family: PolyFamily, a: int, b: int) -> ExactPoly:
    if a < 1 or b < 0:
        raise ValueError("need a >= 1 and b >= 0")
    family.require(max(a, b + 1))
    return family[a - 1] * family[b + 1] - family[a] * family[b]


def turan_poly(family: PolyFamily, a: int) -> ExactPoly:
    if a < 1:
        raise ValueError("a must be >= 1")
    family.require(a + 1)
    return family[a] * family[a] - family[a - 1] * family[a + 1]


def jensen_poly(alpha, d: int, n: int) -> ExactPoly:
    """sum_{k=0}^{d} C(d, k) alpha(n+k) X^k for a sequence of ints or rationals."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < 0 or len(alpha) <= n + d:
        raise ValueError(f"sequence of length {len(alpha)} does not cover [{n}, {n + d}]")
    return ExactPoly.from_coeffs([math.comb(d, k) * Fraction(alpha[n + k]) for k in range(d + 1)])


# -- plane-partition sweeps ----------------------------------------------------


def verify_bo_pp(table: PPTable, sum_min: int = 12, sum_max: int = 472) -> IneqReport:
    """pp(a) pp(b) vs pp(a+b) for 2 <= b <= a and sum_min <= a+b <= sum_max.

    Use sum_min = 4 to include the small region where the inequality can fail
    (see ``BO_PP_EXCEPTIONS``).
    """
    if sum_max < sum_min:
        raise ValueError("empty range")
    if table.N < sum_max:
        raise ValueError(f"table covers n <= {table.N}, need {sum_max}")
    pp = table.values
    report = IneqReport(Kind.BO_PP, {"sum_min": sum_min, "sum_max": sum_max, "b_min": 2})
    for n in range(max(sum_min, 4), sum_max + 1):
        for b in range(2, n // 2 + 1):
            a = n - b
            lhs, rhs = pp[a] * pp[b], pp[n]
            report.add((a, b), compare(lhs, rhs), lhs - rhs)
    return report


# n where pp(n)^2 <= pp(n-1) pp(n+1)
LOGCONCAVE_EXCEPTIONS = frozenset({1, 3, 5, 7, 9, 11})


def verify_logconcave_pp(table, n_min: int, n_max: int) -> IneqReport:
    """pp(n)^2 > pp(n-1) pp(n+1) for n_min <= n <= n_max.

    With a :class:`BallPPTable` the comparison is made on enclosures and may
    come back UNCERTAIN; the caller then retries at higher precision.
    """
    if n_min < 1:
        raise ValueError("n_min must be >= 1")
    if table.N < n_max + 1:
        raise ValueError(f"table covers n <= {table.N}, need {n_max + 1}")
    if isinstance(table, BallPPTable):
        report = IneqReport(Kind.LOGCONCAVE_PP, {"n_min": n_min, "n_max": n_max, "backend": "ball",
                                                 "precision_bits": table.precision_bits},
                            interval_backed=True)
        for n in range(n_min, n_max + 1):
            sq: Ball = table[n] * table[n]
            pr: Ball = table[n - 1] * table[n + 1]
            lhs, rhs = sq.interval(), pr.interval()
            v = compare_intervals(lhs, rhs)
            report.add((n,), v, (lhs[0] - rhs[1], lhs[1] - rhs[0]))
        return report
    pp = table.values
    report = IneqReport(Kind.LOGCONCAVE_PP, {"n_min": n_min, "n_max": n_max, "backend": "exact"})
    for n in range(n_min, n_max + 1):
        lhs, rhs = pp[n] * pp[n], pp[n - 1] * pp[n + 1]
        report.add((n,), compare(lhs, rhs), lhs - rhs)
    return report


def pp_sums_table(table: PPTable, b_max: int = 9) -> list[int]:
    """[sum_{k=2}^{11-b} min(pp(k) pp(b) - pp(k+b), 0) for b = 2..b_max].

    Only the negative terms count: this is the lower bound used for the
    middle block of the decomposition at x = 1.
    """
    if table.N < 11:
        raise ValueError("table must cover n = 11")
    pp = table.values
    return [sum(min(pp[k] * pp[b] - pp[k + b], 0) for k in range(2, 12 - b)) for b in range(2, b_max + 1)]


# -- polynomial sweeps ---------------------------------------------------------


def minimal_sums_table(family: PolyFamily, x=2, b_max: int = 10) -> list[Fraction]:
    """[sum_{k=1}^{11-b} min(P_k(x) P_b(x) - P_{k+b}(x), 0) for b = 1..b_max]."""
    family.require(11)
    v = family_values(family, x, 11)
    return [sum(min(v[k] * v[b] - v[k + b], 0) for k in range(1, 12 - b)) for b in range(1, b_max + 1)]


def family_values(family: PolyFamily, x, upto: int) -> list[Fraction]:
    family.require(upto)
    x = Fraction(x)
    return [family[n](x) for n in range(upto + 1)]


def verify_bo_poly(family: PolyFamily, x_probe, region) -> IneqReport:
    """Exact sign of P_{a,b}(x_probe) over ``region``, an iterable of (a, b) with b <= a.

    See :func:`bo_region` for the usual region shapes.
    """
    x = Fraction(x_probe)
    if x <= 0:
        raise ValueError("x_probe must be positive")
    pairs = sorted(set(region))
    top = max((a + b for a, b in pairs), default=0)
    v = family_values(family, x, top)
    report = IneqReport(Kind.BO_POLY, {"x": str(x), "pairs": len(pairs)})
    for a, b in pairs:
        d = v[a] * v[b] - v[a + b]
        report.add((a, b), compare(d, 0), d)
    return report


def bo_region(sum_min: int = 2, sum_max: int = 24, b_min: int = 1) -> list[tuple[int, int]]:
    """All (a, b) with b_min <= b <= a and sum_min <= a+b <= sum_max."""
    return [(n - b, b) for n in range(sum_min, sum_max + 1) for b in range(b_min, n // 2 + 1)]


def even_a_coefficient_scan(family: PolyFamily, a_max: int, a_min: int = 2) -> IneqReport:
    """Coefficient signs of P_a^2 - P_{a-1} P_{a+1} = sum_k B_{2a,k} x^k.

    A record HOLDS when every coefficient is >= 0 and B_{2a,2} > 0 (witness:
    B_{2a,2}); otherwise it FAILS with the most negative coefficient as
    witness.  Only even a is expected to hold; odd a is an observation.
    """
    family.require(a_max + 1)
    report = IneqReport(Kind.TURAN_POLY, {"a_min": a_min, "a_max": a_max, "name": "even-a-coefficients"})
    for a in range(a_min, a_max + 1):
        t = turan_poly(family, a)
        smallest = min(t.coeffs())
        b2 = t.coeff(2)
        if smallest >= 0 and b2 > 0:
            report.add((a,), Verdict.HOLDS, b2)
        else:
            report.add((a,), Verdict.FAILS, min(smallest, b2))
    return report


# -- decomposition -------------------------------------------------------------


@dataclass
class DecompositionBreakdown:
    """Parts of P_{a,b}(x) = x * (L + R1 + R2 + R31 + R32 + R33).

    Stored parts include the factor x, so they sum to P_{a,b}(x) itself.
    ``flags`` records which of the usual lower bounds hold at this point.
    """

    a: int
    b: int
    A: int
    B: int
    x: Fraction
    k0: int
    L: Fraction
    R1: Fraction
    R2: Fraction
    R31: Fraction
    R32: Fraction
    R33: Fraction
    flags: dict = field(default_factory=dict)

    @property
    def total(self) -> Fraction:
        return self.L + self.R1 + self.R2 + self.R31 + self.R32 + self.R33


def decomposition_eval(family: PolyFamily, a: int, b: int, A: int, B: int, x) -> DecompositionBreakdown:
    """Split P_{a,b}(x) into the L / R1 / R2 / R31 / R32 / R33 pieces.

    With f_k = sigma_2(k) (P_{a-k} P_b / a - P_{a+b-k} / (a+b)) and
    k0 = a - max(B-b, A) + 1:  L collects the tail terms of P_{a+b}, R1 = f_1,
    R2 = f_2..f_{k0-1}, R31 = f_{k0}..f_{a-A}, R32 = f_{a-A+1}..f_{a-1}, R33 = f_a.
    When k0 = 1 the term f_1 is counted in the R3 block and R1 = 0.
    """
    if not (1 <= A <= b <= a):
        raise ValueError("need 1 <= A <= b <= a")
    if B < 2:
        raise ValueError("need B >= 2")
    if a + b < B:
        raise ValueError("need a + b >= B")
    family.require(a + b)
    x = Fraction(x)
    s = family.weights
    v = family_values(family, x, a + b)
    k0 = a - max(B - b, A) + 1

    def f(k):
        return s[k] * (v[a - k] * v[b] / a - v[a + b - k] / (a + b))

    L = -sum((Fraction(s[k + a], a + b) * v[b - k] for k in range(1, b + 1)), Fraction(0))
    R1 = f(1) if k0 >= 2 else Fraction(0)
    R2 = sum((f(k) for k in range(2, k0)), Fraction(0))
    start3 = max(k0, 1)
    R31 = sum((f(k) for k in range(start3, a - A + 1)), Fraction(0))
    R32 = sum((f(k) for k in range(max(a - A + 1, start3), a)), Fraction(0))
    R33 = f(a)

    flags = {
        "L>-4abP_b": L > -4 * a * b * v[b],
        "R1>(b/2a^2)P_{a-1}P_b": R1 > Fraction(b, 2 * a * a) * v[a - 1] * v[b],
        "R2>0": R2 > 0,
        "R33>0": R33 > 0,
        "R32=0": R32 == 0,
        "R31=0": R31 == 0,
    }
    parts = [x * t for t in (L, R1, R2, R31, R32, R33)]
    out = DecompositionBreakdown(a, b, A, B, x, k0, *parts, flags=flags)
    if out.total != v[a] * v[b] - v[a + b]:
        raise ArithmeticError("decomposition does not sum to P_{a,b}(x)")
    return out


# -- final-step bound polynomials ---------------------------------------------


class FinalStep(str, enum.Enum):
    GRAD7 = "grad7"
    X2FINAL = "x2final"
    PP_FINAL = "pp-final"


def binomial_poly(shift: int, k: int) -> ExactPoly:
    """C(a + shift, k) as a polynomial in a: (a+shift)(a+shift-1)...(a+shift-k+1)/k!."""
    out = ExactPoly.constant(1)
    for i in range(k):
        out = out * ExactPoly([shift - i, 1])
    return out * Fraction(1, math.factorial(k))


def final_step_poly(kind) -> ExactPoly:
    """The bracketed bound polynomial in the variable a for each final step."""
    kind = FinalStep(kind)
    a3 = ExactPoly([0, 0, 0, 1])
    if kind is FinalStep.GRAD7:
        terms = [binomial_poly(l - 2, 2 * l - 1) * Fraction(5**l, math.factorial(l)) for l in range(1, 6)]
        lead = -8
    elif kind is FinalStep.X2FINAL:
        terms = [binomial_poly(l - 2, 2 * l - 1) * Fraction(2**l, math.factorial(l)) for l in range(1, 9)]
        lead = -1290
    else:
        # sum_l C((a-1)+l-1, 2l-1)/l!: the lower bound for pp(a-1)
        terms = [binomial_poly(l - 2, 2 * l - 1) * Fraction(1, math.factorial(l)) for l in range(1, 4)]
        lead = -76
    out = a3 * lead
    for t in terms:
        out = out + t
    return out


@dataclass
class ThresholdReport:
    kind: FinalStep
    poly: ExactPoly
    largest_root: rf.RealRoot | None
    threshold: int          # least integer a0 with poly(a) > 0 for every integer a >= a0
    confirmed_upto: int     # exact positivity checked on threshold..confirmed_upto
    leading_positive: bool

    @property
    def ok(self) -> bool:
        return self.leading_positive


def final_step_threshold(kind, margin: int = 50) -> ThresholdReport:
    """Least integer a0 beyond which the bound polynomial is positive.

    Above the largest real root the sign is that of the leading coefficient;
    positivity is additionally confirmed by exact evaluation at every integer
    from the crossover to ``margin`` past the root.  Integers below the root
    are then walked down while the value stays positive.
    """
    p = final_step_poly(kind)
    r = rf.largest_real_root(p, Fraction(1, 10**6))
    lead_pos = p.leading > 0
    start = 1 if r is None else math.floor(r.hi) + 1
    top = start + margin
    for a in range(start, top + 1):
        if p(a) <= 0:
            raise ArithmeticError(f"{kind}: value at {a} is not positive above the largest root")
    a0 = start
    while a0 - 1 >= 1 and p(a0 - 1) > 0:
        a0 -= 1
    return ThresholdReport(FinalStep(kind), p, r, a0, top, lead_pos)
