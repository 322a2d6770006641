"""The polynomial family P_n(x) with P_n(1) = pp(n).

    P_0 = 1,   P_n(x) = (x/n) * sum_{k=1}^{n} sigma_2(k) P_{n-k}(x).

P_n is stored as integer numerators A_{n,m} over the fixed denominator n!.
Multiplying the recurrence through by n! keeps it integral:

    A_{n,m+1} = sum_k sigma_2(k) * (n-1)!/(n-k)! * A_{n-k,m}.
"""

from __future__ import annotations

import math
import operator
from fractions import Fraction
from itertools import repeat

from planepart.divisors import sigma2_table
from planepart.partitions import DEFAULT_MEMORY_CAP, ResourceLimitError
from planepart.poly import ExactPoly
from planepart.reports import IneqReport, Kind, compare


def estimate_family_bytes(N: int) -> int:
    # (N+1)(N+2)/2 coefficients, each at most about log2(N!) + 2N log2(N) bits
    bits = math.lgamma(N + 1) / math.log(2) + 2 * N * math.log2(max(N, 2))
    return int((N + 1) * (N + 2) / 2 * (bits / 8 + 40))


class PolyFamily:
    """P_0..P_N as exact polynomials; ``A[n][m]`` are the integer numerators over n!."""

    def __init__(self, A: list[list[int]], weights: tuple[int, ...]):
        self.A = A
        self.weights = weights
        self.polys = tuple(ExactPoly(a, math.factorial(n), canonical=True) for n, a in enumerate(A))

    @property
    def N(self) -> int:
        return len(self.A) - 1

    def __getitem__(self, n) -> ExactPoly:
        return self.polys[n]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def values_at(self, x) -> list[Fraction]:
        """[P_0(x), ..., P_N(x)] exactly."""
        return [p(x) for p in self.polys]

    def require(self, n: int) -> None:
        if n > self.N:
            raise ValueError(f"family covers n <= {self.N}, need {n}")


def generate_family(N: int, weights=None, memory_cap: int | None = None) -> PolyFamily:
    """Build P_0..P_N.  ``weights[k]`` replaces sigma_2(k) (e.g. k**2 gives the S_n family)."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    cap = DEFAULT_MEMORY_CAP if memory_cap is None else memory_cap
    need = estimate_family_bytes(N)
    if need > cap:
        raise ResourceLimitError(f"family up to N={N} needs ~{need} bytes, cap is {cap}")
    if weights is None:
        w = sigma2_table(N).padded if N else (0,)
    else:
        w = tuple(weights[: N + 1])
    A: list[list[int]] = [[1]]
    add, mul = operator.add, operator.mul
    for n in range(1, N + 1):
        acc = [0] * (n + 1)
        ff = 1  # (n-1)! / (n-k)!
        for k in range(1, n + 1):
            if k > 1:
                ff *= n - k + 1
            c = w[k] * ff
            src = A[n - k]
            hi = len(src) + 1
            acc[1:hi] = map(add, acc[1:hi], map(mul, repeat(c), src))
        A.append(acc)
    return PolyFamily(A, w)


def derivative_by_recurrence(family: PolyFamily, n: int) -> ExactPoly:
    """sum_{k=1}^{n} (sigma_2(k)/k) P_{n-k}(x), which must equal P_n'(x).

    Over the denominator n! the k-th term has integer weight
    sigma_2(k) * C(n, k) * (k-1)!.
    """
    family.require(n)
    if n == 0:
        return ExactPoly([])
    w = family.weights
    acc = [0] * n
    for k in range(1, n + 1):
        c = w[k] * math.comb(n, k) * math.factorial(k - 1)
        for m, v in enumerate(family.A[n - k]):
            acc[m] += c * v
    return ExactPoly(acc, math.factorial(n))


def increment_poly(family: PolyFamily, n: int) -> ExactPoly:
    """P_n - P_{n-1}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    family.require(n)
    return family[n] - family[n - 1]


def lower_bound_terms(n: int, m: int) -> list[Fraction]:
    """Coefficients C(n+l-1, 2l-1)/l! for l = 1..m of the lower-bound polynomial.

    These are the coefficients of S_n(x), the family built with weights k**2 in
    place of sigma_2(k); S_n(x) < P_n(x) for n > 1 and x >= 1.
    """
    if n <= 1:
        raise ValueError("n must be > 1")
    if m < 1:
        raise ValueError("m must be >= 1")
    return [Fraction(math.comb(n + l - 1, 2 * l - 1), math.factorial(l)) for l in range(1, m + 1)]


def lower_bound_value(n: int, m: int, x) -> Fraction:
    """sum_{l=1}^{m} C(n+l-1, 2l-1)/l! * x^l."""
    x = Fraction(x)
    return sum((t * x ** l for l, t in enumerate(lower_bound_terms(n, m), start=1)), Fraction(0))


def check_monotone(family: PolyFamily, N: int, x_probe=1) -> IneqReport:
    """P_{n+1}(x) > P_n(x) at x = x_probe for 1 <= n <= N (exact)."""
    x = Fraction(x_probe)
    if x < 1:
        raise ValueError("x_probe must be >= 1")
    family.require(N + 1)
    vals = [family[n](x) for n in range(N + 2)]
    report = IneqReport(Kind.CUSTOM, {"name": "monotone", "n_min": 1, "n_max": N, "x": str(x)})
    for n in range(1, N + 1):
        report.add((n,), compare(vals[n + 1], vals[n]), vals[n + 1] - vals[n])
    return report
