"""Sum-of-squared-divisors table and the elementary inequalities built on it."""

from __future__ import annotations

import hashlib
from functools import cached_property

from planepart.reports import IneqReport, Kind, compare


class Sigma2Table:
    """Immutable table of sigma_2(n) = sum of d**2 over divisors d of n, for 1 <= n <= N.

    Indexing is 1-based: ``table[n]`` is sigma_2(n).  ``table[0]`` raises.
    """

    def __init__(self, values):
        self._values = tuple(values)
        if not self._values or self._values[0] != 0:
            raise ValueError("values must be a 0-padded sequence with values[0] == 0")

    @property
    def N(self) -> int:
        return len(self._values) - 1

    def __len__(self) -> int:
        return self.N

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self._values[n]
        if n < 1:
            raise IndexError(f"sigma_2 is indexed from 1, got {n}")
        return self._values[n]

    def values(self) -> list[int]:
        """sigma_2(1), ..., sigma_2(N)."""
        return list(self._values[1:])

    @property
    def padded(self) -> tuple[int, ...]:
        """Underlying tuple with a dummy 0 at index 0 (for zero-copy slicing)."""
        return self._values

    @cached_property
    def sha256(self) -> str:
        return sigma2_digest(self._values[1:])

    def __repr__(self) -> str:
        head = ", ".join(map(str, self._values[1:6]))
        return f"Sigma2Table(N={self.N}, [{head}{', ...' if self.N > 5 else ''}])"


def sigma2_digest(values) -> str:
    """SHA-256 over the newline-joined decimal values sigma_2(1..N)."""
    h = hashlib.sha256()
    h.update("\n".join(map(str, values)).encode("ascii"))
    return h.hexdigest()


def sigma2_table(N: int) -> Sigma2Table:
    """Divisor sieve: for each d, add d**2 to every multiple of d.  O(N log N) additions."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    s = [0] * (N + 1)
    for d in range(1, N + 1):
        dd = d * d
        for m in range(d, N + 1, d):
            s[m] += dd
    return Sigma2Table(s)


def sigma2_trial(n: int) -> int:
    """sigma_2(n) by trial division up to sqrt(n).  Reference oracle for the sieve."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            e = n // d
            total += d * d
            if e != d:
                total += e * e
        d += 1
    return total


def check_sigma2_even_logconcave(N: int, table: Sigma2Table | None = None) -> IneqReport:
    """(sigma_2(n)/n)^2 > sigma_2(n-1)/(n-1) * sigma_2(n+1)/(n+1) for even 2 <= n <= N.

    Compared as integers: sigma_2(n)^2 (n-1)(n+1) vs n^2 sigma_2(n-1) sigma_2(n+1).
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    s = table if table is not None and table.N >= N + 1 else sigma2_table(N + 1)
    report = IneqReport(Kind.CUSTOM, {"name": "sigma2-even-logconcave", "n_min": 2, "n_max": N})
    for n in range(2, N + 1, 2):
        lhs = s[n] ** 2 * (n - 1) * (n + 1)
        rhs = n * n * s[n - 1] * s[n + 1]
        report.add((n,), compare(lhs, rhs), lhs - rhs)
    return report


def check_sigma2_upper_bound(N: int, table: Sigma2Table | None = None) -> IneqReport:
    """n^2 <= sigma_2(n) < 2 n^2 for 1 <= n <= N.

    The witness is the slack 2n^2 - sigma_2(n); the lower bound failing is also a FAILS.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    s = table if table is not None and table.N >= N else sigma2_table(N)
    report = IneqReport(Kind.CUSTOM, {"name": "sigma2-upper-bound", "n_min": 1, "n_max": N})
    for n in range(1, N + 1):
        v = s[n]
        verdict = compare(2 * n * n, v)
        if v < n * n:
            verdict = compare(v, n * n)
        report.add((n,), verdict, 2 * n * n - v)
    return report
