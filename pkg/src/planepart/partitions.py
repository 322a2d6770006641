"""Plane-partition numbers pp(n) from the sigma_2-weighted recurrence.

    n * pp(n) = sum_{k=1}^{n} sigma_2(k) * pp(n - k),   pp(0) = 1.

Two backends: exact Python integers (:func:`pp_exact`) and dyadic balls with
outward rounding (:func:`pp_ball`).  Tables can be cached as plain text.
"""

from __future__ import annotations

import operator
import os
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from planepart.ball import Ball
from planepart.divisors import Sigma2Table, sigma2_digest, sigma2_table
from planepart.reports import IneqReport, Kind, compare

RECURRENCE_ID = "sigma2-recurrence"
FORMAT_VERSION = 1
DEFAULT_MEMORY_CAP = 4 * 2**30
DEFAULT_BALL_PREC = 192


class ResourceLimitError(RuntimeError):
    """Estimated memory for a requested table exceeds the configured cap."""


class CacheError(ValueError):
    """Base class for cache-file problems."""


class CacheVersionError(CacheError):
    pass


class CacheHeaderError(CacheError):
    pass


class CacheHashError(CacheError):
    pass


class CacheIntegrityError(CacheError):
    pass


def estimate_table_bytes(N: int) -> int:
    """Rough memory estimate for pp(0..N); pp(n) has about 0.873 n^(2/3) decimal digits."""
    # sum n^(2/3) ~ (3/5) N^(5/3); 0.4153 bytes per decimal digit; ~40 bytes object overhead
    digits = 0.873 * 0.6 * N ** (5 / 3)
    return int(digits * 0.4153 + 40 * (N + 1))


def check_memory(N: int, cap: int | None) -> None:
    cap = DEFAULT_MEMORY_CAP if cap is None else cap
    need = estimate_table_bytes(N)
    if need > cap:
        raise ResourceLimitError(f"pp table up to N={N} needs ~{need} bytes, cap is {cap}")


@dataclass(frozen=True)
class PPTable:
    """Exact pp(0..N).  Immutable once built."""

    values: tuple[int, ...]
    sigma2_sha: str
    generated_by: str = RECURRENCE_ID

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class BallPPTable:
    """Enclosures of pp(0..N) as :class:`Ball` values."""

    balls: list[Ball]
    precision_bits: int
    degraded: bool = False
    degraded_at: int | None = None

    @property
    def N(self) -> int:
        return len(self.balls) - 1

    @property
    def mids(self) -> list[Fraction]:
        return [b.midpoint() for b in self.balls]

    @property
    def radii(self) -> list[Fraction]:
        return [Fraction(b.rad) * Fraction(2) ** b.exp for b in self.balls]

    def __getitem__(self, n) -> Ball:
        return self.balls[n]

    def __len__(self) -> int:
        return len(self.balls)


def _sigma_for(N: int, sigma: Sigma2Table | None) -> tuple[int, ...]:
    if N == 0:
        return (0,)
    if sigma is None or sigma.N < N:
        sigma = sigma2_table(N)
    return sigma.padded[: N + 1]


def pp_exact(N: int, sigma: Sigma2Table | None = None, memory_cap: int | None = None) -> PPTable:
    """Exact pp(0..N) via the recurrence.  Each division by n is checked to be exact."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    check_memory(N, memory_cap)
    s = _sigma_for(N, sigma)
    pp = [1]
    mul = operator.mul
    for n in range(1, N + 1):
        total = sum(map(mul, s[1 : n + 1], reversed(pp)))
        q, r = divmod(total, n)
        if r:
            raise ArithmeticError(f"recurrence sum at n={n} not divisible by n")
        pp.append(q)
    return PPTable(tuple(pp), sigma2_digest(s[1:]))


def _round_down(v: int, prec: int) -> int:
    extra = v.bit_length() - prec
    return v if extra <= 0 else (v >> extra) << extra


def _round_up(v: int, prec: int) -> int:
    extra = v.bit_length() - prec
    return v if extra <= 0 else -((-v) >> extra) << extra


def pp_ball(N: int, precision_bits: int = DEFAULT_BALL_PREC,
            sigma: Sigma2Table | None = None, memory_cap: int | None = None) -> BallPPTable:
    """Ball enclosures of pp(0..N) with ``precision_bits``-bit endpoints.

    All weights sigma_2(k) are positive, so lower and upper endpoints propagate
    independently: the weighted sums are formed exactly over the terms that
    matter at this precision (the rest is bounded and added to the upper
    sum), divided by n with inward snapping to integers (pp(n) is an
    integer), then rounded outward to ``precision_bits`` bits.  The table is flagged degraded once a relative
    radius exceeds 2**(-precision_bits/2).
    """
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    check_memory(N, memory_cap)
    s = _sigma_for(N, sigma)
    limit = Fraction(1, 2 ** (precision_bits // 2))
    balls = [Ball.exact(1, precision_bits)]
    lows, highs = [1], [1]
    peak = [1]  # running max of highs
    degraded_at = None
    mul = operator.mul
    K = 1
    for n in range(1, N + 1):
        # Drop terms k > K once the tail is far below the working precision.
        # Since sigma_2(k) < 2n^2 the tail is at most 2n^3 * max(highs[:n-K]);
        # it is dropped from the lower sum (terms are positive) and added to
        # the upper one.
        floor_bits = lows[n - 1].bit_length() - precision_bits - 2
        while K < n and (2 * n**3 * peak[n - K - 1]).bit_length() > floor_bits:
            K += 1
        tail = 2 * n**3 * peak[n - K - 1] if K < n else 0
        sig = s[1 : K + 1]
        lo = -(-sum(map(mul, sig, reversed(lows[n - K :]))) // n)
        hi = (sum(map(mul, sig, reversed(highs[n - K :]))) + tail) // n
        lo, hi = _round_down(lo, precision_bits), _round_up(hi, precision_bits)
        lows.append(lo)
        highs.append(hi)
        peak.append(max(peak[-1], hi))
        b = Ball(lo + hi, hi - lo, -1, precision_bits)
        balls.append(b)
        if degraded_at is None and b.rel_radius() > limit:
            degraded_at = n
    return BallPPTable(balls, precision_bits, degraded_at is not None, degraded_at)


def recurrence_holds(values, n: int, s) -> bool:
    """n * pp(n) == sum sigma_2(k) pp(n-k), with ``s`` indexable from 1."""
    return n * values[n] == sum(s[k] * values[n - k] for k in range(1, n + 1))


def check_step_bound(N: int, table: PPTable | None = None) -> IneqReport:
    """3 pp(n) > pp(n+1) for 1 <= n <= N; equality is expected exactly at n = 1."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if table is None or table.N < N + 1:
        table = pp_exact(N + 1)
    report = IneqReport(Kind.STEP, {"n_min": 1, "n_max": N})
    pp = table.values
    for n in range(1, N + 1):
        lhs, rhs = 3 * pp[n], pp[n + 1]
        report.add((n,), compare(lhs, rhs), lhs - rhs)
    return report


# -- cache files ---------------------------------------------------------

_MAGIC = re.compile(r"# planepart-table v(\d+)")


def save_table(table: PPTable, path) -> None:
    lines = [f"# planepart-table v{FORMAT_VERSION}", f"# N={table.N}", f"# sigma2sha={table.sigma2_sha}"]
    lines.extend(map(str, table.values))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_header(path) -> dict:
    """Parse and return the header fields without touching the body."""
    with open(path, encoding="ascii", newline="") as fh:
        head = [fh.readline() for _ in range(3)]
    return _parse_header(head)


def _parse_header(head: list[str]) -> dict:
    if len(head) < 3 or not all(h.endswith("\n") for h in head):
        raise CacheHeaderError("truncated header")
    m = _MAGIC.fullmatch(head[0].rstrip("\n"))
    if not m:
        raise CacheHeaderError(f"bad magic line {head[0]!r}")
    version = int(m.group(1))
    if version != FORMAT_VERSION:
        raise CacheVersionError(f"unsupported table version {version}")
    mn = re.fullmatch(r"# N=(\d+)", head[1].rstrip("\n"))
    mh = re.fullmatch(r"# sigma2sha=([0-9a-f]{64})", head[2].rstrip("\n"))
    if not mn or not mh:
        raise CacheHeaderError("malformed N or sigma2sha header line")
    return {"version": version, "N": int(mn.group(1)), "sigma2sha": mh.group(1)}


def load_table(path, spot_checks: int = 16, seed: int | None = None) -> PPTable:
    """Load a cached table, re-verifying the header hash and the recurrence.

    The recurrence is re-checked at ``spot_checks`` indices: always the last
    index, plus pseudo-random ones (a tampered value breaks the identity at its
    own index and at every later index).
    """
    with open(path, encoding="ascii", newline="") as fh:
        text = fh.read()
    lines = text.split("\n")
    if "\r" in text:
        raise CacheHeaderError("CR characters are not allowed")
    hdr = _parse_header([ln + "\n" for ln in lines[:3]] if len(lines) > 3 else lines)
    if lines[-1] != "":
        raise CacheHeaderError("file must end with a newline")
    body = lines[3:-1]
    N = hdr["N"]
    if len(body) != N + 1:
        raise CacheHeaderError(f"header says N={N} but file has {len(body)} values")
    bad = next((v for v in body if not v.isascii() or not v.isdigit()), None)
    if bad is not None:
        raise CacheHeaderError(f"not a decimal integer: {bad!r}")
    values = tuple(map(int, body))
    s = _sigma_for(N, None)
    if sigma2_digest(s[1:]) != hdr["sigma2sha"]:
        raise CacheHashError("sigma2sha does not match sigma_2 table of the stated size")
    if values[0] != 1:
        raise CacheIntegrityError("pp(0) must be 1")
    if N >= 1:
        rng = random.Random(N if seed is None else seed)
        picks = {N}
        pool = range(1, N + 1)
        picks.update(rng.sample(pool, min(spot_checks - 1, N)))
        for n in sorted(picks):
            if not recurrence_holds(values, n, s):
                raise CacheIntegrityError(f"recurrence spot-check failed at n={n}")
    return PPTable(values, hdr["sigma2sha"])


def default_cache_dir() -> str:
    return os.environ.get("PLANEPART_CACHE_DIR") or os.path.join(
        os.path.expanduser("~"), ".cache", "planepart")
