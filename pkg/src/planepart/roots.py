"""Real-root isolation (Sturm) and complex root approximation (Aberth-Ehrlich).

The two engines are independent: Sturm works on exact integer polynomials and
returns rational enclosures; Aberth runs in multiprecision complex arithmetic
(gmpy2) and returns approximations with inclusion radii.  They are
cross-checked by comparing real-root counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from planepart import intpoly as ip
from planepart.poly import ExactPoly

DEFAULT_PRECISION = 128
MAX_PRECISION = 1024


@dataclass(frozen=True)
class RealRoot:
    lo: Fraction
    hi: Fraction
    multiplicity: int = 1
    # square-free integer factor this root was isolated from (for refinement)
    factor: tuple = field(default=(), compare=False, repr=False)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class ComplexRoot:
    re: float
    im: float
    radius: float
    multiplicity: int
    kind: str  # "real" or "complex"
    re_str: str = ""
    im_str: str = ""


@dataclass
class RootSummary:
    degree: int
    real_roots: list[RealRoot] = field(default_factory=list)
    largest_real: RealRoot | None = None
    complex_roots: list[ComplexRoot] = field(default_factory=list)
    uncertain: bool = False
    precision_bits: int | None = None


def _int_poly(p) -> list[int]:
    if isinstance(p, ExactPoly):
        if p.is_zero():
            raise ValueError("zero polynomial")
        return p.primitive_integer()
    q = ip.strip(p)
    if not q:
        raise ValueError("zero polynomial")
    return ip.primitive(q)


# -- Sturm side ------------------------------------------------------------


class SturmIsolator:
    """Isolating intervals for the real roots of a square-free integer polynomial."""

    def __init__(self, f: list[int]):
        self.f = f
        self.seq = ip.sturm_sequence(f)

    def count(self, a, b) -> int:
        """Distinct roots in (a, b]; a and b must not be roots (infinities allowed)."""
        return ip.variations_at(self.seq, a) - ip.variations_at(self.seq, b)

    def _split_point(self, lo: Fraction, hi: Fraction) -> Fraction:
        for num, den in ((1, 2), (1, 3), (2, 3), (1, 5), (4, 5), (3, 7)):
            m = lo + (hi - lo) * num / den
            if ip.eval_sign(self.f, m) != 0:
                return m
        raise ArithmeticError("no non-root split point found")  # pragma: no cover

    def isolate(self, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
        """Disjoint (lo, hi] intervals each holding exactly one root, in increasing order."""
        out = []
        stack = [(lo, hi, self.count(lo, hi))]
        while stack:
            a, b, c = stack.pop()
            if c == 0:
                continue
            if c == 1:
                out.append((a, b))
                continue
            m = self._split_point(a, b)
            c_left = self.count(a, m)
            stack.append((m, b, c - c_left))
            stack.append((a, m, c_left))
        return sorted(out)

    def refine(self, a: Fraction, b: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
        """Bisect an isolating interval by exact sign evaluation until b - a <= tol."""
        sa, sb = ip.eval_sign(self.f, a), ip.eval_sign(self.f, b)
        if sa * sb >= 0:
            raise ArithmeticError("isolating interval without sign change")
        while b - a > tol:
            m = (a + b) / 2
            sm = ip.eval_sign(self.f, m)
            if sm == 0:
                return m, m
            if sm == sa:
                a = m
            else:
                b = m
        return a, b


def _box(f: list[int]) -> Fraction:
    return Fraction(math.ceil(ip.cauchy_bound(f)) + 1)


def _side(f: list[int], u: Fraction, v: Fraction, limit: Fraction) -> int:
    """Position of the single root in (u, v] relative to ``limit``: -1 below, 0 at, +1 above.

    u and v are not roots of f.
    """
    if u >= limit:
        return 1
    if v < limit:
        return -1
    s_lim = ip.eval_sign(f, limit)
    if s_lim == 0:
        return 0
    return -1 if s_lim == ip.eval_sign(f, v) else 1


def sturm_real_roots(p, interval: tuple | None = None) -> RootSummary:
    """Isolate the distinct real roots of p, with multiplicities from the gcd tower.

    ``interval`` = (lo, hi) restricts to roots in the open interval (lo, hi);
    None endpoints mean unbounded.  Each returned enclosure [lo, hi] holds
    exactly one distinct root (exact roots come back as degenerate intervals).
    """
    g = _int_poly(p)
    degree = ip.deg(g)
    lo_lim, hi_lim = (None, None) if interval is None else interval
    lo_lim = None if lo_lim is None else Fraction(lo_lim)
    hi_lim = None if hi_lim is None else Fraction(hi_lim)
    roots: list[RealRoot] = []
    for mult, h in sorted(ip.multiplicity_factors(g).items()):
        h, k = ip.strip_zero_roots(h)
        if k and _inside(Fraction(0), lo_lim, hi_lim):
            roots.append(RealRoot(Fraction(0), Fraction(0), mult, (0, 1)))
        if ip.deg(h) < 1:
            continue
        iso = SturmIsolator(h)
        box = _box(h)
        pieces = iso.isolate(-box, Fraction(0)) + iso.isolate(Fraction(0), box) if k \
            else iso.isolate(-box, box)
        for u, v in pieces:
            if lo_lim is not None:
                if _side(h, u, v, lo_lim) <= 0:
                    continue
                u = max(u, lo_lim)
            if hi_lim is not None:
                if _side(h, u, v, hi_lim) >= 0:
                    continue
                v = min(v, hi_lim)
            roots.append(RealRoot(u, v, mult, tuple(h)))
    roots = _make_disjoint(roots)
    largest = roots[-1] if roots else None
    return RootSummary(degree, roots, largest)


def _make_disjoint(roots: list[RealRoot]) -> list[RealRoot]:
    """Refine enclosures from different square-free factors until they are ordered and disjoint."""
    roots = sorted(roots, key=lambda r: (r.lo, r.hi))
    while True:
        clash = next((i for i in range(len(roots) - 1) if roots[i].hi > roots[i + 1].lo), None)
        if clash is None:
            return roots
        for i in (clash, clash + 1):
            r = roots[i]
            roots[i] = refine_root(r, (r.hi - r.lo) / 2)
        roots.sort(key=lambda r: (r.lo, r.hi))


def _inside(x, lo, hi) -> bool:
    return (lo is None or x > lo) and (hi is None or x < hi)


def refine_root(root: RealRoot, tol) -> RealRoot:
    """Shrink an enclosure to width <= tol by exact bisection."""
    if root.exact or root.hi - root.lo <= tol:
        return root
    lo, hi = SturmIsolator(list(root.factor)).refine(root.lo, root.hi, Fraction(tol))
    return RealRoot(lo, hi, root.multiplicity, root.factor)


def largest_real_root(p, abs_tol=Fraction(1, 10**6), interval: tuple | None = None) -> RealRoot | None:
    """Enclosure of width <= abs_tol around the largest real root (in ``interval``), or None."""
    r = sturm_real_roots(p, interval).largest_real
    return None if r is None else refine_root(r, Fraction(abs_tol))


def largest_positive_root(p, abs_tol=Fraction(1, 10**6)) -> RealRoot | None:
    return largest_real_root(p, abs_tol, (0, None))


def _round_half_up(x: Fraction, scale: int) -> int:
    return math.floor(x * scale + Fraction(1, 2))


def rounded_root(root: RealRoot, decimals: int) -> int:
    """The root rounded half-up to ``decimals`` places, as an integer count of 10**-decimals.

    The enclosure is bisected at rounding boundaries until the rounded digit
    string is certain; an exact root on a boundary is detected by evaluation.
    """
    scale = 10**decimals
    lo, hi = root.lo, root.hi
    f = list(root.factor)
    while True:
        if lo == hi:
            return _round_half_up(lo, scale)
        a = _round_half_up(lo, scale)
        b = _round_half_up(hi, scale)
        t = 2 * hi * scale
        if t.denominator == 1 and t.numerator % 2 == 1:
            b -= 1  # hi sits on a boundary and the root lies strictly below it
        if a == b:
            return a
        c = (Fraction(a) + Fraction(1, 2)) / scale
        sc = ip.eval_sign(f, c)
        if sc == 0:
            return a + 1
        if sc == ip.eval_sign(f, hi):
            hi = c
        else:
            lo = c


def format_rounded(value: int, decimals: int) -> str:
    sign = "-" if value < 0 else ""
    q, r = divmod(abs(value), 10**decimals)
    return f"{sign}{q}.{r:0{decimals}d}" if decimals else f"{sign}{q}"


def count_positive_roots(p) -> int:
    """Distinct real roots in (0, inf), via Sturm."""
    return len(sturm_real_roots(p, (0, None)).real_roots)


def descartes_bound(p) -> int:
    return ip.descartes_bound(_int_poly(p))


def is_hyperbolic(p) -> bool:
    """True iff all roots are real, counted with multiplicity.

    The count with multiplicity is the sum over the gcd tower g_0, g_1, ... of
    the number of distinct real roots of each g_j.
    """
    g = _int_poly(p)
    if ip.deg(g) < 1:
        raise ValueError("degree must be >= 1")
    total = 0
    for gj in ip.gcd_tower(g):
        seq = ip.sturm_sequence(gj)
        total += ip.variations_at(seq, -math.inf) - ip.variations_at(seq, math.inf)
    return total == ip.deg(g)


# -- Aberth side -----------------------------------------------------------


class NonConvergenceError(RuntimeError):
    pass


def _horner2(coeffs, z):
    """p(z) and p'(z) for coefficients highest degree first."""
    p = coeffs[0]
    dp = 0
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _initial_guesses(f: list[int], prec: int):
    """Points on circles read off the Newton polygon of log|coefficients|; deterministic.

    Each edge of the upper convex hull from index k to l contributes l - k
    points on a circle of radius (|f_k| / |f_l|)^(1/(l-k)), rotated off the real axis.
    """
    n = ip.deg(f)
    pts = [(i, math.log2(abs(c)) if c.bit_length() < 1000 else c.bit_length() - 1.0)
           for i, c in enumerate(f) if c]
    hull: list[tuple[int, float]] = []
    for q in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (q[1] - y1) - (y2 - y1) * (q[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(q)
    tau = 2 * gmpy2.const_pi()
    out = []
    for (k, yk), (l, yl) in zip(hull, hull[1:]):
        m = l - k
        r = gmpy2.exp2(gmpy2.mpfr((yk - yl) / m))
        for j in range(m):
            out.append(r * gmpy2.exp(gmpy2.mpc(0, tau * j / m + tau * k / n + 0.7)))
    return out


def _aberth_square_free(f: list[int], prec: int, max_iter: int, start=None):
    """Simultaneous approximation of all roots of a square-free f with f(0) != 0.

    A root stops moving once its relative step drops below 2^(-3 prec / 4), or
    once the step is below 2^(-prec / 4) and no longer shrinking (the rounding
    noise floor).  Certification is left to the inclusion radii.  Returns
    early with converged=False when the largest step, once small, stalls for
    25 sweeps.
    """
    n = ip.deg(f)
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        lc = gmpy2.mpfr(f[-1])
        coeffs = [gmpy2.mpc(gmpy2.mpfr(c) / lc) for c in reversed(f)]
        if n == 1:
            return [-coeffs[1]], True
        z = _initial_guesses(f, prec) if start is None else [gmpy2.mpc(v) for v in start]
        tol = gmpy2.mpfr(2) ** (-(3 * prec // 4))
        loose = gmpy2.mpfr(2) ** (-(prec // 4))
        done = [False] * n
        last = [gmpy2.inf()] * n
        best, since = gmpy2.inf(), 0
        for _ in range(max_iter):
            worst = gmpy2.mpfr(0)
            for i in range(n):
                if done[i]:
                    continue
                zi = z[i]
                pv, dpv = _horner2(coeffs, zi)
                if pv == 0:
                    done[i] = True
                    continue
                w = pv / dpv
                s = gmpy2.mpc(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - z[j])
                step = w / (1 - w * s)
                z[i] = zi - step
                rel = abs(step) / abs(z[i]) if z[i] != 0 else abs(step)
                if rel <= tol or (rel <= loose and rel > last[i] / 4):
                    done[i] = True
                last[i] = rel
                worst = max(worst, rel)
            if all(done):
                return z, True
            # give up at this precision once local convergence stalls
            if worst > 2**-10:
                continue
            if worst < best / 2:
                best, since = worst, 0
            else:
                since += 1
                if since > 25:
                    break
        return z, False


def _inclusion_radii(f: list[int], z, prec: int):
    """Weierstrass inclusion radii n * |f(z_i)| / |lc * prod_{j != i}(z_i - z_j)|.

    The union of the disks contains every root, and any component formed by k
    disks holds exactly k roots.
    """
    n = len(z)
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        coeffs = [gmpy2.mpc(gmpy2.mpfr(c)) for c in reversed(f)]
        out = []
        for i in range(n):
            pv, _ = _horner2(coeffs, z[i])
            den = coeffs[0]
            for j in range(n):
                if j != i:
                    den *= z[i] - z[j]
            out.append(n * abs(pv) / abs(den) if den != 0 else gmpy2.inf())
        return out


def _disks_isolated(z, radii) -> list[bool]:
    n = len(z)
    iso = [True] * n
    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) <= radii[i] + radii[j]:
                iso[i] = iso[j] = False
    return iso


def _classify(z, radii) -> list[str]:
    """'real', 'complex' or 'unknown' for each isolated disk.

    A disk clear of the real axis holds a non-real root.  A disk meeting the
    axis holds a real root when its mirror image meets no other disk: the
    conjugate root then has nowhere to go but the same disk.
    """
    n = len(z)
    iso = _disks_isolated(z, radii)
    out = []
    for i in range(n):
        if not iso[i]:
            out.append("unknown")
        elif abs(z[i].imag) > radii[i]:
            out.append("complex")
        else:
            zc = z[i].conjugate()
            clear = all(abs(zc - z[j]) > radii[i] + radii[j] for j in range(n) if j != i)
            out.append("real" if clear else "unknown")
    return out


def aberth_roots(p, precision_bits: int = DEFAULT_PRECISION, max_iter: int = 200,
                 max_precision: int = MAX_PRECISION) -> RootSummary:
    """All complex roots with multiplicity, by Aberth-Ehrlich on each square-free factor.

    Each root comes with a Weierstrass inclusion radius; precision doubles
    until every disk is isolated and classified as real or non-real, up to
    ``max_precision``.  If that never happens the summary is marked uncertain.
    """
    g = _int_poly(p)
    degree = ip.deg(g)
    result: list[ComplexRoot] = []
    uncertain = False
    used = precision_bits
    for mult, h in sorted(ip.multiplicity_factors(g).items()):
        h, k = ip.strip_zero_roots(h)
        if k:
            result.append(ComplexRoot(0.0, 0.0, 0.0, mult, "real", "0", "0"))
        if ip.deg(h) < 1:
            continue
        prec = precision_bits
        z = None
        while True:
            # each retry starts from the previous approximations
            z, ok = _aberth_square_free(h, prec, max_iter, z)
            radii = [2 * r for r in _inclusion_radii(h, z, prec)] if ok else [gmpy2.inf()] * len(z)
            kinds = _classify(z, radii)
            good = ok and "unknown" not in kinds
            if good or prec >= max_precision:
                break
            prec *= 2
        used = max(used, prec)
        if not good:
            uncertain = True
        for zi, ri, kind in zip(z, radii, kinds):
            if kind == "unknown":
                kind = "complex" if abs(zi.imag) > ri else "real"
            re = zi.real
            im = zi.imag if kind == "complex" else gmpy2.mpfr(0)
            result.append(ComplexRoot(float(re), float(im), float(ri), mult, kind,
                                      _fmt(re), _fmt(im)))
    result.sort(key=lambda c: (c.re, c.im))
    return RootSummary(degree, [], None, result, uncertain, used)


def _fmt(x) -> str:
    return gmpy2.mpfr(x).__format__(".30g") if x != 0 else "0"


def positive_real_part_roots(p, precision_bits: int = DEFAULT_PRECISION) -> RootSummary:
    """Roots with strictly positive real part (both members of conjugate pairs)."""
    summ = aberth_roots(p, precision_bits)
    summ.complex_roots = [c for c in summ.complex_roots if c.re > 0]
    return summ


def sturm_aberth_agree(p, precision_bits: int = DEFAULT_PRECISION) -> bool:
    """Distinct real-root counts from both engines match, and the complex count equals the degree."""
    st = sturm_real_roots(p)
    ab = aberth_roots(p, precision_bits)
    n_real_ab = sum(1 for c in ab.complex_roots if c.kind == "real")
    total = sum(c.multiplicity for c in ab.complex_roots)
    return (not ab.uncertain) and n_real_ab == len(st.real_roots) and total == st.degree
