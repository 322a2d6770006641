"""``planepart`` command line.

Data goes to stdout, progress and summaries to stderr.  Exit codes: 0 success,
1 a verdict contradicts the expected outcome, 2 usage or input error,
3 some verdict is UNCERTAIN.
"""

from __future__ import annotations

import argparse
import csv
import glob
import io
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp

from planepart import __version__
from planepart import asymptotics as asym
from planepart import inequalities as ineq
from planepart import roots as rf
from planepart.divisors import sigma2_table
from planepart.family import check_monotone, generate_family
from planepart.partitions import (
    DEFAULT_BALL_PREC, CacheError, PPTable, ResourceLimitError, check_memory, check_step_bound,
    default_cache_dir, load_table, pp_ball, pp_exact, read_header, save_table,
)
from planepart.poly import format_poly
from planepart.reports import SCHEMA_VERSION, IneqReport, Verdict, encode_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNCERTAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Output:
    """Tabular result: ``rows`` feed csv/json, ``text`` (if set) is the table layout."""

    command: str
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)
    text: str | None = None
    status: int = EXIT_OK

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.columns)
            w.writerows(self.rows)
            return buf.getvalue()
        if fmt == "json":
            doc = {"schema": SCHEMA_VERSION, "command": self.command,
                   "columns": self.columns,
                   "rows": [dict(zip(self.columns, r)) for r in self.rows]}
            return json.dumps(doc, indent=2) + "\n"
        return self.text if self.text is not None else align(self.columns, self.rows)


def align(header, rows, right=True) -> str:
    table = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in table if i < len(r)) for i in range(len(table[0]))]
    out = []
    for r in table:
        cells = [(c.rjust(w) if right else c.ljust(w)) for c, w in zip(r, widths)]
        out.append("  ".join(cells).rstrip())
    return "\n".join(out) + "\n"


def progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# -- shared inputs -----------------------------------------------------------


def parse_bytes(text: str) -> int:
    m = re.fullmatch(r"(\d+)([KMGT]?)(i?B)?", text.strip(), re.IGNORECASE)
    if not m:
        raise argparse.ArgumentTypeError(f"bad size {text!r}")
    mult = {"": 1, "K": 2**10, "M": 2**20, "G": 2**30, "T": 2**40}[m.group(2).upper()]
    return int(m.group(1)) * mult


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def cache_dir(args) -> str:
    return args.cache_dir or default_cache_dir()


def cache_path(args, N: int) -> str:
    return os.path.join(cache_dir(args), f"pp-{N}.txt")


def cached_tables(args) -> list[tuple[int, str]]:
    out = []
    for path in glob.glob(os.path.join(cache_dir(args), "pp-*.txt")):
        m = re.fullmatch(r"pp-(\d+)\.txt", os.path.basename(path))
        if m:
            out.append((int(m.group(1)), path))
    return sorted(out)


def get_pp(args, N: int) -> PPTable:
    """pp(0..N): from the smallest cached table that covers N, else computed."""
    for n, path in cached_tables(args):
        if n >= N:
            return load_table(path)
    check_memory(N, args.memory_cap)
    if N > 2000:
        progress(f"computing pp(0..{N}) exactly")
    return pp_exact(N, memory_cap=args.memory_cap)


_FAMILY = {}


def get_family(N: int, memory_cap=None):
    fam = _FAMILY.get("f")
    if fam is None or fam.N < N:
        fam = generate_family(N, memory_cap=memory_cap)
        _FAMILY["f"] = fam
    return fam


def pmap(func, items, jobs: int, label: str = ""):
    """Ordered map, in worker processes when jobs > 1."""
    items = list(items)
    step = max(1, len(items) // 10)
    out = []
    if jobs <= 1:
        for i, it in enumerate(items, 1):
            out.append(func(it))
            if label and len(items) >= 50 and i % step == 0:
                progress(f"{label}: {i}/{len(items)}")
        return out
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for i, r in enumerate(ex.map(func, items, chunksize=1), 1):
            out.append(r)
            if label and len(items) >= 50 and i % step == 0:
                progress(f"{label}: {i}/{len(items)}")
    return out


# -- table ---------------------------------------------------------------------


def two_row(label_top, label_bottom, keys, values) -> str:
    return align([label_top] + [str(k) for k in keys], [[label_bottom] + [str(v) for v in values]])


def cmd_table(args) -> Output:
    what = args.what
    if what == "pp":
        T = get_pp(args, args.max)
        keys = list(range(args.max + 1))
        vals = [T[n] for n in keys]
        out = Output("table pp", ["n", "pp"], [[str(k), str(v)] for k, v in zip(keys, vals)])
        out.text = two_row("n", "pp(n)", keys, vals)
    elif what == "sigma2":
        s = sigma2_table(args.max)
        keys = list(range(1, args.max + 1))
        vals = [s[n] for n in keys]
        out = Output("table sigma2", ["n", "sigma2"], [[str(k), str(v)] for k, v in zip(keys, vals)])
        out.text = two_row("n", "sigma2(n)", keys, vals)
    elif what == "polys":
        F = get_family(args.max, args.memory_cap)
        out = Output("table polys", ["n", "P_n"], [[str(n), str(F[n])] for n in range(1, args.max + 1)])
        out.text = align(["n", "P_n(x)"], out.rows, right=False)
    elif what == "turan-polys":
        F = get_family(args.a_max + 1, args.memory_cap)
        out = Output("table turan-polys", ["a", "delta"],
                     [[str(a), str(ineq.turan_poly(F, a))] for a in range(args.a_min, args.a_max + 1)])
        out.text = align(["a", "P_a(x)^2 - P_{a-1}(x) P_{a+1}(x)"], out.rows, right=False)
    elif what == "minimal-sums":
        F = get_family(11, args.memory_cap)
        vals = ineq.minimal_sums_table(F, args.x, args.b_max)
        keys = list(range(1, args.b_max + 1))
        out = Output("table minimal-sums", ["b", "value"], [[str(k), str(v)] for k, v in zip(keys, vals)])
        out.text = two_row("b", "", keys, vals)
    else:  # pp-sums
        vals = ineq.pp_sums_table(get_pp(args, 11), args.b_max)
        keys = list(range(2, args.b_max + 1))
        out = Output("table pp-sums", ["b", "value"], [[str(k), str(v)] for k, v in zip(keys, vals)])
        out.text = two_row("b", "", keys, vals)
    return out


# -- zeros ---------------------------------------------------------------------


def _poly_for(kind: str, a: int, b: int):
    if kind == "bo":
        return ineq.bo_poly(get_family(a + b), a, b)
    if kind == "cft":
        return ineq.cft_poly(get_family(max(a, b + 1)), a, b)
    return ineq.turan_poly(get_family(a + 1), a)


def _largest_job(job):
    kind, a, b, decimals, positive = job
    p = _poly_for(kind, a, b)
    r = rf.largest_real_root(p, Fraction(1, 10 ** (decimals + 4)), (0, None) if positive else None)
    if r is None:
        return None
    return rf.rounded_root(r, decimals), r.lo, r.hi


def _complex_job(job):
    kind, a, b, precision, which = job
    summ = rf.aberth_roots(_poly_for(kind, a, b), precision)
    roots = summ.complex_roots
    if which == "largest":
        top = max(c.re for c in roots)
        keep = [c for c in roots if abs(c.re - top) <= max(1e-12, 1e-12 * abs(top))]
    else:
        keep = [c for c in roots if c.re > 0]
    return [(c.re_str, c.im_str, c.kind, c.multiplicity) for c in keep], summ.uncertain


def _enclosure(lo: Fraction, hi: Fraction) -> str:
    return f"[{float(lo):.12g}, {float(hi):.12g}]"


def cmd_zeros(args) -> Output:
    kind = args.kind
    if kind == "bo":
        pairs = [(a, b) for a in range(args.a_min or 1, args.a_max + 1)
                 for b in range(args.b_min or 1, args.b_max + 1)]
        positive = False
    elif kind == "cft":
        a_min = args.a_min or 2
        pairs = [(a, b) for a in range(a_min, args.a_max + 1)
                 for b in range(args.b_min or 0, (a - 2 if args.b_max is None else min(args.b_max, a - 2)) + 1)]
        positive = True
    else:
        pairs = [(a, a - 1) for a in range(args.a_min or 1, args.a_max + 1)]
        positive = True
    if not pairs:
        raise UsageError("empty (a, b) range")
    top = max(a + b for a, b in pairs) + 1
    get_family(top, args.memory_cap)  # fail early on the memory cap

    if args.emit_complex:
        which = "largest" if kind == "cft" else "positive"
        jobs = [(kind, a, b, args.precision, which) for a, b in pairs]
        res = pmap(_complex_job, jobs, args.jobs, f"zeros {kind}")
        out = Output(f"zeros {kind} --emit-complex", ["a", "b", "re", "im", "kind", "multiplicity"])
        uncertain = False
        for (a, b), (rows, unc) in zip(pairs, res):
            uncertain |= unc
            for re_s, im_s, k, m in rows:
                out.rows.append([str(a), str(b), re_s, im_s, k, str(m)])
        if uncertain:
            progress("some root sets did not certify at the maximum precision")
            out.status = EXIT_UNCERTAIN
        return out

    d = args.decimals
    jobs = [(kind, a, b, d, positive) for a, b in pairs]
    res = pmap(_largest_job, jobs, args.jobs, f"zeros {kind}")
    cells = {}
    out = Output(f"zeros {kind}", ["a", "b", "zero", "enclosure"])
    for (a, b), r in zip(pairs, res):
        if r is None:
            cells[a, b] = "--"
            out.rows.append([str(a), str(b), "--", ""])
        else:
            cells[a, b] = rf.format_rounded(r[0], d)
            out.rows.append([str(a), str(b), cells[a, b], _enclosure(r[1], r[2])])
    if kind == "turan":
        out.text = align(["a", "zero"], [[str(a), cells[a, b]] for a, b in pairs])
    else:
        rows_a = sorted({a for a, _ in pairs})
        cols_b = sorted({b for _, b in pairs})
        grid = [[str(a)] + [cells.get((a, b), "") for b in cols_b] for a in rows_a]
        out.text = align(["a\\b"] + [str(b) for b in cols_b], grid)
    return out


# -- verify --------------------------------------------------------------------


def report_output(name: str, rep: IneqReport, expected) -> Output:
    """Output for a report; ``expected(index, verdict)`` says whether a record is as predicted."""
    out = Output(f"verify {name}", ["index", "verdict", "witness"])
    bad, unc = [], 0
    for r in rep:
        w = "" if r.witness is None else _short(r.witness)
        out.rows.append([" ".join(map(str, r.index)), r.verdict.value, w])
        if r.verdict is Verdict.UNCERTAIN:
            unc += 1
        elif not expected(r.index, r.verdict):
            bad.append(r.index)
    c = rep.counts()
    progress(f"{name}: " + ", ".join(f"{k}={v}" for k, v in c.items() if v))
    if bad:
        progress(f"{name}: unexpected verdicts at {bad[:10]}{' ...' if len(bad) > 10 else ''}")
        out.status = EXIT_FAIL
    elif unc:
        out.status = EXIT_UNCERTAIN
    return out


def _short(w) -> str:
    s = encode_witness(w)
    return s if len(s) <= 60 else f"{s[:25]}...({len(s)} chars)"


def cmd_verify(args) -> Output:
    what = args.what
    if what == "bo-pp":
        rep = ineq.verify_bo_pp(get_pp(args, args.sum_max), args.sum_min, args.sum_max)
        return report_output(what, rep, lambda i, v: (v is Verdict.FAILS) == (i in ineq.BO_PP_EXCEPTIONS))
    if what == "logconcave-pp":
        if args.backend == "ball":
            if args.precision < 64:
                raise UsageError("--precision must be >= 64 for the ball backend")
            progress(f"computing ball enclosures of pp(0..{args.n_max + 1}) at {args.precision} bits")
            table = pp_ball(args.n_max + 1, args.precision, memory_cap=args.memory_cap)
        else:
            table = get_pp(args, args.n_max + 1)
        rep = ineq.verify_logconcave_pp(table, args.n_min, args.n_max)
        return report_output(what, rep,
                             lambda i, v: (v is Verdict.FAILS) == (i[0] in ineq.LOGCONCAVE_EXCEPTIONS))
    if what == "step-bound":
        rep = check_step_bound(args.max, get_pp(args, args.max + 1))
        return report_output(what, rep, lambda i, v: v is (Verdict.EQUALITY if i[0] == 1 else Verdict.HOLDS))
    if what == "bo-poly":
        region = ineq.bo_region(args.sum_min, args.sum_max, args.b_min)
        F = get_family(args.sum_max, args.memory_cap)
        rep = ineq.verify_bo_poly(F, args.x, region)
        return report_output(what, rep, lambda i, v: v is Verdict.HOLDS)
    if what == "even-coeffs":
        F = get_family(args.a_max + 1, args.memory_cap)
        rep = ineq.even_a_coefficient_scan(F, args.a_max, args.a_min)
        return report_output(what, rep, lambda i, v: i[0] % 2 == 1 or v is Verdict.HOLDS)
    # monotone
    F = get_family(args.max + 1, args.memory_cap)
    rep = check_monotone(F, args.max, args.x)
    return report_output(what, rep, lambda i, v: v is Verdict.HOLDS)


# -- bounds ----------------------------------------------------------------------


def cmd_bounds(args) -> Output:
    t = ineq.final_step_threshold(args.kind, args.margin)
    r = t.largest_root
    out = Output("bounds final-step", ["kind", "polynomial", "largest_root", "threshold", "confirmed_upto"])
    out.rows.append([t.kind.value, format_poly(t.poly, "a"),
                     "" if r is None else _enclosure(r.lo, r.hi), str(t.threshold), str(t.confirmed_upto)])
    out.text = (f"kind            {t.kind.value}\n"
                f"polynomial      {format_poly(t.poly, 'a')}\n"
                f"largest root    {'none' if r is None else _enclosure(r.lo, r.hi)}\n"
                f"positive for    a >= {t.threshold} (exact check through a = {t.confirmed_upto})\n")
    if not t.leading_positive:
        out.status = EXIT_FAIL
    return out


# -- asym ------------------------------------------------------------------------


def cmd_asym(args) -> Output:
    if args.what == "wright":
        ns = sorted(set(args.n))
        T = get_pp(args, max(ns))
        out = Output("asym wright", ["n", "estimate", "pp", "ratio"])
        for n in ns:
            w = asym.wright_estimate(n, args.digits)
            out.rows.append([str(n), mp.nstr(w.estimate, 20), str(T[n]), mp.nstr(w.ratio(T[n]), 20)])
        k = asym.constants()
        out.text = align(out.columns, [[r[0], r[1], _clip(r[2]), r[3]] for r in out.rows])
        out.text += "".join(f"# {key} = {val}\n" for key, val in k.as_dict().items())
        return out
    if args.what == "konkav":
        rep = asym.expansion_check_konkav(args.s, args.n_min, args.n_max)
        rows = list(csv.reader(io.StringIO(rep.to_csv())))
        out = Output("asym konkav", rows[0], rows[1:])
        out.text = align(["decade", "sup |R_n|"],
                         [[str(d), mp.nstr(v, 12)] for d, v in rep.sup_by_decade()])
        return out
    c1 = None if args.c1 is None else args.c1
    rep = asym.expansion_check_corollary(c1, args.n_min, args.n_max, n_values=args.n)
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    out = Output("asym corollary", rows[0], rows[1:])
    progress("corollary: " + ", ".join(f"{k}={v}" for k, v in rep.counts().items() if v)
             + f"; holds from n = {rep.holds_from}")
    if rep.counts()["UNCERTAIN"]:
        out.status = EXIT_UNCERTAIN
    if not rep.all_hold() and rep.counts()["FAILS"]:
        out.status = EXIT_FAIL
    return out


def _clip(s: str, width: int = 40) -> str:
    return s if len(s) <= width else f"{s[:12]}...{s[-12:]} ({len(s)} digits)"


# -- cache -----------------------------------------------------------------------


def cmd_cache(args) -> Output:
    if args.what == "build":
        os.makedirs(cache_dir(args), exist_ok=True)
        progress(f"computing pp(0..{args.max})")
        T = pp_exact(args.max, memory_cap=args.memory_cap)
        path = cache_path(args, args.max)
        save_table(T, path)
        return Output("cache build", ["path", "N", "sigma2sha"], [[path, str(T.N), T.sigma2_sha]])
    entries = cached_tables(args)
    if args.what == "info":
        out = Output("cache info", ["path", "N", "sigma2sha", "bytes"])
        for _, path in entries:
            try:
                h = read_header(path)
                out.rows.append([path, str(h["N"]), h["sigma2sha"], str(os.path.getsize(path))])
            except (CacheError, OSError) as exc:
                out.rows.append([path, "", f"unreadable: {exc}", ""])
        if not entries:
            progress(f"no tables in {cache_dir(args)}")
        return out
    out = Output("cache verify", ["path", "status"])
    for _, path in entries:
        try:
            load_table(path, spot_checks=args.spot_checks)
            out.rows.append([path, "ok"])
        except (CacheError, OSError) as exc:
            out.rows.append([path, f"{type(exc).__name__}: {exc}"])
            out.status = EXIT_FAIL
    return out


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "csv", "json"], default="table")
    common.add_argument("--cache-dir", default=None,
                        help="table cache directory (default: $PLANEPART_CACHE_DIR or ~/.cache/planepart)")
    common.add_argument("--memory-cap", type=parse_bytes, default=None, help="e.g. 512M, 4G")
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="planepart", description="Plane partitions, their polynomials and inequalities.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="reproduce a table").add_subparsers(dest="what", required=True)
    for name, default in (("pp", 10), ("sigma2", 5), ("polys", 5)):
        q = t.add_parser(name, parents=[common])
        q.add_argument("--max", type=int, default=default)
    q = t.add_parser("turan-polys", parents=[common])
    q.add_argument("--a-min", type=int, default=2)
    q.add_argument("--a-max", type=int, default=5)
    q = t.add_parser("minimal-sums", parents=[common])
    q.add_argument("--x", type=parse_fraction, default=Fraction(2))
    q.add_argument("--b-max", type=int, default=10)
    q = t.add_parser("pp-sums", parents=[common])
    q.add_argument("--b-max", type=int, default=9)

    z = sub.add_parser("zeros", help="largest real zeros / complex zero data").add_subparsers(dest="kind", required=True)
    for name, a_max, b_max, dec in (("bo", 12, 12, 1), ("cft", 20, None, 2), ("turan", 20, None, 2)):
        q = z.add_parser(name, parents=[common])
        q.add_argument("--a-min", type=int, default=None)
        q.add_argument("--a-max", type=int, default=a_max)
        q.add_argument("--b-min", type=int, default=None)
        q.add_argument("--b-max", type=int, default=b_max)
        q.add_argument("--decimals", type=int, default=dec)
        q.add_argument("--emit-complex", action="store_true",
                       help="emit (a, b, re, im, kind) rows for complex zeros instead")
        q.add_argument("--precision", type=int, default=rf.DEFAULT_PRECISION)

    v = sub.add_parser("verify", help="inequality sweeps").add_subparsers(dest="what", required=True)
    q = v.add_parser("bo-pp", parents=[common])
    q.add_argument("--sum-min", type=int, default=12)
    q.add_argument("--sum-max", type=int, default=472)
    q = v.add_parser("logconcave-pp", parents=[common])
    q.add_argument("--n-min", type=int, default=12)
    q.add_argument("--n-max", type=int, default=20000)
    q.add_argument("--backend", choices=["exact", "ball"], default="exact")
    q.add_argument("--precision", type=int, default=DEFAULT_BALL_PREC)
    q = v.add_parser("step-bound", parents=[common])
    q.add_argument("--max", type=int, default=1000)
    q = v.add_parser("bo-poly", parents=[common])
    q.add_argument("--x", type=parse_fraction, default=Fraction(2))
    q.add_argument("--sum-min", type=int, default=12)
    q.add_argument("--sum-max", type=int, default=52)
    q.add_argument("--b-min", type=int, default=1)
    q = v.add_parser("even-coeffs", parents=[common])
    q.add_argument("--a-min", type=int, default=2)
    q.add_argument("--a-max", type=int, default=200)
    q = v.add_parser("monotone", parents=[common])
    q.add_argument("--max", type=int, default=100)
    q.add_argument("--x", type=parse_fraction, default=Fraction(1))

    b = sub.add_parser("bounds", help="final-step bound polynomials").add_subparsers(dest="what", required=True)
    q = b.add_parser("final-step", parents=[common])
    q.add_argument("--kind", choices=[k.value for k in ineq.FinalStep], required=True)
    q.add_argument("--margin", type=int, default=50)

    a = sub.add_parser("asym", help="asymptotic checks").add_subparsers(dest="what", required=True)
    q = a.add_parser("wright", parents=[common])
    q.add_argument("--n", type=int, nargs="+", default=[100, 1000, 10000])
    q.add_argument("--digits", type=int, default=30)
    q = a.add_parser("konkav", parents=[common])
    q.add_argument("--s", type=parse_fraction, default=Fraction(2, 3))
    q.add_argument("--n-min", type=int, default=100)
    q.add_argument("--n-max", type=int, default=10000)
    q = a.add_parser("corollary", parents=[common])
    q.add_argument("--c1", type=parse_fraction, default=None, help="default: Wright's C1")
    q.add_argument("--n-min", type=int, default=1000)
    q.add_argument("--n-max", type=int, default=100000)
    q.add_argument("--n", type=int, nargs="+", default=None, help="explicit sample points")

    c = sub.add_parser("cache", help="on-disk pp tables").add_subparsers(dest="what", required=True)
    q = c.add_parser("build", parents=[common])
    q.add_argument("--max", type=int, required=True)
    c.add_parser("info", parents=[common])
    q = c.add_parser("verify", parents=[common])
    q.add_argument("--spot-checks", type=int, default=64)
    return p


HANDLERS = {"table": cmd_table, "zeros": cmd_zeros, "verify": cmd_verify,
            "bounds": cmd_bounds, "asym": cmd_asym, "cache": cmd_cache}


def _check_ranges(args) -> None:
    for name in ("max", "a_max", "b_max", "sum_max", "n_max", "jobs"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    for lo, hi in (("a_min", "a_max"), ("sum_min", "sum_max"), ("n_min", "n_max")):
        a, b = getattr(args, lo, None), getattr(args, hi, None)
        if a is not None and b is not None and a > b:
            raise UsageError(f"empty range --{lo.replace('_', '-')} {a} > --{hi.replace('_', '-')} {b}")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _check_ranges(args)
        out = HANDLERS[args.command](args)
    except (UsageError, ValueError, ResourceLimitError, CacheError, OSError) as exc:
        print(f"planepart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    stdout.write(out.render(args.format))
    stdout.flush()
    return out.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
