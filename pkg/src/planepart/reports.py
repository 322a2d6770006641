"""Verdict records shared by every verification sweep, plus their JSON/CSV encodings."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA_VERSION = 1


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    EQUALITY = "EQUALITY"
    UNCERTAIN = "UNCERTAIN"


class Kind(str, enum.Enum):
    BO_PP = "BO_PP"
    BO_POLY = "BO_POLY"
    LOGCONCAVE_PP = "LOGCONCAVE_PP"
    TURAN_POLY = "TURAN_POLY"
    CFT_POLY = "CFT_POLY"
    STEP = "STEP"
    CUSTOM = "CUSTOM"


def compare(lhs, rhs) -> Verdict:
    """Exact verdict on the strict claim lhs > rhs."""
    if lhs > rhs:
        return Verdict.HOLDS
    if lhs == rhs:
        return Verdict.EQUALITY
    return Verdict.FAILS


def compare_intervals(lhs: tuple, rhs: tuple) -> Verdict:
    """Verdict on lhs > rhs where both sides are closed intervals (lo, hi).

    Overlapping intervals give UNCERTAIN; EQUALITY is only reported when both
    intervals are the same single point.
    """
    (a_lo, a_hi), (b_lo, b_hi) = lhs, rhs
    if a_lo > b_hi:
        return Verdict.HOLDS
    if a_hi < b_lo:
        return Verdict.FAILS
    if a_lo == a_hi == b_lo == b_hi:
        return Verdict.EQUALITY
    return Verdict.UNCERTAIN


@dataclass(frozen=True)
class Record:
    index: tuple
    verdict: Verdict
    witness: object = None


@dataclass
class IneqReport:
    """Per-index verdicts for one inequality over a range of indices.

    ``witness`` is the tested difference lhs - rhs: an exact int/Fraction, or an
    interval ``(lo, hi)`` for ball-backed checks.
    """

    kind: Kind
    range: dict
    records: list[Record] = field(default_factory=list)
    interval_backed: bool = False

    def add(self, index, verdict: Verdict, witness=None) -> None:
        if verdict is Verdict.UNCERTAIN and not self.interval_backed:
            raise ValueError("UNCERTAIN verdicts are reserved for interval-backed checks")
        if verdict in (Verdict.FAILS, Verdict.EQUALITY) and witness is None:
            raise ValueError(f"{verdict.value} at {index} needs a witness")
        self.records.append(Record(tuple(index), verdict, witness))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def verdict_at(self, *index) -> Verdict:
        for r in self.records:
            if r.index == index:
                return r.verdict
        raise KeyError(index)

    def with_verdict(self, verdict: Verdict) -> list[tuple]:
        return [r.index for r in self.records if r.verdict is verdict]

    def counts(self) -> dict[str, int]:
        out = {v.value: 0 for v in Verdict}
        for r in self.records:
            out[r.verdict.value] += 1
        return out

    @property
    def all_hold(self) -> bool:
        return all(r.verdict is Verdict.HOLDS for r in self.records)

    def filter(self, pred) -> "IneqReport":
        sub = IneqReport(self.kind, dict(self.range), interval_backed=self.interval_backed)
        sub.records = [r for r in self.records if pred(r.index)]
        return sub

    def merge(self, other: "IneqReport") -> "IneqReport":
        """Concatenate records, ordered by index."""
        out = IneqReport(self.kind, dict(self.range),
                         interval_backed=self.interval_backed or other.interval_backed)
        out.records = sorted(self.records + other.records, key=lambda r: r.index)
        return out

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "kind": self.kind.value,
            "range": self.range,
            "interval_backed": self.interval_backed,
            "records": [
                {"index": list(r.index), "verdict": r.verdict.value,
                 "witness": encode_witness(r.witness)}
                for r in self.records
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["schema", "kind", "index", "verdict", "witness"])
        for r in self.records:
            w.writerow([SCHEMA_VERSION, self.kind.value, " ".join(map(str, r.index)),
                        r.verdict.value, encode_witness(r.witness) or ""])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, d: dict) -> "IneqReport":
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        rep = cls(Kind(d["kind"]), d["range"], interval_backed=d.get("interval_backed", False))
        rep.records = [Record(tuple(r["index"]), Verdict(r["verdict"]), decode_witness(r["witness"]))
                       for r in d["records"]]
        return rep

    @classmethod
    def from_json(cls, text: str) -> "IneqReport":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_csv(cls, text: str, range_: dict | None = None) -> "IneqReport":
        rows = list(csv.DictReader(io.StringIO(text)))
        kind = Kind(rows[0]["kind"]) if rows else Kind.CUSTOM
        rep = cls(kind, range_ or {})
        for row in rows:
            if int(row["schema"]) != SCHEMA_VERSION:
                raise ValueError(f"unsupported report schema {row['schema']!r}")
            v = Verdict(row["verdict"])
            if v is Verdict.UNCERTAIN:
                rep.interval_backed = True
            index = tuple(int(t) for t in row["index"].split())
            rep.records.append(Record(index, v, decode_witness(row["witness"] or None)))
        return rep


def encode_witness(w) -> str | None:
    if w is None:
        return None
    if isinstance(w, tuple):
        lo, hi = w
        return f"[{encode_witness(lo)}, {encode_witness(hi)}]"
    if isinstance(w, (int, Fraction)):
        return str(w)
    return str(w)


def decode_witness(s):
    if s is None:
        return None
    s = s.strip()
    if s.startswith("["):
        lo, hi = s[1:-1].split(",")
        return (decode_witness(lo), decode_witness(hi))
    f = Fraction(s)
    return f.numerator if f.denominator == 1 else f
