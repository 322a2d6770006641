from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from planepart.reports import (
    IneqReport, Kind, Verdict, compare, compare_intervals, decode_witness, encode_witness,
)


def test_compare():
    assert compare(3, 2) is Verdict.HOLDS
    assert compare(2, 2) is Verdict.EQUALITY
    assert compare(Fraction(1, 3), Fraction(1, 2)) is Verdict.FAILS


def test_compare_intervals():
    assert compare_intervals((3, 4), (1, 2)) is Verdict.HOLDS
    assert compare_intervals((0, 1), (2, 3)) is Verdict.FAILS
    assert compare_intervals((1, 1), (1, 1)) is Verdict.EQUALITY
    assert compare_intervals((1, 3), (2, 4)) is Verdict.UNCERTAIN


def _sample():
    rep = IneqReport(Kind.BO_PP, {"sum_min": 4, "sum_max": 6}, interval_backed=True)
    rep.add((3, 2), Verdict.FAILS, -7)
    rep.add((2, 2), Verdict.HOLDS, 3)
    rep.add((4, 2), Verdict.EQUALITY, 0)
    rep.add((5, 1), Verdict.UNCERTAIN, (Fraction(-1, 3), Fraction(2, 5)))
    return rep


def test_queries():
    rep = _sample()
    assert rep.verdict_at(3, 2) is Verdict.FAILS
    assert rep.with_verdict(Verdict.HOLDS) == [(2, 2)]
    assert rep.counts() == {"HOLDS": 1, "FAILS": 1, "EQUALITY": 1, "UNCERTAIN": 1}
    assert not rep.all_hold
    assert len(rep.filter(lambda i: i[1] == 2)) == 3
    merged = rep.filter(lambda i: i[0] > 3).merge(rep.filter(lambda i: i[0] <= 3))
    assert [r.index for r in merged] == sorted(r.index for r in rep)
    with pytest.raises(KeyError):
        rep.verdict_at(9, 9)


def test_guards():
    rep = IneqReport(Kind.STEP, {})
    with pytest.raises(ValueError):
        rep.add((1,), Verdict.UNCERTAIN, (0, 1))
    with pytest.raises(ValueError):
        rep.add((1,), Verdict.FAILS)


def test_json_and_csv_round_trip():
    rep = _sample()
    back = IneqReport.from_json(rep.to_json())
    assert back.records == rep.records and back.range == rep.range and back.interval_backed
    again = IneqReport.from_csv(rep.to_csv(), rep.range)
    assert again.records == rep.records and again.kind is Kind.BO_PP


def test_schema_mismatch():
    d = _sample().to_dict()
    d["schema"] = 99
    with pytest.raises(ValueError):
        IneqReport.from_dict(d)


@given(st.one_of(st.integers(), st.fractions()))
def test_witness_round_trip(w):
    assert decode_witness(encode_witness(w)) == w
    assert decode_witness(encode_witness((w, w + 1))) == (w, w + 1)
