# Author: Intergraph developers
#
# License: BSD 3-Clause

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from intergraph import CheckResult, Report, Verdict, __version__
from intergraph.base import _jsonable, check


def _report():
    report = Report("demo", config={"q": 3})
    report.add(check("first", True, counts={"pairs": 3}))
    report.add(CheckResult("second", Verdict.SKIPPED, reason="cap: too large"))
    report.timings["stage"] = 0.1234567
    return report


def test_report_add_refuses_duplicates():
    report = _report()
    with pytest.raises(ValueError, match="already recorded"):
        report.add(check("first", False))
    assert len(report.checks) == 2


def test_report_verdicts():
    report = _report()
    assert report.passed
    assert report.skipped == ["second"]
    report.add(check("third", False, failures=[{"q": 2}]))
    assert not report.passed
    assert report["third"].verdict == Verdict.FAIL
    with pytest.raises(KeyError):
        report["missing"]
    assert repr(report) == "Report(name='demo', checks=3, failed=1, skipped=1)"


def test_report_extend_with_prefix():
    report = Report("outer")
    report.extend(_report(), prefix="inner")
    assert [c.name for c in report.checks] == ["inner.first", "inner.second"]
    assert report["inner.first"].counts == {"pairs": 3}
    assert "inner.stage" in report.timings
    with pytest.raises(ValueError):
        report.extend(_report(), prefix="inner")
    report.extend(_report())
    assert len(report.checks) == 4


def test_report_to_dict_timings():
    report = _report()
    out = report.to_dict()
    assert "timings" not in out
    assert out["version"] == __version__
    assert out["passed"] is True
    assert out["checks"][1]["verdict"] == "skipped"
    assert out["checks"][1]["reason"] == "cap: too large"
    out = report.to_dict(include_timings=True)
    assert out["timings"] == {"stage": 0.123457}


def test_report_to_json_is_deterministic():
    a, b = _report(), _report()
    b.timings["stage"] = 99.0
    assert a.to_json() == b.to_json()
    assert a.to_json(include_timings=True) != b.to_json(include_timings=True)
    assert list(json.loads(a.to_json())) == sorted(json.loads(a.to_json()))


@pytest.mark.parametrize(
    "value, expected",
    [
        (Fraction(54, 7), "54/7"),
        (2**60, str(2**60)),
        (-(2**60), str(-(2**60))),
        (12, 12),
        (True, True),
        (None, None),
        (math.inf, "inf"),
        (0.5, 0.5),
        (Verdict.PASS, "pass"),
        ((1, Fraction(1, 2)), [1, "1/2"]),
        ({3: [Fraction(2)]}, {"3": ["2/1"]}),
        (np.arange(3), [0, 1, 2]),
    ],
)
def test_jsonable(value, expected):
    assert _jsonable(value) == expected


def test_summary_table():
    table = _report().summary_table()
    lines = table.splitlines()
    assert lines[0].startswith("check")
    assert "pairs=3" in lines[1]
    assert lines[2].split()[1] == "skipped"
    assert lines[2].endswith("cap: too large")
