# Author: Intergraph developers
#
# License: BSD 3-Clause

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .version import __version__


class CapExceededError(ValueError):
    """Raised when a computation would grow beyond a configured cap.

    Parameters
    ----------
    message : str
        Human readable description.
    cap : int
        The cap that was hit.
    reached : int, default=None
        The partial size reached before giving up, when known.
    """

    def __init__(self, message, cap, reached=None):
        super().__init__(message)
        self.cap = cap
        self.reached = reached


class HypothesisError(ValueError):
    """The inputs fall outside the hypothesis of the statement being checked."""


class DegenerateGraphError(ValueError):
    """The lattice has fewer than two proper nontrivial subgroups."""


class ConstantsIntegrityError(ValueError):
    """Transcribed group orders fail their divisibility sanity checks."""


class IdentityViolationError(AssertionError):
    """A theorem-backed identity failed, which points at an enumeration bug."""


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


def _jsonable(value):
    """Convert exact values into JSON-safe equivalents.

    Integers beyond the double precision range and fractions are written as
    decimal strings so that nothing is rounded on the way out.
    """
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value if abs(value) < 2**53 else str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        if value == float("inf"):
            return "inf"
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "tolist"):
        return _jsonable(value.tolist())
    return str(value)


@dataclass
class CheckResult:
    """Outcome of a single named check.

    Attributes
    ----------
    name : str
        Identifier of the check, unique within a report.
    verdict : Verdict
        Pass, fail or skipped.
    counts : dict
        Counters (pairs checked, case counts, ...).
    values : dict
        Exact values worth recording (diameters, ratios, orders).
    witnesses : list
        Witnesses certifying the verdict.
    failures : list
        Counterexamples, sorted so that reports are reproducible.
    reason : str, optional
        Why a check was skipped, or a short failure summary.
    """

    name: str
    verdict: Verdict
    counts: Dict[str, Any] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)
    witnesses: List[Any] = field(default_factory=list)
    failures: List[Any] = field(default_factory=list)
    reason: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "counts": _jsonable(self.counts),
            "values": _jsonable(self.values),
            "witnesses": _jsonable(self.witnesses),
            "failures": _jsonable(self.failures),
            "reason": self.reason,
        }


def check(name, ok, **kwargs) -> CheckResult:
    """Shorthand building a pass/fail :class:`CheckResult` from a boolean."""
    return CheckResult(name, Verdict.PASS if ok else Verdict.FAIL, **kwargs)


@dataclass
class Report:
    """Structured record of a verification run.

    Every check is added through :meth:`add` which refuses duplicates, so a
    declared check appears exactly once.

    Attributes
    ----------
    name : str
        Name of the run (``witness``, ``graph``, ``verify``, ...).
    config : dict
        Echo of the configuration that produced the report.
    checks : list of CheckResult
        Ordered list of verdicts.
    timings : dict
        Wall-clock timings in seconds per stage.
    """

    name: str
    config: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    def add(self, result: CheckResult) -> CheckResult:
        if any(c.name == result.name for c in self.checks):
            raise ValueError(f"Check '{result.name}' already recorded")
        self.checks.append(result)
        return result

    def extend(self, other: "Report", prefix: Optional[str] = None) -> "Report":
        for c in other.checks:
            if prefix is not None:
                c = CheckResult(**{**c.__dict__, "name": f"{prefix}.{c.name}"})
            self.add(c)
        for k, v in other.timings.items():
            self.timings[k if prefix is None else f"{prefix}.{k}"] = v
        return self

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        """True iff every non-skipped check passed."""
        return all(c.verdict != Verdict.FAIL for c in self.checks)

    @property
    def skipped(self) -> List[str]:
        return [c.name for c in self.checks if c.verdict == Verdict.SKIPPED]

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "version": __version__,
            "name": self.name,
            "config": _jsonable(self.config),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(
            self.to_dict(include_timings=include_timings), indent=2, sort_keys=True
        )

    def summary_table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{'check':<{width}}  verdict  details"]
        for c in self.checks:
            details = ", ".join(f"{k}={_jsonable(v)}" for k, v in c.counts.items())
            if c.reason:
                details = f"{details}; {c.reason}" if details else c.reason
            lines.append(f"{c.name:<{width}}  {c.verdict.value:<7}  {details}")
        return "\n".join(lines)

    def __repr__(self):
        n_fail = sum(c.verdict == Verdict.FAIL for c in self.checks)
        return (
            f"Report(name={self.name!r}, checks={len(self.checks)}, "
            f"failed={n_fail}, skipped={len(self.skipped)})"
        )
