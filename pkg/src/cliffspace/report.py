"""Check records shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
SKIPPED = "skipped"


@dataclass
class Check:
    name: str
    status: str
    observed: Any = None
    expected: Any = None
    anchor: str = "plumbing"
    note: str = ""

    @classmethod
    def compare(cls, name: str, observed, expected, anchor: str, note: str = "") -> "Check":
        return cls(name, PASS if observed == expected else FAIL, observed, expected, anchor, note)

    @classmethod
    def truth(cls, name: str, ok: bool, anchor: str, observed=None, expected=None, note: str = "") -> "Check":
        return cls(name, PASS if ok else FAIL, observed, expected, anchor, note)

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict:
        d = asdict(self)
        d["observed"] = jsonable(self.observed)
        d["expected"] = jsonable(self.expected)
        return d


def jsonable(x):
    """Convert diagrams, fractions, tuples and dict keys into plain JSON values."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        items = sorted(((_key(k), jsonable(v)) for k, v in x.items()), key=lambda kv: kv[0])
        return {k: v for k, v in items}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    return x


def _key(k) -> str:
    if isinstance(k, tuple):
        return "(" + ",".join(str(_key(v)) for v in k) + ")"
    return str(k)


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)
