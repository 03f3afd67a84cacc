"""Recorder for validator suites: each check passes, fails, or is recorded as an expected exhibit."""

from __future__ import annotations

import difflib
import pprint
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    RECORDED = "recorded"


@dataclass
class CheckOutcome:
    name: str
    status: Status
    detail: str = ""
    data: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        payload: dict[str, Any] = {"name": self.name, "status": self.status.value}
        if self.detail:
            payload["detail"] = self.detail
        if self.data:
            payload["data"] = self.data
        return payload


def _pretty(value: Any) -> str:
    return pprint.pformat(value, width=80, compact=True)


def _diff(expected: Any, actual: Any) -> str:
    left, right = _pretty(expected).splitlines(), _pretty(actual).splitlines()
    return "\n".join(difflib.ndiff(left, right))


@dataclass
class CheckRecorder:
    """Collects outcomes in the order checks run; never raises on a failed check."""

    suite: str
    outcomes: list[CheckOutcome] = field(default_factory=list)

    def expect_equal(self, name: str, expected: Any, actual: Any, **data: Any) -> bool:
        if expected == actual:
            self.outcomes.append(CheckOutcome(name, Status.PASS, data=data))
            return True
        detail = f"expected {_pretty(expected)}, received {_pretty(actual)}"
        if "\n" in _pretty(expected) or "\n" in _pretty(actual):
            detail += "\n" + _diff(expected, actual)
        self.outcomes.append(CheckOutcome(name, Status.FAIL, detail, data))
        return False

    def expect_true(self, name: str, condition: bool, detail: str = "", **data: Any) -> bool:
        status = Status.PASS if condition else Status.FAIL
        self.outcomes.append(CheckOutcome(name, status, "" if condition else detail, data))
        return bool(condition)

    def record(self, name: str, detail: str, **data: Any) -> None:
        self.outcomes.append(CheckOutcome(name, Status.RECORDED, detail, data))

    def extend(self, other: "CheckRecorder") -> None:
        for outcome in other.outcomes:
            self.outcomes.append(
                CheckOutcome(f"{other.suite}: {outcome.name}", outcome.status, outcome.detail, outcome.data)
            )

    @property
    def counts(self) -> Counter:
        return Counter(outcome.status for outcome in self.outcomes)

    @property
    def failures(self) -> list[CheckOutcome]:
        return [outcome for outcome in self.outcomes if outcome.status is Status.FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict[str, Any]:
        counts = self.counts
        return {
            "suite": self.suite,
            "passed": self.passed,
            "counts": {status.value: counts.get(status, 0) for status in Status},
            "checks": [outcome.to_json() for outcome in self.outcomes],
        }
