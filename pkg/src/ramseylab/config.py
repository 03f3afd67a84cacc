"""Search budgets and the process-wide debug switch."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict

UNIVERSE_CAPS: Dict[str, int] = {
    "graph": 7,
    "poset": 6,
    "linord": 12,
    "digraph": 4,
    "ordgraph": 5,
}


@dataclass(frozen=True)
class Budgets:
    bell: int = 10**6
    hom: int = 5000
    product_objects: int = 4096
    universe: Dict[str, int] = field(default_factory=lambda: dict(UNIVERSE_CAPS))

    def universe_cap(self, kind: str) -> int:
        return self.universe.get(kind, UNIVERSE_CAPS["graph"])

    def with_overrides(self, **changes: int | None) -> "Budgets":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT_BUDGETS = Budgets()


@dataclass
class DebugConfig:
    verify_pullbacks: bool = False


DEBUG = DebugConfig()


def configure_debug(verify_pullbacks: bool) -> None:
    DEBUG.verify_pullbacks = verify_pullbacks
