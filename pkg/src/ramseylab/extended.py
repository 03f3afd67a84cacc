"""Extended naturals and reals: the values ``1 < 2 < ... < inf`` and ``R + {inf}``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Union

TOLERANCE = 1e-9


@total_ordering
@dataclass(frozen=True)
class ExtNat:
    """A positive integer or infinity. ``inf * n == inf`` for every n."""

    value: int | None

    def __post_init__(self) -> None:
        if self.value is not None and self.value < 1:
            raise ValueError(f"ExtNat must be >= 1, got {self.value}")

    @classmethod
    def inf(cls) -> "ExtNat":
        return cls(None)

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __mul__(self, other: Union["ExtNat", int]) -> "ExtNat":
        other = _as_extnat(other)
        if self.is_inf or other.is_inf:
            return ExtNat.inf()
        return ExtNat(self.value * other.value)  # type: ignore[operator]

    __rmul__ = __mul__

    def __lt__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ExtNat(other)
        if not isinstance(other, ExtNat):
            return NotImplemented
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self.value < other.value  # type: ignore[operator]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.value == other
        if isinstance(other, ExtNat):
            return self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def log2(self) -> "ExtReal":
        if self.is_inf:
            return ExtReal.inf()
        return ExtReal(math.log2(self.value))  # type: ignore[arg-type]

    def to_json(self) -> int | str:
        return "inf" if self.is_inf else self.value  # type: ignore[return-value]

    def __str__(self) -> str:
        return "∞" if self.is_inf else str(self.value)


def _as_extnat(value: Union[ExtNat, int]) -> ExtNat:
    return value if isinstance(value, ExtNat) else ExtNat(value)


@total_ordering
@dataclass(frozen=True)
class ExtReal:
    """A real number or +infinity, compared at absolute tolerance 1e-9."""

    value: float | None

    @classmethod
    def inf(cls) -> "ExtReal":
        return cls(None)

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __add__(self, other: Union["ExtReal", float, int]) -> "ExtReal":
        other = _as_extreal(other)
        if self.is_inf or other.is_inf:
            return ExtReal.inf()
        return ExtReal(self.value + other.value)  # type: ignore[operator]

    __radd__ = __add__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, float)):
            other = ExtReal(float(other))
        if not isinstance(other, ExtReal):
            return NotImplemented
        if self.is_inf or other.is_inf:
            return self.is_inf and other.is_inf
        return abs(self.value - other.value) <= TOLERANCE  # type: ignore[operator]

    def __hash__(self) -> int:
        # equality within tolerance is not transitive, so finite values share one bucket
        return hash(self.is_inf)

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (int, float)):
            other = ExtReal(float(other))
        if not isinstance(other, ExtReal):
            return NotImplemented
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self.value < other.value - TOLERANCE  # type: ignore[operator]

    def leq(self, other: Union["ExtReal", float]) -> bool:
        """``self <= other`` within tolerance."""
        return not _as_extreal(other) < self

    def to_json(self) -> float | str:
        return "inf" if self.is_inf else round(self.value, 9)  # type: ignore[arg-type]

    def __float__(self) -> float:
        return math.inf if self.is_inf else float(self.value)  # type: ignore[arg-type]

    def __str__(self) -> str:
        return "∞" if self.is_inf else f"{self.value:.9f}"


def _as_extreal(value: Union[ExtReal, float, int]) -> ExtReal:
    return value if isinstance(value, ExtReal) else ExtReal(float(value))


def log2_ext(value: Union[ExtNat, int]) -> ExtReal:
    return _as_extnat(value).log2()
