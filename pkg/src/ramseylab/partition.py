"""Partitions of ``{0, ..., n-1}`` in restricted-growth form, colorings and entropies.

A partition is stored as its restricted-growth string (RGS): element ``i`` carries
the label of its block, and block ``b`` first appears after every block ``< b``.
The RGS is the lexicographically least labelling, so two partitions are equal
exactly when their assignments are equal.

Refinement is always named by direction. ``is_finer(P, Q)`` means every block of
``P`` lies inside a block of ``Q``.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import ValidationError
from .extended import TOLERANCE, ExtReal

_RGS_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Partition:
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.assignment:
            raise ValidationError("a partition needs a nonempty ground set")
        seen = -1
        for element, label in enumerate(self.assignment):
            if label > seen + 1 or label < 0:
                raise ValidationError(f"assignment is not a restricted-growth string at element {element}")
            seen = max(seen, label)

    @classmethod
    def from_labels(cls, labels: Sequence[object]) -> "Partition":
        """Canonical partition whose blocks are the fibres of ``labels``."""
        relabel: dict[object, int] = {}
        out = []
        for label in labels:
            if label not in relabel:
                relabel[label] = len(relabel)
            out.append(relabel[label])
        return cls(tuple(out))

    @property
    def ground_size(self) -> int:
        return len(self.assignment)

    @property
    def num_blocks(self) -> int:
        return max(self.assignment) + 1

    def __len__(self) -> int:
        return self.num_blocks

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for element, label in enumerate(self.assignment):
            out[label].append(element)
        return tuple(tuple(block) for block in out)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(Counter(self.assignment).values(), reverse=True))

    @property
    def is_trivial(self) -> bool:
        return self.num_blocks == 1

    @property
    def is_discrete(self) -> bool:
        return self.num_blocks == self.ground_size

    def same_block(self, i: int, j: int) -> bool:
        return self.assignment[i] == self.assignment[j]

    @property
    def rgs(self) -> str:
        if self.num_blocks <= len(_RGS_DIGITS):
            return "".join(_RGS_DIGITS[label] for label in self.assignment)
        return ",".join(str(label) for label in self.assignment)

    def to_json(self) -> dict[str, object]:
        return {"blocks": [list(block) for block in self.blocks], "rgs": self.rgs}

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, block)) + "}" for block in self.blocks) + "}"


@dataclass(frozen=True)
class Coloring:
    palette_size: int
    color_of: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.palette_size < 1:
            raise ValidationError("palette_size must be >= 1")
        for element, colour in enumerate(self.color_of):
            if not 0 <= colour < self.palette_size:
                raise ValidationError(f"color {colour} of element {element} outside palette of {self.palette_size}")

    @property
    def ground_size(self) -> int:
        return len(self.color_of)


class Comparison(str, Enum):
    EQUAL = "equal"
    P_COARSER = "P_coarser"  # Q is finer than P
    P_FINER = "P_finer"  # P is finer than Q
    INCOMPARABLE = "incomparable"


def make_partition(blocks: Iterable[Iterable[int]], ground_size: int) -> Partition:
    labels: list[int | None] = [None] * ground_size
    for index, block in enumerate(blocks):
        members = list(block)
        if not members:
            raise ValidationError(f"block {index} is empty")
        for element in members:
            if not 0 <= element < ground_size:
                raise ValidationError(f"element {element} outside ground set of size {ground_size}")
            if labels[element] is not None:
                raise ValidationError(f"element {element} in two blocks")
            labels[element] = index
    for element, label in enumerate(labels):
        if label is None:
            raise ValidationError(f"element {element} missing from every block")
    return Partition.from_labels(labels)


def parse_partition(text: str, ground_size: int | None = None) -> Partition:
    """Parse the literal ``[[0,1],[2]]``."""
    try:
        blocks = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"partition literal is not JSON: {text!r}") from exc
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise ValidationError(f"partition literal must be a list of lists: {text!r}")
    if ground_size is None:
        ground_size = 1 + max((x for block in blocks for x in block), default=-1)
    return make_partition(blocks, ground_size)


def trivial(n: int) -> Partition:
    return Partition((0,) * n)


def discrete(n: int) -> Partition:
    return Partition(tuple(range(n)))


def _same_ground(parts: Sequence[Partition]) -> int:
    sizes = {p.ground_size for p in parts}
    if len(sizes) != 1:
        raise ValidationError(f"mismatched ground sizes: {sorted(sizes)}")
    return sizes.pop()


def is_finer(p: Partition, q: Partition) -> bool:
    """True when every block of ``p`` is contained in a block of ``q``."""
    _same_ground((p, q))
    image: dict[int, int] = {}
    for a, b in zip(p.assignment, q.assignment):
        if image.setdefault(a, b) != b:
            return False
    return True


def compare(p: Partition, q: Partition) -> Comparison:
    if p == q:
        _same_ground((p, q))
        return Comparison.EQUAL
    if is_finer(q, p):
        return Comparison.P_COARSER
    if is_finer(p, q):
        return Comparison.P_FINER
    return Comparison.INCOMPARABLE


def join(parts: Sequence[Partition]) -> Partition:
    """Coarsest common refinement: same block iff same block in every input."""
    if not parts:
        raise ValidationError("join of an empty list")
    n = _same_ground(parts)
    return Partition.from_labels([tuple(p.assignment[i] for p in parts) for i in range(n)])


def meet(parts: Sequence[Partition]) -> Partition:
    """Finest common coarsening (transitive closure of all block relations)."""
    if not parts:
        raise ValidationError("meet of an empty list")
    n = _same_ground(parts)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in parts:
        for block in p.blocks:
            root = find(block[0])
            for element in block[1:]:
                parent[find(element)] = root
    return Partition.from_labels([find(i) for i in range(n)])


def tensor(p: Partition, q: Partition) -> Partition:
    """Product partition on ``X x Y``; pair ``(i, j)`` has index ``i * |Y| + j``."""
    return Partition.from_labels([(a, b) for a in p.assignment for b in q.assignment])


def are_isomorphic(p: Partition, q: Partition) -> bool:
    # A block-carrying bijection exists iff block sizes agree as multisets:
    # match blocks of equal size and biject their elements.
    return p.block_sizes() == q.block_sizes()


def partition_of_coloring(chi: Coloring) -> Partition:
    return Partition.from_labels(chi.color_of)


def coloring_of_partition(p: Partition) -> Coloring:
    return Coloring(palette_size=p.num_blocks, color_of=p.assignment)


def enumerate_partitions(n: int, max_blocks: int | None = None) -> Iterator[Partition]:
    """Every partition of ``n`` elements once, in RGS lexicographic order."""
    if n < 1:
        raise ValidationError("enumerate_partitions needs n >= 1")
    limit = n if max_blocks is None else min(max_blocks, n)
    if limit < 1:
        return
    labels = [0] * n
    # prefix_max[i] = max label among labels[0..i]
    prefix_max = [0] * n
    while True:
        yield Partition(tuple(labels))
        i = n - 1
        while i > 0:
            if labels[i] < limit - 1 and labels[i] <= prefix_max[i - 1]:
                break
            i -= 1
        if i == 0:
            return
        labels[i] += 1
        prefix_max[i] = max(prefix_max[i - 1], labels[i])
        for j in range(i + 1, n):
            labels[j] = 0
            prefix_max[j] = prefix_max[i]


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Bell number by the Bell triangle."""
    if n == 0:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[-1]


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def count_partitions(n: int, max_blocks: int | None = None) -> int:
    if max_blocks is None or max_blocks >= n:
        return bell(n)
    return sum(stirling2(n, k) for k in range(1, max_blocks + 1))


def random_partition(n: int, rng: random.Random, max_blocks: int | None = None) -> Partition:
    k = n if max_blocks is None else max(1, min(max_blocks, n))
    return Partition.from_labels([rng.randrange(k) for _ in range(n)])


class EntropyKind(str, Enum):
    SHANNON = "shannon"
    BOLTZMANN = "boltzmann"


EntropyFn = Callable[[Partition], float]


def shannon(p: Partition) -> float:
    n = p.ground_size
    total = 0.0
    for size in Counter(p.assignment).values():
        prob = size / n
        total -= prob * math.log2(prob)
    # -0.0 on trivial partitions
    return total + 0.0


def boltzmann(p: Partition) -> float:
    return math.log2(p.num_blocks)


_ENTROPIES: dict[EntropyKind, EntropyFn] = {
    EntropyKind.SHANNON: shannon,
    EntropyKind.BOLTZMANN: boltzmann,
}


def entropy_function(kind: Union[EntropyKind, str]) -> EntropyFn:
    return _ENTROPIES[EntropyKind(kind)]


def entropy_eval(kind: Union[EntropyKind, str], p: Partition) -> ExtReal:
    return ExtReal(entropy_function(kind)(p))


@dataclass
class AxiomOutcome:
    axiom: str
    passed: bool
    checked: int
    counterexample: dict[str, object] | None = None

    def to_json(self) -> dict[str, object]:
        return {
            "axiom": self.axiom,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }


@dataclass
class AxiomReport:
    entropy: str
    n_max: int
    outcomes: list[AxiomOutcome]

    @property
    def passed(self) -> bool:
        return all(outcome.passed for outcome in self.outcomes)

    @property
    def first_failure(self) -> AxiomOutcome | None:
        return next((outcome for outcome in self.outcomes if not outcome.passed), None)

    def to_json(self) -> dict[str, object]:
        failure = self.first_failure
        return {
            "entropy": self.entropy,
            "n_max": self.n_max,
            "passed": self.passed,
            "first_failure": failure.axiom if failure else None,
            "axioms": [outcome.to_json() for outcome in self.outcomes],
            "tolerance": TOLERANCE,
        }


AXIOMS = ("bound", "zero_iff_trivial", "monotone", "iso_invariant", "additive")


def check_entropy_axioms(
    entropy: Union[EntropyKind, str, EntropyFn],
    n_max: int,
    tensor_max: int | None = None,
) -> AxiomReport:
    """Exhaustively test the five entropy axioms on all partitions of sets of size <= n_max.

    ``tensor_max`` bounds each factor of the additivity check (default ``min(n_max, 4)``).
    """
    if n_max > 7:
        raise ValidationError("check_entropy_axioms supports n_max <= 7")
    if callable(entropy) and not isinstance(entropy, (str, EntropyKind)):
        fn, name = entropy, getattr(entropy, "__name__", "custom")
    else:
        fn, name = entropy_function(entropy), EntropyKind(entropy).value
    tensor_max = min(n_max, 4) if tensor_max is None else tensor_max
    by_size = {n: list(enumerate_partitions(n)) for n in range(1, n_max + 1)}
    values = {p: fn(p) for parts in by_size.values() for p in parts}
    outcomes = [
        _axiom_bound(values),
        _axiom_zero(values),
        _axiom_monotone(by_size, values),
        _axiom_iso(values),
        _axiom_additive(by_size, values, fn, tensor_max),
    ]
    return AxiomReport(entropy=name, n_max=n_max, outcomes=outcomes)


def _axiom_bound(values: dict[Partition, float]) -> AxiomOutcome:
    for checked, (p, h) in enumerate(values.items(), start=1):
        if h > math.log2(p.num_blocks) + TOLERANCE:
            return AxiomOutcome("bound", False, checked, {"partition": p.rgs, "H": h, "log_blocks": math.log2(p.num_blocks)})
    return AxiomOutcome("bound", True, len(values))


def _axiom_zero(values: dict[Partition, float]) -> AxiomOutcome:
    for checked, (p, h) in enumerate(values.items(), start=1):
        if (abs(h) <= TOLERANCE) != p.is_trivial:
            return AxiomOutcome("zero_iff_trivial", False, checked, {"partition": p.rgs, "H": h})
    return AxiomOutcome("zero_iff_trivial", True, len(values))


def _axiom_monotone(by_size: dict[int, list[Partition]], values: dict[Partition, float]) -> AxiomOutcome:
    checked = 0
    for parts in by_size.values():
        for coarse in parts:
            for fine in parts:
                if not is_finer(fine, coarse):
                    continue
                checked += 1
                if values[coarse] > values[fine] + TOLERANCE:
                    return AxiomOutcome(
                        "monotone", False, checked, {"coarser": coarse.rgs, "finer": fine.rgs,
                                                     "H_coarser": values[coarse], "H_finer": values[fine]}
                    )
    return AxiomOutcome("monotone", True, checked)


def _axiom_iso(values: dict[Partition, float]) -> AxiomOutcome:
    first_seen: dict[tuple[int, ...], Partition] = {}
    checked = 0
    for p, h in values.items():
        key = p.block_sizes()
        reference = first_seen.setdefault(key, p)
        checked += 1
        if abs(values[reference] - h) > TOLERANCE:
            return AxiomOutcome("iso_invariant", False, checked, {"left": reference.rgs, "right": p.rgs})
    return AxiomOutcome("iso_invariant", True, checked)


def _axiom_additive(
    by_size: dict[int, list[Partition]], values: dict[Partition, float], fn: EntropyFn, tensor_max: int
) -> AxiomOutcome:
    factors = [p for n, parts in by_size.items() if n <= tensor_max for p in parts]
    checked = 0
    for p in factors:
        for q in factors:
            checked += 1
            product = tensor(p, q)
            h = values.get(product)
            if h is None:
                h = fn(product)
            if abs(h - (values[p] + values[q])) > TOLERANCE:
                return AxiomOutcome(
                    "additive", False, checked, {"left": p.rgs, "right": q.rgs, "H_product": h,
                                                 "H_sum": values[p] + values[q]}
                )
    return AxiomOutcome("additive", True, checked)
