"""Small finite categories used by the suites, and loading of category directories."""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Any, Sequence

from .errors import ValidationError
from .fincat import FinCategory, TableCategory, duplicate_object, load_category, validate_category

E_RAW: dict[str, Any] = {
    "name": "E",
    "objects": ["A", "B"],
    "morphisms": [
        {"id": "idA", "dom": "A", "cod": "A"},
        {"id": "idB", "dom": "B", "cod": "B"},
        {"id": "f1", "dom": "A", "cod": "B"},
        {"id": "f2", "dom": "A", "cod": "B"},
        {"id": "σ", "dom": "B", "cod": "B"},
    ],
    "identities": {"A": "idA", "B": "idB"},
    "compose": [["σ", "f1", "f2"], ["σ", "f2", "f1"], ["σ", "σ", "idB"]],
}


def worked_example() -> TableCategory:
    """A -> B with two arrows swapped by the non-trivial automorphism σ of B."""
    return validate_category(E_RAW, "E")


def fan(n: int, name: str | None = None) -> TableCategory:
    """A -> B with ``n`` parallel arrows and no non-trivial automorphisms; ``fan(2)`` is E′."""
    arrows = [{"id": f"f{i}", "dom": "A", "cod": "B"} for i in range(1, n + 1)]
    raw = {
        "objects": ["A", "B"],
        "morphisms": [{"id": "idA", "dom": "A", "cod": "A"}, {"id": "idB", "dom": "B", "cod": "B"}] + arrows,
        "identities": {"A": "idA", "B": "idB"},
        "compose": [],
    }
    return validate_category(raw, name or (f"fan{n}" if n != 2 else "E′"))


def cyclic_group(n: int, name: str | None = None) -> TableCategory:
    """One object M whose endomorphisms form Z/n."""
    ids = ["idM"] + [f"g{i}" for i in range(1, n)]
    raw = {
        "objects": ["M"],
        "morphisms": [{"id": g, "dom": "M", "cod": "M"} for g in ids],
        "identities": {"M": "idM"},
        "compose": [[ids[i], ids[j], ids[(i + j) % n]] for i in range(1, n) for j in range(1, n)],
    }
    return validate_category(raw, name or f"Z{n}")


def torsor(n: int, name: str | None = None) -> TableCategory:
    """A -> B where Z/n acts simply and transitively on hom(A, B) by post-composition."""
    group = ["idB"] + [f"g{i}" for i in range(1, n)]
    arrows = [f"f{i}" for i in range(1, n + 1)]
    compose = [[group[i], group[j], group[(i + j) % n]] for i in range(1, n) for j in range(1, n)]
    compose += [[group[i], arrows[j], arrows[(i + j) % n]] for i in range(1, n) for j in range(n)]
    raw = {
        "objects": ["A", "B"],
        "morphisms": [{"id": "idA", "dom": "A", "cod": "A"}]
        + [{"id": g, "dom": "B", "cod": "B"} for g in group]
        + [{"id": f, "dom": "A", "cod": "B"} for f in arrows],
        "identities": {"A": "idA", "B": "idB"},
        "compose": compose,
    }
    return validate_category(raw, name or f"torsor{n}")


def thin(name: str, objects: Sequence[str], order: Sequence[tuple[str, str]]) -> TableCategory:
    """The preorder category of a finite poset given by (smaller, larger) pairs; closed transitively."""
    below = {o: {o} for o in objects}
    for small, large in order:
        below[large].add(small)
    changed = True
    while changed:
        changed = False
        for o in objects:
            grown = set().union(*(below[p] for p in below[o]))
            if grown != below[o]:
                below[o], changed = grown, True
    pairs = [(a, b) for b in objects for a in objects if a in below[b]]
    ident = {o: f"id{o}" for o in objects}

    def arrow(a: str, b: str) -> str:
        return ident[a] if a == b else f"{a}<{b}"

    raw = {
        "objects": list(objects),
        "morphisms": [{"id": arrow(a, b), "dom": a, "cod": b} for a, b in pairs],
        "identities": ident,
        "compose": [
            [arrow(b, c), arrow(a, b), arrow(a, c)]
            for (a, b), (b2, c) in itertools.product(pairs, pairs)
            if b == b2 and a != b and b != c
        ],
    }
    return validate_category(raw, name)


def terminal() -> TableCategory:
    return thin("terminal", ["T"], [])


def builtin_corpus() -> list[TableCategory]:
    """At least ten all-mono categories with hom-sets of size at most four."""
    e = worked_example()
    return [
        e,
        fan(2),
        cyclic_group(2),
        cyclic_group(3),
        terminal(),
        thin("chain2", ["A", "B"], [("A", "B")]),
        thin("chain3", ["A", "B", "C"], [("A", "B"), ("B", "C")]),
        thin("span", ["A", "B", "C"], [("A", "B"), ("A", "C")]),
        thin("diamond", ["A", "B", "C", "D"], [("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")]),
        torsor(3),
        fan(3),
        duplicate_object(e, "B").category,
    ]


DEFAULT_PAIRS = (
    ("E", "E"),
    ("E", "Z2"),
    ("Z2", "Z3"),
    ("chain2", "E"),
    ("E′", "chain2"),
    ("torsor3", "terminal"),
)
STAR_BASES = ("E", "Z2")


def by_name(corpus: Sequence[FinCategory]) -> dict[str, FinCategory]:
    return {cat.name: cat for cat in corpus}


def default_pairs(corpus: Sequence[FinCategory]) -> list[tuple[FinCategory, FinCategory]]:
    """The product pairs of DEFAULT_PAIRS present in ``corpus``."""
    named = by_name(corpus)
    return [(named[a], named[b]) for a, b in DEFAULT_PAIRS if a in named and b in named]


def star_bases(corpus: Sequence[FinCategory]) -> list[FinCategory]:
    named = by_name(corpus)
    return [named[n] for n in STAR_BASES if n in named]


def load_corpus(directory: Path | str) -> list[TableCategory]:
    """Every ``*.json`` category in ``directory``, in file-name order."""
    root = Path(directory)
    if not root.is_dir():
        raise ValidationError(f"corpus directory {root} does not exist")
    files = sorted(root.glob("*.json"))
    if not files:
        raise ValidationError(f"no category files in {root}")
    return [load_category(path) for path in files]
