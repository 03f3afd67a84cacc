"""Finite categories: validated composition tables, products, the state space and predicates."""

from __future__ import annotations

import itertools
import json
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .errors import CategoryLawError, ValidationError, check_budget

Obj = Hashable
Mor = Hashable

DENSE_COMPOSE_LIMIT = 4096
DEFAULT_PRODUCT_OBJECTS = 4096
DEFAULT_HOM_LIMIT = 5000


class FinCategory(ABC):
    """Read-only view of a finite category.

    Objects and morphisms are arbitrary hashable handles. ``hom`` lists morphisms in a fixed
    declaration order; every search in the package takes the first witness in that order.
    """

    name: str = "category"
    mono_hint: bool | None = None

    def __init__(self) -> None:
        self._aut_cache: dict[Obj, tuple[Mor, ...]] = {}
        self._upset_cache: dict[Obj, tuple[Obj, ...]] = {}
        self._mono: bool | None = None
        self.memo: dict[Any, Any] = {}

    @property
    @abstractmethod
    def objects(self) -> tuple[Obj, ...]: ...

    @abstractmethod
    def hom(self, a: Obj, b: Obj) -> tuple[Mor, ...]: ...

    @abstractmethod
    def identity(self, a: Obj) -> Mor: ...

    @abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor:
        """``g . f``; defined when ``dom(g) == cod(f)``."""

    @abstractmethod
    def dom(self, f: Mor) -> Obj: ...

    @abstractmethod
    def cod(self, f: Mor) -> Obj: ...

    def fingerprint(self) -> Any:
        """JSON-able description identifying the category for cache keys."""
        return dump_category(materialize(self))

    def label(self, x: Any) -> str:
        return str(x)

    def has_object(self, a: Obj) -> bool:
        return a in self.objects

    def require_object(self, a: Obj) -> Obj:
        if not self.has_object(a):
            raise ValidationError(f"unknown object {self.label(a)!r} in {self.name}")
        return a

    def morphisms(self) -> Iterator[Mor]:
        for a in self.objects:
            for b in self.objects:
                yield from self.hom(a, b)

    def aut(self, a: Obj) -> tuple[Mor, ...]:
        if a not in self._aut_cache:
            self.require_object(a)
            ida = self.identity(a)
            endo = self.hom(a, a)
            self._aut_cache[a] = tuple(
                f for f in endo if any(self.compose(g, f) == ida and self.compose(f, g) == ida for g in endo)
            )
        return self._aut_cache[a]

    def reaches(self, a: Obj, b: Obj) -> bool:
        return bool(self.hom(a, b))

    def upset(self, a: Obj) -> tuple[Obj, ...]:
        if a not in self._upset_cache:
            self.require_object(a)
            self._upset_cache[a] = tuple(b for b in self.objects if self.reaches(a, b))
        return self._upset_cache[a]

    def is_all_mono(self) -> bool:
        if self._mono is None:
            self._mono = self.mono_hint if self.mono_hint is not None else all_mono(self).holds
        return self._mono


@dataclass(frozen=True)
class Morphism:
    id: str
    dom: str
    cod: str


class TableCategory(FinCategory):
    """Category given by an explicit, validated composition table."""

    def __init__(
        self,
        name: str,
        objects: Sequence[str],
        morphisms: Sequence[Morphism],
        identities: dict[str, str],
        table: dict[tuple[str, str], str],
    ) -> None:
        super().__init__()
        self.name = name
        self._objects = tuple(objects)
        self._morphisms = {m.id: m for m in morphisms}
        self._order = [m.id for m in morphisms]
        self._identities = dict(identities)
        self._homs: dict[tuple[str, str], tuple[str, ...]] = {}
        for m in morphisms:
            self._homs[(m.dom, m.cod)] = self._homs.get((m.dom, m.cod), ()) + (m.id,)
        self._index = {mid: i for i, mid in enumerate(self._order)}
        size = len(self._order)
        self._dense: list[int] | None = None
        self._hashed: dict[tuple[str, str], str] | None = None
        if size < DENSE_COMPOSE_LIMIT:
            self._dense = [-1] * (size * size)
            for (g, f), h in table.items():
                self._dense[self._index[g] * size + self._index[f]] = self._index[h]
        else:
            self._hashed = dict(table)

    @property
    def objects(self) -> tuple[str, ...]:
        return self._objects

    def hom(self, a: Obj, b: Obj) -> tuple[str, ...]:
        return self._homs.get((a, b), ())  # type: ignore[arg-type]

    def identity(self, a: Obj) -> str:
        try:
            return self._identities[a]  # type: ignore[index]
        except KeyError:
            raise ValidationError(f"unknown object {a!r} in {self.name}") from None

    def morphism(self, f: str) -> Morphism:
        try:
            return self._morphisms[f]
        except KeyError:
            raise ValidationError(f"unknown morphism {f!r} in {self.name}") from None

    def dom(self, f: Mor) -> str:
        return self.morphism(f).dom  # type: ignore[arg-type]

    def cod(self, f: Mor) -> str:
        return self.morphism(f).cod  # type: ignore[arg-type]

    def compose(self, g: Mor, f: Mor) -> str:
        if self._dense is not None:
            size = len(self._order)
            h = self._dense[self._index[g] * size + self._index[f]]
            if h < 0:
                raise ValidationError(f"{g}·{f} is not defined in {self.name}")
            return self._order[h]
        try:
            return self._hashed[(g, f)]  # type: ignore[index]
        except KeyError:
            raise ValidationError(f"{g}·{f} is not defined in {self.name}") from None

    def morphisms(self) -> Iterator[str]:
        return iter(self._order)

    def table(self) -> Iterator[tuple[str, str, str]]:
        for g in self._order:
            for f in self._order:
                if self.dom(g) == self.cod(f):
                    yield g, f, self.compose(g, f)


# --- validation and JSON -----------------------------------------------------------


def validate_category(raw: dict[str, Any], name: str = "category") -> TableCategory:
    """Build a TableCategory from the JSON layout, or raise CategoryLawError on the first broken law."""
    objects = _validate_objects(raw.get("objects"))
    morphisms = _validate_morphisms(raw.get("morphisms"), set(objects))
    by_id = {m.id: m for m in morphisms}
    identities = _validate_identities(raw.get("identities"), objects, by_id)
    table = _validate_table(raw.get("compose"), by_id)
    _fill_identity_composites(table, morphisms, identities)
    for g in morphisms:
        for f in morphisms:
            if g.dom == f.cod and (g.id, f.id) not in table:
                raise CategoryLawError(
                    f"missing composite {g.id}·{f.id}", law="closure", witness=[g.id, f.id]
                )
    cat = TableCategory(name, objects, morphisms, identities, table)
    _check_identity_laws(cat)
    _check_associativity(cat)
    return cat


def _validate_objects(raw: Any) -> list[str]:
    if not isinstance(raw, list) or not raw:
        raise CategoryLawError("'objects' must be a nonempty list", law="shape")
    objects = [str(o) for o in raw]
    if len(set(objects)) != len(objects):
        raise CategoryLawError("duplicate object names", law="shape")
    return objects


def _validate_morphisms(raw: Any, objects: set[str]) -> list[Morphism]:
    if not isinstance(raw, list):
        raise CategoryLawError("'morphisms' must be a list", law="shape")
    out: list[Morphism] = []
    seen: set[str] = set()
    for entry in raw:
        try:
            m = Morphism(str(entry["id"]), str(entry["dom"]), str(entry["cod"]))
        except (KeyError, TypeError):
            raise CategoryLawError(f"malformed morphism entry {entry!r}", law="shape") from None
        if m.id in seen:
            raise CategoryLawError(f"duplicate morphism id {m.id}", law="shape", witness=[m.id])
        for end in (m.dom, m.cod):
            if end not in objects:
                raise CategoryLawError(
                    f"dangling morphism {m.id}: {end} is not an object", law="dangling", witness=[m.id]
                )
        seen.add(m.id)
        out.append(m)
    return out


def _validate_identities(raw: Any, objects: list[str], by_id: dict[str, Morphism]) -> dict[str, str]:
    if not isinstance(raw, dict):
        raise CategoryLawError("'identities' must be an object", law="shape")
    identities: dict[str, str] = {}
    for obj in objects:
        ident = raw.get(obj)
        if ident is None or ident not in by_id:
            raise CategoryLawError(f"missing identity for {obj}", law="identity", witness=[obj])
        m = by_id[ident]
        if m.dom != obj or m.cod != obj:
            raise CategoryLawError(
                f"identity {ident} of {obj} is {m.dom}→{m.cod}", law="identity", witness=[ident]
            )
        identities[obj] = ident
    return identities


def _validate_table(raw: Any, by_id: dict[str, Morphism]) -> dict[tuple[str, str], str]:
    if not isinstance(raw, list):
        raise CategoryLawError("'compose' must be a list of [g, f, g·f]", law="shape")
    table: dict[tuple[str, str], str] = {}
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 3:
            raise CategoryLawError(f"malformed compose entry {entry!r}", law="shape")
        g, f, h = (str(x) for x in entry)
        for mid in (g, f, h):
            if mid not in by_id:
                raise CategoryLawError(f"compose entry names unknown morphism {mid}", law="dangling", witness=[mid])
        mg, mf, mh = by_id[g], by_id[f], by_id[h]
        if mg.dom != mf.cod:
            raise CategoryLawError(f"{g}·{f} composes non-composable morphisms", law="closure", witness=[g, f])
        if mh.dom != mf.dom or mh.cod != mg.cod:
            raise CategoryLawError(
                f"{g}·{f} = {h} but {h} is {mh.dom}→{mh.cod}, expected {mf.dom}→{mg.cod}",
                law="closure",
                witness=[g, f, h],
            )
        if table.setdefault((g, f), h) != h:
            raise CategoryLawError(f"{g}·{f} given two values", law="closure", witness=[g, f])
    return table


def _fill_identity_composites(
    table: dict[tuple[str, str], str], morphisms: list[Morphism], identities: dict[str, str]
) -> None:
    # composites with an identity may be omitted from the file; explicit entries are still checked
    for m in morphisms:
        table.setdefault((identities[m.cod], m.id), m.id)
        table.setdefault((m.id, identities[m.dom]), m.id)


def _check_identity_laws(cat: FinCategory) -> None:
    for f in cat.morphisms():
        left = cat.compose(cat.identity(cat.cod(f)), f)
        right = cat.compose(f, cat.identity(cat.dom(f)))
        if left != f:
            ident = cat.identity(cat.cod(f))
            raise CategoryLawError(
                f"identity law: {cat.label(ident)}·{cat.label(f)} = {cat.label(left)} ≠ {cat.label(f)}",
                law="identity",
                witness=[cat.label(ident), cat.label(f)],
            )
        if right != f:
            ident = cat.identity(cat.dom(f))
            raise CategoryLawError(
                f"identity law: {cat.label(f)}·{cat.label(ident)} = {cat.label(right)} ≠ {cat.label(f)}",
                law="identity",
                witness=[cat.label(f), cat.label(ident)],
            )


def _check_associativity(cat: FinCategory) -> None:
    for f, g, h in _composable_triples(cat):
        left = cat.compose(cat.compose(h, g), f)
        right = cat.compose(h, cat.compose(g, f))
        if left != right:
            names = [cat.label(x) for x in (h, g, f)]
            raise CategoryLawError(
                f"associativity: ({names[0]}·{names[1]})·{names[2]} = {cat.label(left)} "
                f"but {names[0]}·({names[1]}·{names[2]}) = {cat.label(right)}",
                law="associativity",
                witness=names,
            )


def _composable_triples(cat: FinCategory) -> Iterator[tuple[Mor, Mor, Mor]]:
    objs = cat.objects
    for a, b, c, d in itertools.product(objs, repeat=4):
        for f in cat.hom(a, b):
            for g in cat.hom(b, c):
                for h in cat.hom(c, d):
                    yield f, g, h


def check_laws(cat: FinCategory) -> list[str]:
    """Run the identity, closure and associativity scans on any view; returns violations."""
    problems: list[str] = []
    for a in cat.objects:
        for b in cat.objects:
            for f in cat.hom(a, b):
                if cat.dom(f) != a or cat.cod(f) != b:
                    problems.append(f"closure: {cat.label(f)} listed in hom({cat.label(a)},{cat.label(b)})")
    for step in (_check_identity_laws, _check_associativity):
        try:
            step(cat)
        except CategoryLawError as exc:
            problems.append(str(exc))
    for f, g, _ in _composable_triples(cat):
        h = cat.compose(g, f)
        if cat.dom(h) != cat.dom(f) or cat.cod(h) != cat.cod(g):
            problems.append(f"closure: {cat.label(g)}·{cat.label(f)} has wrong ends")
            break
    return problems


def load_category(path: Path | str) -> TableCategory:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read category {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ValidationError(f"category file {path} must hold a JSON object")
    return validate_category(raw, name=raw.get("name") or path.stem)


def dump_category(cat: FinCategory) -> dict[str, Any]:
    """JSON layout of a table category (labels become ids)."""
    table = cat if isinstance(cat, TableCategory) else materialize(cat)
    return {
        "name": table.name,
        "objects": list(table.objects),
        "morphisms": [{"id": m, "dom": table.dom(m), "cod": table.cod(m)} for m in table.morphisms()],
        "identities": {o: table.identity(o) for o in table.objects},
        "compose": [list(entry) for entry in table.table()],
    }


def materialize(cat: FinCategory, name: str | None = None) -> TableCategory:
    """Copy any finite view into a TableCategory keyed by labels."""
    if isinstance(cat, TableCategory):
        return cat
    objects = [cat.label(o) for o in cat.objects]
    morphisms: list[Morphism] = []
    handles: list[Mor] = []
    for a in cat.objects:
        for b in cat.objects:
            for f in cat.hom(a, b):
                morphisms.append(Morphism(cat.label(f), cat.label(a), cat.label(b)))
                handles.append(f)
    table: dict[tuple[str, str], str] = {}
    for f in handles:
        for g in _out_of(cat, cat.cod(f)):
            table[(cat.label(g), cat.label(f))] = cat.label(cat.compose(g, f))
    identities = {cat.label(o): cat.label(cat.identity(o)) for o in cat.objects}
    return TableCategory(name or cat.name, objects, morphisms, identities, table)


def _out_of(cat: FinCategory, a: Obj) -> Iterator[Mor]:
    for b in cat.objects:
        yield from cat.hom(a, b)


# --- products, powers, state space ---------------------------------------------------


class ProductCategory(FinCategory):
    """Componentwise product of finitely many categories; objects and morphisms are tuples."""

    def __init__(
        self,
        factors: Sequence[FinCategory],
        max_objects: int = DEFAULT_PRODUCT_OBJECTS,
        max_hom: int = DEFAULT_HOM_LIMIT,
    ) -> None:
        super().__init__()
        if not factors:
            raise ValidationError("a product needs at least one factor")
        self.factors = tuple(factors)
        count = 1
        for factor in self.factors:
            count *= len(factor.objects)
        check_budget("product objects", count, max_objects)
        self.max_hom = max_hom
        self.name = " × ".join(f.name for f in self.factors)
        self._objects = tuple(itertools.product(*(f.objects for f in self.factors)))
        self._object_set = frozenset(self._objects)
        self._homs: dict[tuple[Obj, Obj], tuple[Mor, ...]] = {}
        self._lock = threading.Lock()
        if all(f.is_all_mono() for f in self.factors):
            self.mono_hint = True

    @property
    def objects(self) -> tuple[tuple[Obj, ...], ...]:
        return self._objects

    def has_object(self, a: Obj) -> bool:
        return a in self._object_set

    def hom(self, a: Obj, b: Obj) -> tuple[Mor, ...]:
        key = (a, b)
        cached = self._homs.get(key)
        if cached is not None:
            return cached
        parts = [f.hom(x, y) for f, x, y in zip(self.factors, a, b)]  # type: ignore[arg-type]
        size = 1
        for part in parts:
            size *= len(part)
        check_budget("hom-set", size, self.max_hom)
        result = tuple(itertools.product(*parts))
        with self._lock:
            self._homs[key] = result
        return result

    def identity(self, a: Obj) -> tuple[Mor, ...]:
        return tuple(f.identity(x) for f, x in zip(self.factors, a))  # type: ignore[arg-type]

    def compose(self, g: Mor, f: Mor) -> tuple[Mor, ...]:
        return tuple(c.compose(y, x) for c, y, x in zip(self.factors, g, f))  # type: ignore[arg-type]

    def dom(self, f: Mor) -> tuple[Obj, ...]:
        return tuple(c.dom(x) for c, x in zip(self.factors, f))  # type: ignore[arg-type]

    def cod(self, f: Mor) -> tuple[Obj, ...]:
        return tuple(c.cod(x) for c, x in zip(self.factors, f))  # type: ignore[arg-type]

    def label(self, x: Any) -> str:
        return "(" + ",".join(c.label(part) for c, part in zip(self.factors, x)) + ")"

    def fingerprint(self) -> Any:
        return {"product": [f.fingerprint() for f in self.factors]}


def product(cat1: FinCategory, cat2: FinCategory, **limits: int) -> ProductCategory:
    return ProductCategory((cat1, cat2), **limits)


def power(cat: FinCategory, n: int, **limits: int) -> ProductCategory:
    if n < 1:
        raise ValidationError("power needs n >= 1")
    return ProductCategory((cat,) * n, **limits)


class StateSpace(FinCategory):
    """Tuples of objects of every length up to ``n_max``; hom is empty across lengths."""

    def __init__(self, base: FinCategory, n_max: int, max_objects: int = DEFAULT_PRODUCT_OBJECTS) -> None:
        super().__init__()
        if n_max < 1:
            raise ValidationError("state space needs n_max >= 1")
        self.base = base
        self.n_max = n_max
        self.name = f"S({base.name})≤{n_max}"
        self.powers = {n: power(base, n, max_objects=max_objects) for n in range(1, n_max + 1)}
        self._objects = tuple(o for n in range(1, n_max + 1) for o in self.powers[n].objects)
        self.mono_hint = True if base.is_all_mono() else None

    @property
    def objects(self) -> tuple[tuple[Obj, ...], ...]:
        return self._objects

    def has_object(self, a: Obj) -> bool:
        return isinstance(a, tuple) and 1 <= len(a) <= self.n_max and self.powers[len(a)].has_object(a)

    def hom(self, a: Obj, b: Obj) -> tuple[Mor, ...]:
        if len(a) != len(b):  # type: ignore[arg-type]
            return ()
        return self.powers[len(a)].hom(a, b)  # type: ignore[arg-type]

    def identity(self, a: Obj) -> tuple[Mor, ...]:
        return self.powers[len(a)].identity(a)  # type: ignore[arg-type]

    def compose(self, g: Mor, f: Mor) -> tuple[Mor, ...]:
        return self.powers[len(f)].compose(g, f)  # type: ignore[arg-type]

    def dom(self, f: Mor) -> tuple[Obj, ...]:
        return self.powers[len(f)].dom(f)  # type: ignore[arg-type]

    def cod(self, f: Mor) -> tuple[Obj, ...]:
        return self.powers[len(f)].cod(f)  # type: ignore[arg-type]

    def label(self, x: Any) -> str:
        return "(" + ",".join(self.base.label(part) for part in x) + ")"

    def fingerprint(self) -> Any:
        return {"state_space": self.base.fingerprint(), "n_max": self.n_max}

    def component(self, n: int) -> ProductCategory:
        return self.powers[n]


def state_space(cat: FinCategory, n_max: int) -> StateSpace:
    return StateSpace(cat, n_max)


def star(x: Sequence[Any], y: Sequence[Any]) -> tuple[Any, ...]:
    """Concatenation of tuples, on objects and on morphisms alike."""
    return tuple(x) + tuple(y)


# --- predicates ----------------------------------------------------------------------


@dataclass
class PredicateResult:
    name: str
    holds: bool
    witness: list[str] | None = None
    note: str | None = None

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "holds": self.holds, "witness": self.witness, "note": self.note}


def all_mono(cat: FinCategory) -> PredicateResult:
    """Every f is left-cancellable: f·g = f·h implies g = h."""
    for a in cat.objects:
        for b in cat.objects:
            for f in cat.hom(a, b):
                for x in cat.objects:
                    seen: dict[Mor, Mor] = {}
                    for g in cat.hom(x, a):
                        fg = cat.compose(f, g)
                        if fg in seen:
                            return PredicateResult(
                                "all_mono", False, [cat.label(f), cat.label(seen[fg]), cat.label(g)]
                            )
                        seen[fg] = g
    return PredicateResult("all_mono", True)


def directed(cat: FinCategory) -> PredicateResult:
    for a in cat.objects:
        for b in cat.objects:
            if not any(cat.reaches(b, c) for c in cat.upset(a)):
                return PredicateResult("directed", False, [cat.label(a), cat.label(b)])
    return PredicateResult("directed", True)


def amalgamation(cat: FinCategory) -> PredicateResult:
    """Every span B <-f- A -g-> C completes to a square h·f = k·g."""
    for a in cat.objects:
        out = [f for b in cat.objects for f in cat.hom(a, b)]
        for f in out:
            for g in out:
                if _amalgamate(cat, f, g) is None:
                    return PredicateResult("amalgamation", False, [cat.label(f), cat.label(g)])
    return PredicateResult("amalgamation", True)


def _amalgamate(cat: FinCategory, f: Mor, g: Mor) -> tuple[Obj, Mor, Mor] | None:
    b, c = cat.cod(f), cat.cod(g)
    for d in cat.objects:
        right = {cat.compose(k, g): k for k in reversed(cat.hom(c, d))}
        for h in cat.hom(b, d):
            k = right.get(cat.compose(h, f))
            if k is not None:
                return d, h, k
    return None


def cofinal(cat: FinCategory, subset: Iterable[Obj]) -> PredicateResult:
    chosen = [cat.require_object(o) for o in subset]
    for a in cat.objects:
        if not any(cat.reaches(a, s) for s in chosen):
            return PredicateResult("cofinal", False, [cat.label(a)])
    return PredicateResult("cofinal", True, note="recorded only; no validator consumes this flag")


def predicates(cat: FinCategory, subset: Iterable[Obj] | None = None) -> dict[str, PredicateResult]:
    results = {
        "all_mono": all_mono(cat),
        "directed": directed(cat),
        "amalgamation": amalgamation(cat),
    }
    if subset is not None:
        results["cofinal"] = cofinal(cat, subset)
    return results


def is_iso(cat: FinCategory, f: Mor) -> bool:
    a, b = cat.dom(f), cat.cod(f)
    ida, idb = cat.identity(a), cat.identity(b)
    return any(cat.compose(g, f) == ida and cat.compose(f, g) == idb for g in cat.hom(b, a))


def isomorphic_objects(cat: FinCategory, x: Obj, y: Obj) -> bool:
    return any(is_iso(cat, f) for f in cat.hom(x, y))


def is_group(cat: FinCategory, m: Obj) -> bool:
    """hom(M, M) consists of automorphisms."""
    return len(cat.aut(m)) == len(cat.hom(m, m))


# --- amalgamation extension ------------------------------------------------------------


@dataclass
class ExtensionWitness:
    d: Obj
    w: Mor
    note: str | None = None


def amalgamate_ext(cat: FinCategory, a: Obj, b: Obj, c: Obj, f: Mor) -> ExtensionWitness | None:
    """First (D, w: C -> D) in declaration order with ``w · hom(A, C) ⊆ hom(B, D) · f``."""
    for obj in (a, b, c):
        cat.require_object(obj)
    if f not in cat.hom(a, b):
        raise ValidationError(f"{cat.label(f)} is not a morphism {cat.label(a)}→{cat.label(b)}")
    from_a = cat.hom(a, c)
    for d in cat.objects:
        through_f = {cat.compose(h, f) for h in cat.hom(b, d)}
        if not through_f and from_a:
            continue
        for w in cat.hom(c, d):
            if all(cat.compose(w, g) in through_f for g in from_a):
                _verify_extension(cat, a, b, c, f, d, w)
                return ExtensionWitness(d, w)
    return None


def _verify_extension(cat: FinCategory, a: Obj, b: Obj, c: Obj, f: Mor, d: Obj, w: Mor) -> None:
    image = {cat.compose(w, g) for g in cat.hom(a, c)}
    allowed = {cat.compose(h, f) for h in cat.hom(b, d)}
    if not image <= allowed:
        raise AssertionError(f"extension witness {cat.label(w)} failed re-verification")


# --- non-skeletal copies ---------------------------------------------------------------


@dataclass
class Duplicate:
    """A category with an isomorphic copy of one object, plus the maps collapsing the copy back."""

    category: TableCategory
    copy: str
    object_map: dict[str, str]
    morphism_map: dict[str, str]


def duplicate_object(cat: TableCategory, x: str, copy: str | None = None) -> Duplicate:
    cat.require_object(x)
    copy = copy or f"{x}'"
    if cat.has_object(copy):
        raise ValidationError(f"object {copy!r} already exists in {cat.name}")
    ends = {o: (o,) for o in cat.objects}
    ends[x] = (x, copy)

    def lifted(m: str, src: str, dst: str) -> str:
        if src == cat.dom(m) and dst == cat.cod(m):
            return m
        return f"{m}@{src}>{dst}"

    morphisms: list[dict[str, str]] = []
    morphism_map: dict[str, str] = {}
    for m in cat.morphisms():
        for src in ends[cat.dom(m)]:
            for dst in ends[cat.cod(m)]:
                mid = lifted(m, src, dst)
                morphisms.append({"id": mid, "dom": src, "cod": dst})
                morphism_map[mid] = m
    compose: list[list[str]] = []
    for f in morphisms:
        for g in morphisms:
            if g["dom"] != f["cod"]:
                continue
            h = cat.compose(morphism_map[g["id"]], morphism_map[f["id"]])
            compose.append([g["id"], f["id"], lifted(h, f["dom"], g["cod"])])
    identities = {o: cat.identity(o) for o in cat.objects}
    identities[copy] = lifted(cat.identity(x), copy, copy)
    raw = {
        "objects": list(cat.objects) + [copy],
        "morphisms": morphisms,
        "identities": identities,
        "compose": compose,
    }
    object_map = {o: o for o in cat.objects}
    object_map[copy] = x
    dup = validate_category(raw, name=f"{cat.name}+{copy}")
    return Duplicate(dup, copy, object_map, morphism_map)
