"""Finite relational structures and the categories of embeddings they generate."""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence

import networkx as nx
from networkx.algorithms import isomorphism as nxiso

from .config import DEFAULT_BUDGETS, Budgets
from .errors import UnsupportedQuery, ValidationError, check_budget
from .extended import ExtNat
from .fincat import FinCategory

SIGNATURES: dict[str, tuple[str, ...]] = {
    "graph": ("edge",),
    "poset": ("lt",),
    "linord": ("lt",),
    "digraph": ("arc",),
    "ordgraph": ("edge", "lt"),
}
SYMMETRIC = {"edge"}
ORACLE_PROVENANCE = "oracle (literature)"
ORACLE_CLASSES = ("graph", "poset", "linord", "ordgraph")

Pair = tuple[int, int]


@dataclass(frozen=True)
class Structure:
    """A structure on ``{0, ..., n-1}``; relations are stored as sorted tuples of pairs."""

    kind: str
    n: int
    relations: tuple[tuple[str, tuple[Pair, ...]], ...]

    def pairs(self, name: str) -> tuple[Pair, ...]:
        for rel, pairs in self.relations:
            if rel == name:
                return pairs
        return ()

    @cached_property
    def _directed(self) -> dict[str, frozenset[Pair]]:
        out: dict[str, frozenset[Pair]] = {}
        for rel, pairs in self.relations:
            both = set(pairs)
            if rel in SYMMETRIC:
                both |= {(j, i) for i, j in pairs}
            out[rel] = frozenset(both)
        return out

    def holds(self, name: str, i: int, j: int) -> bool:
        return (i, j) in self._directed.get(name, frozenset())

    @cached_property
    def label(self) -> str:
        return _label(self)

    def to_json(self) -> dict[str, Any]:
        return {
            "class": self.kind,
            "n": self.n,
            "relations": {rel: [list(p) for p in pairs] for rel, pairs in self.relations},
        }

    def __str__(self) -> str:
        return self.label


def make_structure(kind: str, n: int, relations: Mapping[str, Iterable[Sequence[int]]] | None = None) -> Structure:
    """Normalise and validate; poset ``lt`` is transitively closed first."""
    if kind not in SIGNATURES:
        raise ValidationError(f"unknown structure class {kind!r}; expected one of {', '.join(SIGNATURES)}")
    if n < 1:
        raise ValidationError("structures need at least one element")
    relations = dict(relations or {})
    unknown = set(relations) - set(SIGNATURES[kind])
    if unknown:
        raise ValidationError(f"{kind} has no relation {sorted(unknown)[0]!r}")
    normalised: list[tuple[str, tuple[Pair, ...]]] = []
    for rel in SIGNATURES[kind]:
        pairs: set[Pair] = set()
        for raw in relations.get(rel, ()):
            if len(raw) != 2:
                raise ValidationError(f"{rel} tuples must be pairs, got {list(raw)}")
            i, j = int(raw[0]), int(raw[1])
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError(f"{rel} pair {(i, j)} outside 0..{n - 1}")
            if i == j:
                raise ValidationError(f"{rel} must be irreflexive, got loop at {i}")
            pairs.add((min(i, j), max(i, j)) if rel in SYMMETRIC else (i, j))
        if rel == "lt" and kind == "poset":
            pairs = _transitive_closure(n, pairs)
        normalised.append((rel, tuple(sorted(pairs))))
    structure = Structure(kind, n, tuple(normalised))
    _validate_order(structure)
    return structure


def _transitive_closure(n: int, pairs: set[Pair]) -> set[Pair]:
    reach = {i: {j for a, j in pairs if a == i} for i in range(n)}
    for k in range(n):
        for i in range(n):
            if k in reach[i]:
                reach[i] |= reach[k]
    return {(i, j) for i in range(n) for j in reach[i]}


def _validate_order(s: Structure) -> None:
    if "lt" not in SIGNATURES[s.kind]:
        return
    lt = set(s.pairs("lt"))
    for i, j in lt:
        if (j, i) in lt:
            raise ValidationError(f"order is not antisymmetric: {i}<{j} and {j}<{i}")
        for k in range(s.n):
            if (j, k) in lt and (i, k) not in lt:
                raise ValidationError(f"order is not transitive: {i}<{j}<{k} but not {i}<{k}")
    if s.kind in ("linord", "ordgraph"):
        for i, j in itertools.combinations(range(s.n), 2):
            if (i, j) not in lt and (j, i) not in lt:
                raise ValidationError(f"linear order leaves {i} and {j} incomparable")


def structure_from_json(raw: Mapping[str, Any]) -> Structure:
    try:
        return make_structure(str(raw["class"]), int(raw["n"]), raw.get("relations") or {})
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed structure {dict(raw)!r}: {exc}") from None


# --- named structures ------------------------------------------------------------------


def complete(n: int) -> Structure:
    return make_structure("graph", n, {"edge": itertools.combinations(range(n), 2)})


def empty_graph(n: int) -> Structure:
    return make_structure("graph", n)


def path(n: int) -> Structure:
    return make_structure("graph", n, {"edge": [(i, i + 1) for i in range(n - 1)]})


def cycle(n: int) -> Structure:
    if n < 3:
        raise ValidationError("cycles need at least 3 vertices")
    return make_structure("graph", n, {"edge": [(i, (i + 1) % n) for i in range(n)]})


def chain(n: int, kind: str = "linord") -> Structure:
    return make_structure(kind, n, {"lt": itertools.combinations(range(n), 2)})


def antichain(n: int) -> Structure:
    return make_structure("poset", n)


def v_poset() -> Structure:
    return make_structure("poset", 3, {"lt": [(0, 1), (0, 2)]})


def n_poset() -> Structure:
    return make_structure("poset", 4, {"lt": [(0, 2), (1, 2), (1, 3)]})


def _label(s: Structure) -> str:
    if s.kind == "linord":
        return f"c{s.n}"
    if s.kind == "graph":
        return f"g{s.n}:" + ",".join(f"{i}-{j}" for i, j in s.pairs("edge"))
    if s.kind == "digraph":
        return f"d{s.n}:" + ",".join(f"{i}>{j}" for i, j in s.pairs("arc"))
    if s.kind == "poset":
        return f"p{s.n}:" + ",".join(f"{i}<{j}" for i, j in _covers(s))
    order = sorted(range(s.n), key=lambda v: sum(1 for a, b in s.pairs("lt") if b == v))
    return f"o{s.n}:" + ",".join(f"{i}-{j}" for i, j in s.pairs("edge")) + ";" + "<".join(map(str, order))


def _covers(s: Structure) -> list[Pair]:
    lt = set(s.pairs("lt"))
    return [(i, j) for i, j in sorted(lt) if not any((i, k) in lt and (k, j) in lt for k in range(s.n))]


def parse_structure(kind: str, text: str) -> Structure:
    """Parse CLI shorthand: ``K3``, ``P4``, ``C4``, ``E3``, ``4:0-1,1-2``, ``6`` or ``c6`` for chains,
    ``p3:0<1,0<2``, ``A3``/``V``/``N`` for posets, ``d3:0>1`` for digraphs, ``o3:0-1;2<0<1`` for ordered graphs.
    """
    text = text.strip()
    if not text:
        raise ValidationError("empty structure literal")
    try:
        return _parse(kind, text)
    except (ValueError, IndexError):
        raise ValidationError(f"cannot parse {kind} literal {text!r}") from None


def _parse(kind: str, text: str) -> Structure:
    head = text[0].upper()
    if kind == "linord":
        return chain(int(text[1:] if head == "C" else text))
    if kind == "graph" and head in "KPCE" and text[1:].isdigit():
        n = int(text[1:])
        return {"K": complete, "P": path, "C": cycle, "E": empty_graph}[head](n)
    if kind == "poset":
        if text.upper() == "V":
            return v_poset()
        if text.upper() == "N":
            return n_poset()
        if head in "AC" and text[1:].isdigit():
            n = int(text[1:])
            return antichain(n) if head == "A" else chain(n, "poset")
    if text[0].isalpha():
        text = text[1:]
    size, _, body = text.partition(":")
    if kind == "ordgraph":
        edges_text, _, order_text = body.partition(";")
        n = int(size)
        order = [int(x) for x in order_text.split("<")] if order_text else list(range(n))
        return make_structure(
            "ordgraph",
            n,
            {"edge": _pairs(edges_text, "-"), "lt": [(order[i], order[j]) for i, j in itertools.combinations(range(n), 2)]},
        )
    sep, rel = {"graph": ("-", "edge"), "digraph": (">", "arc"), "poset": ("<", "lt")}[kind]
    if not body and not size.isdigit():
        pairs = _pairs(size, sep)
        n = max((max(p) for p in pairs), default=0) + 1
    else:
        pairs, n = _pairs(body, sep), int(size)
    return make_structure(kind, n, {rel: pairs})


def _pairs(text: str, sep: str) -> list[Pair]:
    out: list[Pair] = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        left, right = item.split(sep)
        out.append((int(left), int(right)))
    return out


# --- embeddings ------------------------------------------------------------------------


def _to_networkx(s: Structure) -> nx.Graph:
    if s.kind == "graph":
        graph = nx.Graph()
        graph.add_nodes_from(range(s.n))
        graph.add_edges_from(s.pairs("edge"))
        return graph
    graph = nx.DiGraph()
    graph.add_nodes_from(range(s.n))
    if s.kind == "digraph":
        graph.add_edges_from(s.pairs("arc"))
    elif s.kind == "ordgraph":
        for i, j in s.pairs("lt"):
            graph.add_edge(i, j, edge=s.holds("edge", i, j))
    else:
        graph.add_edges_from(s.pairs("lt"))
    return graph


def embeddings(a: Structure, b: Structure) -> list[tuple[int, ...]]:
    """All embeddings A -> B as element maps, in lexicographic order."""
    if a.kind != b.kind:
        raise ValidationError(f"class mismatch: {a.kind} vs {b.kind}")
    if a.n > b.n:
        return []
    if a.kind == "linord":
        rank = _ranks(a)
        order = sorted(range(b.n), key=_ranks(b).__getitem__)
        combos = itertools.combinations(range(b.n), a.n)
        return sorted(tuple(order[combo[rank[v]]] for v in range(a.n)) for combo in combos)
    big, small = _to_networkx(b), _to_networkx(a)
    if a.kind == "graph":
        matcher = nxiso.GraphMatcher(big, small)
    elif a.kind == "ordgraph":
        matcher = nxiso.DiGraphMatcher(big, small, edge_match=nxiso.categorical_edge_match("edge", False))
    else:
        matcher = nxiso.DiGraphMatcher(big, small)
    found = set()
    for mapping in matcher.subgraph_isomorphisms_iter():
        inverse = {v: k for k, v in mapping.items()}
        found.add(tuple(inverse[i] for i in range(a.n)))
    return sorted(found)


def _ranks(s: Structure) -> list[int]:
    rank = [0] * s.n
    for _, j in s.pairs("lt"):
        rank[j] += 1
    return rank


def automorphisms(a: Structure) -> list[tuple[int, ...]]:
    return embeddings(a, a)


# --- canonical forms -------------------------------------------------------------------


def _refine(s: Structure) -> list[list[int]]:
    rels = SIGNATURES[s.kind]
    out = {r: [[j for j in range(s.n) if s.holds(r, i, j)] for i in range(s.n)] for r in rels}
    inn = {r: [[j for j in range(s.n) if s.holds(r, j, i)] for i in range(s.n)] for r in rels}
    colors = _rank([tuple((len(out[r][v]), len(inn[r][v])) for r in rels) for v in range(s.n)])
    while True:
        signatures = [
            (colors[v],)
            + tuple(
                (tuple(sorted(colors[u] for u in out[r][v])), tuple(sorted(colors[u] for u in inn[r][v])))
                for r in rels
            )
            for v in range(s.n)
        ]
        refined = _rank(signatures)
        if len(set(refined)) == len(set(colors)):
            break
        colors = refined
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells, reverse=True)]


def _rank(signatures: list[Any]) -> list[int]:
    order = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [order[sig] for sig in signatures]


def _code(s: Structure, perm: Sequence[int]) -> tuple[int, ...]:
    return tuple(
        1 if s.holds(r, perm[i], perm[j]) else 0
        for r in SIGNATURES[s.kind]
        for i in range(s.n)
        for j in range(s.n)
    )


def canonical_labelling(s: Structure) -> tuple[int, ...]:
    """Permutation (new position -> old element) maximising the adjacency code within refined cells."""
    cells = _refine(s)
    best: tuple[int, ...] | None = None
    best_code: tuple[int, ...] | None = None
    for parts in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        perm = tuple(v for part in parts for v in part)
        code = _code(s, perm)
        if best_code is None or code > best_code:
            best, best_code = perm, code
    assert best is not None
    return best


def relabel(s: Structure, perm: Sequence[int]) -> Structure:
    new_of = {old: new for new, old in enumerate(perm)}
    return make_structure(
        s.kind,
        s.n,
        {rel: [(new_of[i], new_of[j]) for i, j in pairs] for rel, pairs in s.relations},
    )


@lru_cache(maxsize=65536)
def canonical_form(s: Structure) -> Structure:
    return relabel(s, canonical_labelling(s))


def canonical_key(s: Structure) -> tuple[int, tuple[int, ...]]:
    c = canonical_form(s)
    return c.n, _code(c, range(c.n))


def is_isomorphic(a: Structure, b: Structure) -> bool:
    return a.kind == b.kind and a.n == b.n and canonical_form(a) == canonical_form(b)


# --- universes -------------------------------------------------------------------------


def universe(kind: str, n_max: int, budgets: Budgets = DEFAULT_BUDGETS) -> tuple[Structure, ...]:
    """One canonical representative per isomorphism class, ordered by size then canonical code."""
    if kind not in SIGNATURES:
        raise ValidationError(f"unknown structure class {kind!r}")
    if n_max < 1:
        raise ValidationError("universe needs n_max >= 1")
    check_budget(f"{kind} universe", n_max, budgets.universe_cap(kind))
    return _universe(kind, n_max)


@lru_cache(maxsize=None)
def _universe(kind: str, n_max: int) -> tuple[Structure, ...]:
    if kind == "linord":
        return tuple(chain(n) for n in range(1, n_max + 1))
    if kind == "ordgraph":
        return tuple(_ordered_graphs(n_max))
    layers = [[canonical_form(make_structure(kind, 1))]]
    for n in range(2, n_max + 1):
        seen: dict[Structure, None] = {}
        for smaller in layers[-1]:
            for grown in _extensions(smaller):
                seen.setdefault(canonical_form(grown), None)
        layers.append(sorted(seen, key=canonical_key))
    return tuple(s for layer in layers for s in layer)


def _extensions(s: Structure) -> Iterator[Structure]:
    new = s.n
    if s.kind == "graph":
        for k in range(s.n + 1):
            for nbrs in itertools.combinations(range(s.n), k):
                yield make_structure("graph", s.n + 1, {"edge": list(s.pairs("edge")) + [(v, new) for v in nbrs]})
    elif s.kind == "digraph":
        for choice in itertools.product(range(4), repeat=s.n):
            arcs = list(s.pairs("arc"))
            for v, c in enumerate(choice):
                if c & 1:
                    arcs.append((v, new))
                if c & 2:
                    arcs.append((new, v))
            yield make_structure("digraph", s.n + 1, {"arc": arcs})
    else:
        # the new element is maximal; its strict down-set is any down-closed subset
        lt = set(s.pairs("lt"))
        for k in range(s.n + 1):
            for below in itertools.combinations(range(s.n), k):
                chosen = set(below)
                if all(i in chosen for i, j in lt if j in chosen):
                    yield make_structure("poset", s.n + 1, {"lt": list(lt) + [(v, new) for v in below]})


def _ordered_graphs(n_max: int) -> Iterator[Structure]:
    for n in range(1, n_max + 1):
        all_pairs = list(itertools.combinations(range(n), 2))
        layer = []
        for mask in range(1 << len(all_pairs)):
            edges = [p for bit, p in enumerate(all_pairs) if mask >> bit & 1]
            layer.append(make_structure("ordgraph", n, {"edge": edges, "lt": all_pairs}))
        yield from sorted(layer, key=canonical_key)


# --- counting and oracles --------------------------------------------------------------


def linear_extensions(p: Structure) -> int:
    """Number of linear extensions, by dynamic programming over down-sets."""
    if p.kind not in ("poset", "linord"):
        raise ValidationError(f"linear extensions need a poset, got {p.kind}")
    below = [0] * p.n
    for i, j in p.pairs("lt"):
        below[j] |= 1 << i
    full = (1 << p.n) - 1
    counts = {full: 1}

    def count(placed: int) -> int:
        if placed in counts:
            return counts[placed]
        total = 0
        for v in range(p.n):
            if not placed >> v & 1 and below[v] & placed == below[v]:
                total += count(placed | 1 << v)
        counts[placed] = total
        return total

    return count(0)


def degree_oracle(a: Structure) -> ExtNat:
    """Closed-form structural degree of A in its class; provenance is ORACLE_PROVENANCE."""
    if a.kind == "graph":
        return ExtNat(math.factorial(a.n) // len(automorphisms(a)))
    if a.kind == "poset":
        return ExtNat(linear_extensions(a) // len(automorphisms(a)))
    if a.kind in ("linord", "ordgraph"):
        return ExtNat(1)
    raise UnsupportedQuery(f"no degree oracle ships for class {a.kind}")


def ordered_fiber_classes(g: Structure) -> list[Structure]:
    """Isomorphism classes of linear orderings of a graph."""
    if g.kind != "graph":
        raise ValidationError("ordered fibers are defined for graphs")
    seen: dict[Structure, None] = {}
    for order in itertools.permutations(range(g.n)):
        seen.setdefault(canonical_form(_order_graph(g, order)), None)
    return sorted(seen, key=canonical_key)


def _order_graph(g: Structure, order: Sequence[int]) -> Structure:
    return make_structure(
        "ordgraph",
        g.n,
        {"edge": g.pairs("edge"), "lt": [(order[i], order[j]) for i, j in itertools.combinations(range(g.n), 2)]},
    )


def ordered_expansions(graphs: Iterable[Structure]) -> list[Structure]:
    """Every (graph, linear order) pair on the graph's own vertex set, not reduced up to isomorphism."""
    out = []
    for g in graphs:
        for order in itertools.permutations(range(g.n)):
            out.append(_order_graph(g, order))
    return out


def reduct(s: Structure) -> Structure:
    """Forget the order of an ordered graph."""
    if s.kind != "ordgraph":
        raise ValidationError("only ordered graphs have an order to forget")
    return make_structure("graph", s.n, {"edge": s.pairs("edge")})


# --- categories ------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    source: Structure
    target: Structure
    map: tuple[int, ...]


class StructureCategory(FinCategory):
    """Objects are structures of one class, morphisms their embeddings; hom-sets are built on demand."""

    mono_hint = True

    def __init__(
        self,
        structures: Sequence[Structure],
        names: Mapping[Structure, str] | None = None,
        name: str | None = None,
        budgets: Budgets = DEFAULT_BUDGETS,
    ) -> None:
        super().__init__()
        if not structures:
            raise ValidationError("a structure category needs at least one object")
        kinds = {s.kind for s in structures}
        if len(kinds) != 1:
            raise ValidationError(f"mixed structure classes: {sorted(kinds)}")
        self.kind = kinds.pop()
        self._objects = tuple(dict.fromkeys(structures))
        self._object_set = frozenset(self._objects)
        self._names = dict(names or {})
        self.name = name or f"{self.kind}s"
        self.budgets = budgets
        self._homs: dict[tuple[Structure, Structure], tuple[Embedding, ...]] = {}
        self._lock = threading.Lock()

    @property
    def objects(self) -> tuple[Structure, ...]:
        return self._objects

    def has_object(self, a: Any) -> bool:
        return a in self._object_set

    def hom(self, a: Any, b: Any) -> tuple[Embedding, ...]:
        cached = self._homs.get((a, b))
        if cached is not None:
            return cached
        maps = embeddings(a, b)
        check_budget("hom-set", len(maps), self.budgets.hom)
        result = tuple(Embedding(a, b, m) for m in maps)
        with self._lock:
            self._homs.setdefault((a, b), result)
        return self._homs[(a, b)]

    def identity(self, a: Any) -> Embedding:
        return Embedding(a, a, tuple(range(a.n)))

    def compose(self, g: Any, f: Any) -> Embedding:
        if f.target != g.source:
            raise ValidationError(f"{self.label(g)}·{self.label(f)} is not composable")
        return Embedding(f.source, g.target, tuple(g.map[i] for i in f.map))

    def dom(self, f: Any) -> Structure:
        return f.source

    def cod(self, f: Any) -> Structure:
        return f.target

    def label(self, x: Any) -> str:
        if isinstance(x, Structure):
            return self._names.get(x, x.label)
        if isinstance(x, Embedding):
            return f"{self.label(x.source)}→{self.label(x.target)}[{','.join(map(str, x.map))}]"
        return str(x)

    def find(self, label: str) -> Structure:
        for s in self._objects:
            if self.label(s) == label:
                return s
        raise ValidationError(f"unknown object {label!r} in {self.name}")

    def fingerprint(self) -> Any:
        return {"structures": [s.to_json() for s in self._objects]}


def as_category(
    kind: str,
    structures: int | Sequence[Structure],
    budgets: Budgets = DEFAULT_BUDGETS,
) -> StructureCategory:
    if isinstance(structures, int):
        return StructureCategory(universe(kind, structures, budgets), name=f"{kind}s≤{structures}", budgets=budgets)
    return StructureCategory(list(structures), budgets=budgets)
