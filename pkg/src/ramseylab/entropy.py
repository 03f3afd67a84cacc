"""Ramsey entropy of objects: ``φ(A)`` and ``r̃(X) = min over ↑X of φ``.

Three scopes are supported:

* ``finite``: a finite category; φ is the sup over ↑A of the least entropy of an essential partition.
* ``oracle``: a structure class with a closed-form degree; φ = log t̃ (Boltzmann only) and the up-set is
  truncated to the universe of structures with at most ``bound`` elements.
* ``product-oracle``: pairs of structures from two oracle classes, degrees multiplied componentwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Optional, Sequence

from .checks import CheckRecorder
from .config import DEFAULT_BUDGETS, Budgets
from .errors import BudgetExceeded, UnsupportedQuery, ValidationError
from .extended import ExtNat, ExtReal
from .fincat import FinCategory, amalgamation, isomorphic_objects, product, star, state_space
from .partition import EntropyKind
from .ramsey import (
    GRADED,
    EssentialMode,
    degree_value,
    essential_min,
    locate,
    universe_category,
)
from .structcat import ORACLE_PROVENANCE, Structure, degree_oracle

Obj = Hashable

SCOPES = ("finite", "oracle", "product-oracle")
TRUNCATION_NOTE = "upper bound of the true infimum; stabilization not guaranteed by the tool"


@dataclass(frozen=True)
class EntropyConfig:
    h: EntropyKind = EntropyKind.BOLTZMANN
    mode: EssentialMode = GRADED
    scope: str = "finite"
    bound: int = 6
    threads: int = 1
    budgets: Budgets = DEFAULT_BUDGETS

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", EntropyKind(self.h))
        if self.scope not in SCOPES:
            raise ValidationError(f"scope must be one of {', '.join(SCOPES)}, got {self.scope!r}")
        if self.scope != "finite" and self.h is not EntropyKind.BOLTZMANN:
            raise UnsupportedQuery("oracle scopes compute φ as log t̃, which holds for Boltzmann entropy only")

    def with_entropy(self, h: EntropyKind) -> "EntropyConfig":
        return EntropyConfig(h, self.mode, self.scope, self.bound, self.threads, self.budgets)


@dataclass
class PhiResult:
    object: str
    value: ExtReal
    route: str
    scope: str
    argmax: Optional[str] = None
    per_b: list[dict[str, Any]] = field(default_factory=list)
    provenance: str = "computed"

    def to_json(self) -> dict[str, Any]:
        return {
            "object": self.object,
            "value": self.value.to_json(),
            "route": self.route,
            "scope": self.scope,
            "argmax": self.argmax,
            "per_b": self.per_b,
            "provenance": self.provenance,
        }


@dataclass
class EntropyResult:
    object: str
    value: ExtReal
    route: str
    scope: str
    argmin: Optional[str]
    phis: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "object": self.object,
            "r": self.value.to_json(),
            "route": self.route,
            "scope": self.scope,
            "argmin": self.argmin,
            "phi": self.phis,
            "notes": self.notes,
        }


# --- φ ------------------------------------------------------------------------------------


def _oracle(value_cache: dict[Structure, ExtNat], s: Structure) -> ExtNat:
    if s not in value_cache:
        value_cache[s] = degree_oracle(s)
    return value_cache[s]


def phi(cfg: EntropyConfig, a: Any, cat: Optional[FinCategory] = None) -> PhiResult:
    if cfg.scope == "finite":
        if cat is None:
            raise ValidationError("finite scope needs a category")
        return _phi_finite(cfg, cat, a)
    if cfg.scope == "oracle":
        value = degree_oracle(a)
        return PhiResult(a.label, value.log2(), "oracle", f"class {a.kind}", provenance=ORACLE_PROVENANCE)
    a1, a2 = a
    value = degree_oracle(a1) * degree_oracle(a2)
    return PhiResult(
        f"({a1.label},{a2.label})",
        value.log2(),
        "product-oracle",
        f"classes {a1.kind} × {a2.kind}",
        provenance=ORACLE_PROVENANCE,
    )


def _phi_finite(cfg: EntropyConfig, cat: FinCategory, a: Obj) -> PhiResult:
    key = ("phi", a, cfg.h, cfg.mode)
    cached = cat.memo.get(key)
    if cached is not None:
        return cached
    best: Optional[ExtReal] = None
    argmax = None
    per_b = []
    for b in cat.upset(a):
        found = essential_min(cat, a, b, cfg.mode, entropy=cfg.h, budgets=cfg.budgets, threads=cfg.threads)
        per_b.append({"B": cat.label(b), "min_entropy": found.min_entropy.to_json(), "min_blocks": found.min_blocks})
        if best is None or best < found.min_entropy:
            best, argmax = found.min_entropy, cat.label(b)
    assert best is not None
    result = PhiResult(cat.label(a), best, "essential-search", f"finite category {cat.name}", argmax, per_b)
    cat.memo[key] = result
    return result


# --- r̃ ------------------------------------------------------------------------------------


def ramsey_entropy(cfg: EntropyConfig, x: Any, cat: Optional[FinCategory] = None) -> EntropyResult:
    """``r̃(X)``: least φ over the up-set of X (truncated in the oracle scopes)."""
    if cfg.scope == "finite":
        if cat is None:
            raise ValidationError("finite scope needs a category")
        return _entropy_finite(cfg, cat, x)
    if cfg.scope == "oracle":
        return _entropy_oracle(cfg, x)
    return _entropy_product_oracle(cfg, x)


def _entropy_finite(cfg: EntropyConfig, cat: FinCategory, x: Obj) -> EntropyResult:
    key = ("entropy", x, cfg.h, cfg.mode)
    cached = cat.memo.get(key)
    if cached is not None:
        return cached
    cat.require_object(x)
    # objects with the smallest up-sets first: a zero φ ends the scan since entropies are >= 0
    order = sorted(cat.upset(x), key=lambda a: len(cat.upset(a)))
    best: Optional[PhiResult] = None
    phis: dict[str, Any] = {}
    notes: list[str] = []
    for a in order:
        current = _phi_finite(cfg, cat, a)
        phis[current.object] = current.value.to_json()
        if best is None or current.value < best.value:
            best = current
        if best.value == 0:
            if len(phis) < len(order):
                notes.append(f"scan stopped at φ({best.object}) = 0 after {len(phis)} of {len(order)} objects")
            break
    assert best is not None
    for value in phis.values():
        assert best.value.leq(ExtReal(value if value != "inf" else None))
    result = EntropyResult(cat.label(x), best.value, "essential-search", f"finite category {cat.name}", best.object, phis, notes)
    cat.memo[key] = result
    return result


def _entropy_oracle(cfg: EntropyConfig, x: Structure) -> EntropyResult:
    universe = universe_category(x.kind, cfg.bound, cfg.budgets)
    x_obj = locate(universe, x)
    values: dict[Structure, ExtNat] = {}
    best = min(universe.upset(x_obj), key=lambda s: (_oracle(values, s), universe.objects.index(s)))
    phis = {s.label: values[s].log2().to_json() for s in values}
    return EntropyResult(
        x.label,
        values[best].log2(),
        "oracle",
        f"{universe.name} up-set of {x.label}",
        best.label,
        phis,
        [TRUNCATION_NOTE, ORACLE_PROVENANCE],
    )


def _entropy_product_oracle(cfg: EntropyConfig, x: tuple[Structure, Structure]) -> EntropyResult:
    x1, x2 = x
    cat1 = universe_category(x1.kind, cfg.bound, cfg.budgets)
    cat2 = universe_category(x2.kind, cfg.bound, cfg.budgets)
    values: dict[Structure, ExtNat] = {}
    pairs = itertools.product(cat1.upset(locate(cat1, x1)), cat2.upset(locate(cat2, x2)))
    b1, b2 = min(pairs, key=lambda pair: _oracle(values, pair[0]) * _oracle(values, pair[1]))
    value = (values[b1] * values[b2]).log2()
    return EntropyResult(
        f"({x1.label},{x2.label})",
        value,
        "product-oracle",
        f"{cat1.name} × {cat2.name} up-set",
        f"({b1.label},{b2.label})",
        notes=[TRUNCATION_NOTE, ORACLE_PROVENANCE],
    )


def log_degree_entropy(cat: FinCategory, x: Obj, threads: int = 1) -> ExtReal:
    """``min over ↑X of log t̃``, the closed form of the Boltzmann-based entropy."""
    return min((degree_value(cat, a, threads=threads).log2() for a in cat.upset(x)), key=float)


def is_subramsey(cat: FinCategory, x: Obj, threads: int = 1) -> bool:
    return any(degree_value(cat, a, threads=threads) == 1 for a in cat.upset(x))


# --- validators ---------------------------------------------------------------------------


def boltzmann_identity_check(
    corpus: Sequence[FinCategory], mode: EssentialMode = GRADED, threads: int = 1
) -> CheckRecorder:
    """Boltzmann φ by essential search against log t̃, and Shannon r̃ <= Boltzmann r̃."""
    rec = CheckRecorder("boltzmann identity")
    boltzmann = EntropyConfig(EntropyKind.BOLTZMANN, mode, threads=threads)
    shannon = boltzmann.with_entropy(EntropyKind.SHANNON)
    for cat in corpus:
        for a in cat.objects:
            name = f"{cat.name}: {cat.label(a)}"
            searched = phi(boltzmann, a, cat).value
            closed = degree_value(cat, a, threads=threads).log2()
            if searched == closed:
                rec.expect_true(f"{name} φ = log t̃", True)
            else:
                rec.record(
                    f"{name} φ = log t̃",
                    "essential search and log degree disagree",
                    searched=searched.to_json(),
                    log_degree=closed.to_json(),
                )
            r_bol = ramsey_entropy(boltzmann, a, cat).value
            r_sha = ramsey_entropy(shannon, a, cat).value
            rec.expect_true(f"{name} r̃_Sha ≤ r̃_Bol", r_sha.leq(r_bol), f"{r_sha} > {r_bol}")
    return rec


def entropy_theorem_suite(
    corpus: Sequence[FinCategory],
    cfg: EntropyConfig = EntropyConfig(),
    pairs: Sequence[tuple[FinCategory, FinCategory]] = (),
    star_bases: Sequence[FinCategory] = (),
    star_length: int = 3,
) -> CheckRecorder:
    """Entropy laws on finite categories, their products and their state spaces."""
    rec = CheckRecorder("entropy theorems")
    threads = cfg.threads
    other = cfg.with_entropy(EntropyKind.SHANNON if cfg.h is EntropyKind.BOLTZMANN else EntropyKind.BOLTZMANN)
    for cat in corpus:
        amalgamates = amalgamation(cat).holds
        r = {a: ramsey_entropy(cfg, a, cat).value for a in cat.objects}
        for x in cat.objects:
            lx = cat.label(x)
            for y in cat.upset(x):
                rec.expect_true(f"{cat.name}: r̃({lx}) ≤ r̃({cat.label(y)})", r[x].leq(r[y]), f"{r[x]} > {r[y]}")
            log_t = degree_value(cat, x, threads=threads).log2()
            rec.expect_true(f"{cat.name}: r̃({lx}) ≤ log t̃", r[x].leq(log_t), f"{r[x]} > {log_t}")
            subramsey = is_subramsey(cat, x, threads)
            if subramsey:
                rec.expect_true(f"{cat.name}: r̃({lx}) = 0 on subramsey", r[x] == 0, str(r[x]))
            for y in cat.objects:
                if y != x and isomorphic_objects(cat, x, y):
                    rec.expect_true(f"{cat.name}: r̃({lx}) = r̃({cat.label(y)}) for isomorphic objects", r[x] == r[y])
            if amalgamates and cfg.h is EntropyKind.BOLTZMANN:
                closed = log_degree_entropy(cat, x, threads)
                rec.expect_true(f"{cat.name}: r̃({lx}) = min log t̃ over ↑X", r[x] == closed, f"{r[x]} ≠ {closed}")
                rec.expect_true(f"{cat.name}: r̃({lx}) = 0 iff subramsey", (r[x] == 0) == subramsey)
            r_other = ramsey_entropy(other, x, cat).value
            small, large = (r_other, r[x]) if cfg.h is EntropyKind.BOLTZMANN else (r[x], r_other)
            rec.expect_true(f"{cat.name}: r̃_Sha({lx}) ≤ r̃_Bol({lx})", small.leq(large), f"{small} > {large}")
            if cfg.h is EntropyKind.BOLTZMANN and cat.is_all_mono():
                # an engine bug if it fails: maximal objects of a finite all-mono category are Ramsey
                rec.expect_true(f"{cat.name}: r̃_Bol({lx}) = 0 on a finite all-mono category", r[x] == 0, str(r[x]))
                rec.expect_true(f"{cat.name}: {lx} subramsey", subramsey)
    for cat1, cat2 in pairs:
        _product_checks(rec, cfg, cat1, cat2)
    for base in star_bases:
        _state_space_checks(rec, cfg, base, star_length)
    return rec


def _product_checks(rec: CheckRecorder, cfg: EntropyConfig, cat1: FinCategory, cat2: FinCategory) -> None:
    try:
        prod = product(cat1, cat2, max_objects=cfg.budgets.product_objects, max_hom=cfg.budgets.hom)
    except BudgetExceeded as exc:
        rec.record(f"{cat1.name} × {cat2.name}", f"skipped: {exc}")
        return
    for x1, x2 in itertools.product(cat1.objects, cat2.objects):
        joint = ramsey_entropy(cfg, (x1, x2), prod).value
        total = ramsey_entropy(cfg, x1, cat1).value + ramsey_entropy(cfg, x2, cat2).value
        name = f"{prod.name}: r̃{prod.label((x1, x2))}"
        if cfg.h is EntropyKind.BOLTZMANN:
            rec.expect_equal(f"{name} additive", total.to_json(), joint.to_json())
        else:
            rec.expect_true(f"{name} subadditive", joint.leq(total), f"{joint} > {total}")
    _essential_subadditivity(rec, cfg, cat1, cat2, prod)


def _essential_subadditivity(
    rec: CheckRecorder, cfg: EntropyConfig, cat1: FinCategory, cat2: FinCategory, prod: FinCategory
) -> None:
    small = cfg.budgets.with_overrides(bell=1000)
    skipped = 0
    for a1, a2 in itertools.product(cat1.objects, cat2.objects):
        for b1, b2 in itertools.product(cat1.upset(a1), cat2.upset(a2)):
            try:
                m1 = essential_min(cat1, a1, b1, cfg.mode, entropy=cfg.h, budgets=small, threads=cfg.threads)
                m2 = essential_min(cat2, a2, b2, cfg.mode, entropy=cfg.h, budgets=small, threads=cfg.threads)
                joint = essential_min(
                    prod, (a1, a2), (b1, b2), cfg.mode, entropy=cfg.h, budgets=small, threads=cfg.threads
                )
            except BudgetExceeded:
                skipped += 1
                continue
            bound = m1.min_entropy + m2.min_entropy
            rec.expect_true(
                f"{prod.name}: min H over Ess{prod.label((b1, b2))}/{prod.label((a1, a2))} subadditive",
                joint.min_entropy.leq(bound),
                f"{joint.min_entropy} > {bound}",
                tensor_of=[m1.argmin_entropy.rgs if m1.argmin_entropy else None,
                           m2.argmin_entropy.rgs if m2.argmin_entropy else None],
            )
    if skipped:
        rec.record(f"{prod.name}: essential subadditivity", f"{skipped} pair(s) over the Bell budget skipped")


def _state_space_checks(rec: CheckRecorder, cfg: EntropyConfig, base: FinCategory, length: int) -> None:
    space = state_space(base, length)
    for n in range(1, length + 1):
        for xs in itertools.product(base.objects, repeat=n):
            expected = ExtNat(1)
            for x in xs:
                expected = expected * degree_value(base, x, threads=cfg.threads)
            actual = degree_value(space, tuple(xs), threads=cfg.threads)
            rec.expect_equal(f"{space.name}: t̃{space.label(tuple(xs))} factorises", expected.to_json(), actual.to_json())
    for split in range(1, length):
        for xs in itertools.product(base.objects, repeat=length):
            left, right = tuple(xs[:split]), tuple(xs[split:])
            joint = ramsey_entropy(cfg, star(left, right), space).value
            total = ramsey_entropy(cfg, left, space).value + ramsey_entropy(cfg, right, space).value
            rec.expect_true(
                f"{space.name}: r̃({space.label(left)} ⋆ {space.label(right)}) additive",
                joint == total,
                f"{joint} ≠ {total}",
            )


def oracle_antitone_check(objects: Sequence[Structure], bounds: Sequence[int] = (4, 5, 6)) -> CheckRecorder:
    """Oracle-scope r̃ can only drop as the truncation bound grows."""
    rec = CheckRecorder("oracle truncation")
    for s in objects:
        values = [ramsey_entropy(EntropyConfig(scope="oracle", bound=bound), s).value for bound in bounds if bound >= s.n]
        rec.expect_true(
            f"{s.label}: r̃ antitone over bounds {', '.join(map(str, bounds))}",
            all(later.leq(earlier) for earlier, later in zip(values, values[1:])),
            " ≥ ".join(str(v) for v in values),
        )
    return rec
