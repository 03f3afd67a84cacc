"""Subobject sets (B choose A) and pullback partitions along left multiplication."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Hashable, Sequence

from .checks import CheckRecorder
from .config import DEBUG
from .errors import NonMonoError, ValidationError
from .fincat import FinCategory
from .partition import (
    Partition,
    bell,
    discrete,
    enumerate_partitions,
    is_finer,
    join,
    random_partition,
)

EXHAUSTIVE_LIMIT = 10**4
SAMPLED_PARTITIONS = 200
SAMPLED_COLORINGS = 20

Obj = Hashable
Mor = Hashable


@dataclass(frozen=True)
class SubobjectSet:
    """hom(A, B) modulo precomposition with Aut(A); classes are ordered by least member."""

    a: Obj
    b: Obj
    classes: tuple[tuple[Mor, ...], ...]
    index_of: dict[Mor, int] = field(compare=False, hash=False, repr=False)

    def __len__(self) -> int:
        return len(self.classes)

    def representative(self, i: int) -> Mor:
        return self.classes[i][0]

    def to_json(self, cat: FinCategory) -> dict[str, Any]:
        return {
            "A": cat.label(self.a),
            "B": cat.label(self.b),
            "classes": [[cat.label(f) for f in cls] for cls in self.classes],
            "representatives": [cat.label(cls[0]) for cls in self.classes],
        }


def subobjects(cat: FinCategory, a: Obj, b: Obj) -> SubobjectSet:
    cat.require_object(a)
    cat.require_object(b)
    key = ("subobjects", a, b)
    cached = cat.memo.get(key)
    if cached is not None:
        return cached
    if not cat.is_all_mono():
        raise NonMonoError(f"{cat.name} has non-mono morphisms; subobjects need monos", law="mono")
    aut = cat.aut(a)
    index_of: dict[Mor, int] = {}
    classes: list[tuple[Mor, ...]] = []
    homs = cat.hom(a, b)
    position = {f: i for i, f in enumerate(homs)}
    for f in homs:
        if f in index_of:
            continue
        members = sorted({cat.compose(f, alpha) for alpha in aut}, key=position.__getitem__)
        if len(members) != len(aut):
            raise NonMonoError(
                f"class of {cat.label(f)} has {len(members)} members, expected |Aut| = {len(aut)}",
                law="free_action",
                witness=[cat.label(f)],
            )
        for g in members:
            index_of[g] = len(classes)
        classes.append(tuple(members))
    result = SubobjectSet(a, b, tuple(classes), index_of)
    cat.memo[key] = result
    return result


def image_map(cat: FinCategory, w: Mor, a: Obj) -> tuple[int, ...]:
    """Class index in (C choose A) of ``w · g`` for each class ``g`` of (B choose A)."""
    b, c = cat.dom(w), cat.cod(w)
    key = ("image", w, a)
    cached = cat.memo.get(key)
    if cached is not None:
        return cached
    source = subobjects(cat, a, b)
    target = subobjects(cat, a, c)
    result = tuple(target.index_of[cat.compose(w, cls[0])] for cls in source.classes)
    cat.memo[key] = result
    return result


def pullback(cat: FinCategory, w: Mor, pi: Partition, a: Obj) -> Partition:
    """Partition of (B choose A) grouping classes by the block of ``pi`` their ``w``-image lands in."""
    target = subobjects(cat, a, cat.cod(w))
    if pi.ground_size != len(target):
        raise ValidationError(
            f"partition over {pi.ground_size} elements does not match |({cat.label(cat.cod(w))} choose "
            f"{cat.label(a)})| = {len(target)}"
        )
    image = image_map(cat, w, a)
    pulled = Partition.from_labels([pi.assignment[j] for j in image])
    if DEBUG.verify_pullbacks:
        _verify_pullback(image, pi, pulled)
    return pulled


def _verify_pullback(image: tuple[int, ...], pi: Partition, pulled: Partition) -> None:
    for i in range(len(image)):
        for j in range(len(image)):
            if pulled.same_block(i, j) != pi.same_block(image[i], image[j]):
                raise AssertionError(f"pullback disagrees with the pulled partition on classes {i}, {j}")


# --- left multiplication ------------------------------------------------------------------


@dataclass
class BasicPropsReport:
    a: str
    b: str
    c: str
    w: str
    partitions_checked: int = 0
    exhaustive: bool = True
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict[str, Any]:
        return {
            "A": self.a,
            "B": self.b,
            "C": self.c,
            "w": self.w,
            "partitions_checked": self.partitions_checked,
            "exhaustive": self.exhaustive,
            "passed": self.passed,
            "violations": list(self.violations),
        }


def _partitions_of(n: int, rng: random.Random) -> tuple[list[Partition], bool]:
    if bell(n) <= EXHAUSTIVE_LIMIT:
        return list(enumerate_partitions(n)), True
    return [random_partition(n, rng) for _ in range(SAMPLED_PARTITIONS)], False


def check_basic_props(cat: FinCategory, a: Obj, b: Obj, c: Obj, w: Mor, seed: int = 0) -> BasicPropsReport:
    """Check the four left-multiplication properties for ``w: B -> C``; violations are listed, not raised."""
    if w not in cat.hom(b, c):
        raise ValidationError(f"{cat.label(w)} is not a morphism {cat.label(b)}→{cat.label(c)}")
    rng = random.Random(seed)
    report = BasicPropsReport(cat.label(a), cat.label(b), cat.label(c), cat.label(w))
    source = subobjects(cat, a, b)
    target = subobjects(cat, a, c)
    if not len(source):
        return report
    image = image_map(cat, w, a)

    preimages: dict[int, list[int]] = {}
    for i, j in enumerate(image):
        preimages.setdefault(j, []).append(i)
    for i, j in enumerate(image):
        if preimages[j] != [i]:
            report.violations.append(f"(a) preimage of the image of class {i} is {preimages[j]}")
    for j, pre in sorted(preimages.items()):
        if len(pre) > 1:
            report.violations.append(f"(b) class {j} of the target has {len(pre)} preimages")

    pis, exhaustive = _partitions_of(len(target), rng)
    report.exhaustive = exhaustive
    for pi in pis:
        report.partitions_checked += 1
        pulled = pullback(cat, w, pi, a)
        if pulled.ground_size != len(source):
            report.violations.append(f"(c) pullback of {pi.rgs} has the wrong ground size")
            continue
        for i in range(len(source)):
            for k in range(i + 1, len(source)):
                if pulled.same_block(i, k) != pi.same_block(image[i], image[k]):
                    report.violations.append(f"(c) pullback of {pi.rgs} splits classes {i} and {k} wrongly")

    lambdas, lambdas_exhaustive = _partitions_of(len(source), rng)
    report.exhaustive = report.exhaustive and lambdas_exhaustive
    chis = pis if len(pis) <= SAMPLED_COLORINGS else rng.sample(pis, SAMPLED_COLORINGS)
    for chi in chis:
        pulled = pullback(cat, w, chi, a)
        for lam in lambdas:
            finer = is_finer(lam, pulled)
            compatible = all(
                chi.same_block(image[i], image[k])
                for i in range(len(source))
                for k in range(len(source))
                if lam.same_block(i, k)
            )
            if finer != compatible:
                report.violations.append(f"(d) Λ={lam.rgs}, χ={chi.rgs}: finer={finer}, compatible={compatible}")
    return report


@dataclass
class PullbackLawReport:
    instances: int = 0
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {"instances": self.instances, "violations": list(self.violations)}


def check_pullback_laws(
    cat: FinCategory, a: Obj, w: Mor, v: Mor, rng: random.Random, samples: int = 10
) -> PullbackLawReport:
    """Composition ``pull(v·w) = pull(w) ∘ pull(v)``, discrete-to-discrete and compatibility with join."""
    report = PullbackLawReport()
    if cat.cod(w) != cat.dom(v):
        raise ValidationError(f"{cat.label(v)}·{cat.label(w)} is not composable")
    d = cat.cod(v)
    top = len(subobjects(cat, a, d))
    if not top or not len(subobjects(cat, a, cat.dom(w))):
        return report
    vw = cat.compose(v, w)
    pulled_discrete = pullback(cat, vw, discrete(top), a)
    report.instances += 1
    if not pulled_discrete.is_discrete:
        report.violations.append(f"discrete pullback along {cat.label(vw)} is {pulled_discrete.rgs}")
    for _ in range(samples):
        p1, p2 = random_partition(top, rng), random_partition(top, rng)
        report.instances += 1
        direct = pullback(cat, vw, p1, a)
        stepwise = pullback(cat, w, pullback(cat, v, p1, a), a)
        if direct != stepwise:
            report.violations.append(f"composition: {direct.rgs} != {stepwise.rgs} for Π={p1.rgs}")
        joined = pullback(cat, vw, join([p1, p2]), a)
        separate = join([pullback(cat, vw, p1, a), pullback(cat, vw, p2, a)])
        if joined != separate:
            report.violations.append(f"join: {joined.rgs} != {separate.rgs}")
    return report


def random_instance(cat: FinCategory, rng: random.Random) -> tuple[Obj, Obj, Obj, Mor]:
    """A random chain A -> B -> C with its middle morphism, drawn in declaration order."""
    a = rng.choice(cat.objects)
    b = rng.choice(cat.upset(a))
    c = rng.choice(cat.upset(b))
    w = rng.choice(cat.hom(b, c))
    return a, b, c, w


def basic_props_suite(cats: Sequence[FinCategory], instances: int = 200, seed: int = 0) -> CheckRecorder:
    """Random (A, B, C, w) instances spread over ``cats``, plus the pullback laws along w then v."""
    rec = CheckRecorder("left multiplication")
    rng = random.Random(seed)
    for index in range(instances):
        cat = cats[index % len(cats)]
        a, b, c, w = random_instance(cat, rng)
        report = check_basic_props(cat, a, b, c, w, seed=rng.randrange(2**31))
        rec.expect_true(
            f"{cat.name} #{index}: {report.a} → {report.b} →{report.w} {report.c}",
            report.passed,
            "\n".join(report.violations),
        )
        d = rng.choice(cat.upset(c))
        v = rng.choice(cat.hom(c, d))
        laws = check_pullback_laws(cat, a, w, v, rng, samples=3)
        rec.expect_true(f"{cat.name} #{index}: pullback laws", not laws.violations, "\n".join(laws.violations))
    return rec
