"""Subcommand handlers: each turns parsed arguments into a CommandOutcome."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Optional, Sequence

from ..cache import ENGINE_VERSION
from ..checks import CheckRecorder
from ..console import note
from ..corpus import builtin_corpus, default_pairs, load_corpus, star_bases, worked_example
from ..entropy import EntropyConfig, boltzmann_identity_check, entropy_theorem_suite, oracle_antitone_check, phi, ramsey_entropy
from ..errors import ValidationError
from ..fincat import FinCategory, duplicate_object, load_category, predicates
from ..functors import (
    FunctorTable,
    collapse_functor,
    entropy_nondecreasing_check,
    functor_properties,
    identity_functor,
    load_functor,
    order_forgetting_functor,
    order_forgetting_oracle_check,
)
from ..partition import EntropyKind, check_entropy_axioms, parse_partition
from ..ramsey import (
    arrow_check,
    degree_bounds_universe,
    degree_exact_finite,
    discrepancy_probe,
    degree_law_suite,
    essential_check,
    essential_min,
    locate,
    tensor_essential_suite,
    universe_category,
    witness_search,
)
from ..structcat import ORACLE_CLASSES, ORACLE_PROVENANCE, as_category, automorphisms, degree_oracle, parse_structure, universe
from ..subobj import basic_props_suite, subobjects
from .env import Settings

Obj = Hashable
Table = tuple[list[dict[str, Any]], list[str]]

SUITE_PARTS = ("axioms", "degree", "basic", "entropy", "functor")


@dataclass
class CommandOutcome:
    result: Any
    headline: str
    ok: bool = True
    lines: list[str] = field(default_factory=list)
    recorders: list[CheckRecorder] = field(default_factory=list)
    table: Optional[Table] = None
    exit_code: int = 0


def dispatch(args, settings: Settings) -> CommandOutcome:
    handler = HANDLERS[args.command]
    return handler(args, settings)


# --- shared helpers -----------------------------------------------------------------------


def _target(args, settings: Settings, names: Sequence[str], universe_scope: bool = False) -> tuple[FinCategory, list[Obj]]:
    """Resolve object names against ``--cat`` or parse them as ``--class`` literals."""
    if args.cat is not None:
        cat = load_category(args.cat)
        return cat, [cat.require_object(name) for name in names]
    if args.kind is None:
        raise ValidationError("give a category file with --cat or a structure class with --class")
    structures = [parse_structure(args.kind, text) for text in names]
    if universe_scope:
        cat = universe_category(args.kind, args.n_max, settings.budgets)
        return cat, [locate(cat, s) for s in structures]
    return as_category(args.kind, structures, settings.budgets), structures


def _cached(settings: Settings, kind: str, payload: Any, compute: Callable[[], Any]) -> Any:
    """JSON-shaped result, through the cache when one is configured."""

    def fresh() -> Any:
        return json.loads(json.dumps(compute(), sort_keys=True, ensure_ascii=False))

    if settings.cache is None:
        return fresh()
    result, hit = settings.cache.fetch(kind, payload, fresh)
    if hit:
        note("cache", f"hit {kind}", enabled=settings.color)
    return result


def _key(cat: FinCategory, **query: Any) -> dict[str, Any]:
    return {"category": cat.fingerprint(), "query": query}


# --- handlers -----------------------------------------------------------------------------


def _validate_cat(args, settings: Settings) -> CommandOutcome:
    cat = load_category(args.path)
    preds = predicates(cat)
    result = {
        "category": cat.name,
        "valid": True,
        "objects": len(cat.objects),
        "morphisms": sum(1 for _ in cat.morphisms()),
        "predicates": {name: p.to_json() for name, p in preds.items()},
    }
    lines = [f"{name}: {'yes' if p.holds else 'no'}" + (f" ({p.note})" if p.note else "") for name, p in preds.items()]
    return CommandOutcome(result, f"{cat.name} satisfies the category laws", lines=lines)


def _structures(args, settings: Settings) -> CommandOutcome:
    rows = []
    for s in universe(args.kind, args.n_max, settings.budgets):
        row: dict[str, Any] = {"label": s.label, "n": s.n, "aut": len(automorphisms(s))}
        if s.kind in ORACLE_CLASSES:
            row["degree_oracle"] = degree_oracle(s).to_json()
        rows.append(row)
    result = {
        "class": args.kind,
        "n_max": args.n_max,
        "count": len(rows),
        "structures": rows,
        "scope": f"up to isomorphism, at most {args.n_max} elements",
        "provenance": ORACLE_PROVENANCE if args.kind in ORACLE_CLASSES else None,
    }
    lines = [f"{row['label']}  n={row['n']}  |Aut|={row['aut']}" for row in rows]
    return CommandOutcome(
        result,
        f"{len(rows)} {args.kind} structure(s) with at most {args.n_max} elements",
        lines=lines,
        table=(rows, ["label", "n", "aut", "degree_oracle"]),
    )


def _hom(args, settings: Settings) -> CommandOutcome:
    cat, (a, b) = _target(args, settings, [args.a, args.b])
    arrows = [cat.label(f) for f in cat.hom(a, b)]
    result = {"A": cat.label(a), "B": cat.label(b), "count": len(arrows), "morphisms": arrows}
    return CommandOutcome(result, f"|hom({cat.label(a)}, {cat.label(b)})| = {len(arrows)}", lines=arrows)


def _subobj(args, settings: Settings) -> CommandOutcome:
    cat, (a, b) = _target(args, settings, [args.a, args.b])
    subs = subobjects(cat, a, b)
    result = subs.to_json(cat)
    result["count"] = len(subs)
    result["aut_A"] = len(cat.aut(a))
    lines = [" ".join(cls) for cls in result["classes"]]
    return CommandOutcome(
        result, f"|({cat.label(b)} choose {cat.label(a)})| = {len(subs)}", lines=lines
    )


def _arrow(args, settings: Settings) -> CommandOutcome:
    cat, (c, b, a) = _target(args, settings, [args.c, args.b, args.a])
    payload = _key(cat, C=args.c, B=args.b, A=args.a, k=args.k, t=args.t, kind=args.arrow_kind)
    result = _cached(
        settings,
        "arrow",
        payload,
        lambda: arrow_check(cat, c, b, a, args.k, args.t, args.arrow_kind, settings.threads).to_json(),
    )
    verdict = "holds" if result["holds"] else "fails"
    headline = f"{cat.label(c)} → ({cat.label(b)})^{cat.label(a)}_{{{args.k},{args.t}}} {verdict}"
    lines = [f"counterexample: {result['counterexample']['rgs']}"] if result.get("counterexample") else []
    return CommandOutcome(result, headline, ok=result["holds"], lines=lines)


def _witness(args, settings: Settings) -> CommandOutcome:
    cat, (b, a) = _target(args, settings, [args.b, args.a], universe_scope=args.kind is not None)
    payload = _key(cat, B=args.b, A=args.a, k=args.k, t=args.t, kind=args.arrow_kind)
    result = _cached(
        settings,
        "witness",
        payload,
        lambda: witness_search(cat, b, a, args.k, args.t, args.arrow_kind, threads=settings.threads).to_json(),
    )
    found = result["found"]
    headline = f"witness C = {found}" if found is not None else "no witness found"
    return CommandOutcome(result, headline, lines=[f"scope: {result['scope']}"])


def _degree(args, settings: Settings) -> CommandOutcome:
    if args.oracle:
        if args.kind is None:
            raise ValidationError("--oracle needs --class")
        s = parse_structure(args.kind, args.obj)
        value = degree_oracle(s)
        result = {"object": s.label, "value": value.to_json(), "provenance": ORACLE_PROVENANCE, "scope": f"class {s.kind}"}
        return CommandOutcome(result, f"t̃({s.label}) = {value}", lines=[f"provenance: {ORACLE_PROVENANCE}"])
    if args.cat is not None or args.exact:
        cat, (x,) = _target(args, settings, [args.obj], universe_scope=args.cat is None)
        payload = _key(cat, object=args.obj, kind=args.arrow_kind, exact=True)
        result = _cached(
            settings,
            "degree",
            payload,
            lambda: degree_exact_finite(cat, x, args.arrow_kind, threads=settings.threads).to_json(),
        )
        columns = ["B", "t", "C"]
    else:
        s = parse_structure(args.kind, args.obj)
        payload = {"class": args.kind, "n_max": args.n_max, "k_max": args.k_max, "object": s.to_json(), "hom": settings.budgets.hom}
        result = _cached(
            settings,
            "degree-bounds",
            payload,
            lambda: degree_bounds_universe(
                args.kind, s, args.n_max, args.k_max, budgets=settings.budgets, threads=settings.threads
            ).to_json(),
        )
        columns = ["B", "k", "t", "C"]
    lines = [f"scope: {result['scope']}"] + [str(n) for n in result.get("notes", [])]
    headline = f"t̃({result['object']}) ∈ [{result['lower_bound']}, {result['upper_bound']}]"
    if result["lower_bound"] == result["upper_bound"]:
        headline = f"t̃({result['object']}) = {result['upper_bound']}"
    return CommandOutcome(result, headline, lines=lines, table=(result["witnesses"], columns))


def _essential(args, settings: Settings) -> CommandOutcome:
    cat, (a, b) = _target(args, settings, [args.a, args.b], universe_scope=args.cat is None)
    c_range = [_resolve(cat, args, name) for name in args.c_range] if args.c_range else None
    query = dict(A=args.a, B=args.b, mode=args.mode.label(), C=args.c_range)
    if args.lam is not None:
        lam = parse_partition(args.lam, len(subobjects(cat, a, b)))
        result = _cached(
            settings,
            "essential",
            _key(cat, **query, lam=lam.rgs),
            lambda: essential_check(cat, a, b, lam, args.mode, c_range, settings.threads).to_json(),
        )
        verdict = "essential" if result["essential"] else "not essential"
        lines = [f"scope: {result['scope']}"]
        if result.get("witness"):
            lines.append(f"witness C = {result['witness']}")
        return CommandOutcome(result, f"Λ = {lam} is {verdict}", lines=lines)
    result = _cached(
        settings,
        "essential-min",
        _key(cat, **query, H=args.h.value, bell=settings.budgets.bell),
        lambda: essential_min(
            cat, a, b, args.mode, c_range, args.h, settings.budgets, settings.threads
        ).to_json(),
    )
    headline = f"least essential size {result['min_blocks']}, least {result['entropy']} entropy {result['min_entropy']}"
    return CommandOutcome(result, headline, lines=[f"scope: {result['scope']}", f"mode: {result['mode']}"])


def _resolve(cat: FinCategory, args, name: str) -> Obj:
    if args.cat is not None:
        return cat.require_object(name)
    return locate(cat, parse_structure(args.kind, name))  # type: ignore[arg-type]


def _entropy(args, settings: Settings) -> CommandOutcome:
    scope = args.scope or ("product-oracle" if args.product_with else "finite" if args.cat else "oracle")
    cfg = EntropyConfig(args.h, args.mode, scope, args.bound, settings.threads, settings.budgets)
    if scope == "finite":
        cat, (x,) = _target(args, settings, [args.obj])
        payload = _key(cat, object=args.obj, H=cfg.h.value, mode=cfg.mode.label(), bell=settings.budgets.bell)

        def compute() -> Any:
            return {
                "phi": phi(cfg, x, cat).to_json(),
                "detail": ramsey_entropy(cfg, x, cat).to_json(),
            }

    else:
        if args.kind is None:
            raise ValidationError(f"{scope} scope needs --class")
        x = parse_structure(args.kind, args.obj)
        if scope == "product-oracle":
            if not args.product_with or ":" not in args.product_with:
                raise ValidationError("--product-with must be CLASS:OBJECT")
            other_kind, _, other = args.product_with.partition(":")
            x = (x, parse_structure(other_kind, other))
        payload = {"object": args.obj, "class": args.kind, "with": args.product_with, "scope": scope, "bound": args.bound}

        def compute() -> Any:
            return {"phi": phi(cfg, x).to_json(), "detail": ramsey_entropy(cfg, x).to_json()}

    body = _cached(settings, "entropy", payload, compute)
    detail = body["detail"]
    result = {
        "phi": body["phi"],
        "r": detail["r"],
        "route": detail["route"],
        "scope": scope,
        "detail": detail,
    }
    rows = [{"object": name, "phi": value} for name, value in sorted(detail["phi"].items())]
    lines = [f"scope: {detail['scope']}", f"argmin: {detail['argmin']}"] + list(detail["notes"])
    return CommandOutcome(
        result, f"r̃({detail['object']}) = {detail['r']}", lines=lines, table=(rows, ["object", "phi"])
    )


def _suite(args, settings: Settings) -> CommandOutcome:
    corpus = load_corpus(args.corpus) if args.corpus else builtin_corpus()
    parts = args.only or list(SUITE_PARTS)
    cfg = EntropyConfig(args.h, args.mode, threads=settings.threads, budgets=settings.budgets)
    recorders: list[CheckRecorder] = []
    if "axioms" in parts:
        recorders.extend(_axiom_recorder(kind) for kind in EntropyKind)
    if "degree" in parts:
        recorders.append(degree_law_suite(corpus, default_pairs(corpus), settings.threads))
        recorders.append(discrepancy_probe(corpus, settings.threads))
        recorders.append(tensor_essential_suite(default_pairs(corpus), settings.threads, settings.budgets))
    if "basic" in parts:
        cats = [universe_category("linord", 5, settings.budgets), universe_category("graph", 5, settings.budgets)]
        recorders.append(basic_props_suite(cats, instances=200))
    if "entropy" in parts:
        recorders.append(boltzmann_identity_check(corpus, cfg.mode, settings.threads))
        recorders.append(entropy_theorem_suite(corpus, cfg, default_pairs(corpus), star_bases(corpus)))
        samples = [parse_structure("graph", text) for text in ("P3", "K2", "K3")]
        recorders.append(oracle_antitone_check(samples))
    if "functor" in parts:
        recorders.extend(_functor_recorders(cfg, settings))
    failed = [rec.suite for rec in recorders if not rec.passed]
    result = {
        "corpus": [cat.name for cat in corpus],
        "engine": ENGINE_VERSION,
        "passed": not failed,
        "suites": [rec.to_json() for rec in recorders],
    }
    headline = "all suites passed" if not failed else f"failing: {', '.join(failed)}"
    return CommandOutcome(result, headline, ok=not failed, recorders=recorders, exit_code=1 if failed else 0)


def _axiom_recorder(kind: EntropyKind) -> CheckRecorder:
    report = check_entropy_axioms(kind, 6, 4)
    rec = CheckRecorder(f"{kind.value} axioms")
    for outcome in report.outcomes:
        detail = json.dumps(outcome.counterexample, sort_keys=True) if outcome.counterexample else ""
        rec.expect_true(outcome.axiom, outcome.passed, detail, checked=outcome.checked)
    return rec


def _functor_recorders(cfg: EntropyConfig, settings: Settings) -> list[CheckRecorder]:
    e = worked_example()
    identity = entropy_nondecreasing_check(identity_functor(e), cfg)
    collapse = entropy_nondecreasing_check(collapse_functor(duplicate_object(e, "B"), e), cfg, strict=False)
    forget = order_forgetting_functor(3, settings.budgets)
    props = functor_properties(forget)
    rec = CheckRecorder(f"properties of {forget.name}")
    for name in ("finitary", "reasonable", "unique_restrictions"):
        result = props.results[name]
        rec.expect_true(name, result.holds, f"witness {result.witness}")
    k2 = locate(forget.target, parse_structure("graph", "K2"))  # type: ignore[arg-type]
    rec.expect_equal("|U⁻¹(K2)|", 2, len(forget.fiber(k2)))
    expansion = props.results["expansion"]
    rec.record("expansion", "holds" if expansion.holds else f"missing {expansion.witness}")
    forget_entropy = entropy_nondecreasing_check(forget, cfg, strict=False)
    return [
        identity.checks,
        _labelled(collapse.checks, collapse.label),
        rec,
        _labelled(forget_entropy.checks, forget_entropy.label),
        order_forgetting_oracle_check(4),
    ]


def _labelled(rec: CheckRecorder, label: Optional[str]) -> CheckRecorder:
    if label:
        rec.suite = f"{rec.suite} ({label})"
    return rec


def _functor(args, settings: Settings) -> CommandOutcome:
    u = _functor_table(args, settings)
    cfg = EntropyConfig(args.h, args.mode, threads=settings.threads, budgets=settings.budgets)
    report = entropy_nondecreasing_check(u, cfg, strict=not args.non_strict)
    result = {"functor": u.to_json(), "report": report.to_json()}
    props = report.properties
    lines = [f"{name}: {'yes' if props.results[name].holds else 'no'}" for name in props.results]
    if report.label:
        lines.append(report.label)
    return CommandOutcome(
        result,
        f"{u.name}: {u.source.name} → {u.target.name}",
        ok=report.passed,
        lines=lines,
        recorders=[_labelled(report.checks, report.label)],
    )


def _functor_table(args, settings: Settings) -> FunctorTable:
    if args.path is not None:
        return load_functor(args.path)
    if args.builtin == "identity":
        return identity_functor(worked_example())
    if args.builtin == "collapse":
        e = worked_example()
        return collapse_functor(duplicate_object(e, "B"), e)
    if args.builtin == "order-forgetting":
        return order_forgetting_functor(args.n_max, settings.budgets)
    raise ValidationError("give a functor file or --builtin")


def _cache(args, settings: Settings) -> CommandOutcome:
    store = settings.cache
    if store is None:
        raise ValidationError("no cache directory: pass --cache-dir or set RAMSEYLAB_CACHE")
    if args.action == "gc":
        removed = store.gc(args.max_mb, args.max_age_days)
        result = {"removed": len(removed), "stats": store.stats()}
        return CommandOutcome(result, f"removed {len(removed)} cache entr{'y' if len(removed) == 1 else 'ies'}")
    if args.action == "clear":
        count = store.clear()
        return CommandOutcome({"removed": count, "stats": store.stats()}, f"cleared {count} cache entries")
    stats = store.stats()
    return CommandOutcome(stats, f"{stats['entries']} cache entries, {stats['bytes']} bytes", lines=[stats["root"]])


HANDLERS: dict[str, Callable[[Any, Settings], CommandOutcome]] = {
    "validate-cat": _validate_cat,
    "structures": _structures,
    "hom": _hom,
    "subobj": _subobj,
    "arrow": _arrow,
    "witness": _witness,
    "degree": _degree,
    "essential": _essential,
    "entropy": _entropy,
    "suite": _suite,
    "functor": _functor,
    "cache": _cache,
}
