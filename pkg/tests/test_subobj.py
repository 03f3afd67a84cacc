import math
import random
import unittest
from pathlib import Path

from hypothesis import given, settings
from hypothesis import strategies as st

from ramseylab.corpus import builtin_corpus, cyclic_group, torsor, worked_example
from ramseylab.errors import NonMonoError, ValidationError
from ramseylab.fincat import load_category
from ramseylab.partition import Partition, discrete, join, trivial
from ramseylab.structcat import as_category, chain, complete, path
from ramseylab.subobj import (
    basic_props_suite,
    check_basic_props,
    check_pullback_laws,
    image_map,
    pullback,
    subobjects,
)

FIXTURES = Path(__file__).resolve().parent / "fixtures" / "categories"
CHAINS = as_category("linord", [chain(1), chain(2), chain(3), chain(4)])

labellings = st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4)


class SubobjectTests(unittest.TestCase):
    def test_worked_example_classes(self) -> None:
        e = worked_example()
        self.assertEqual(subobjects(e, "A", "B").classes, (("f1",), ("f2",)))
        self.assertEqual(subobjects(e, "B", "B").classes, (("idB", "σ"),))
        self.assertEqual(len(subobjects(e, "B", "A")), 0)

    def test_group_and_torsor(self) -> None:
        self.assertEqual(len(subobjects(cyclic_group(3), "M", "M")), 1)
        self.assertEqual(len(subobjects(torsor(3), "A", "B")), 3)

    def test_chain_subobjects_are_subsets(self) -> None:
        cat = as_category("linord", [chain(2), chain(4)])
        self.assertEqual(len(subobjects(cat, chain(2), chain(4))), math.comb(4, 2))

    def test_graph_classes_quotient_automorphisms(self) -> None:
        cat = as_category("graph", [complete(2), path(3)])
        homs = cat.hom(complete(2), path(3))
        self.assertEqual(len(homs), 4)
        self.assertEqual(len(subobjects(cat, complete(2), path(3))), 2)

    def test_json_uses_labels(self) -> None:
        e = worked_example()
        body = subobjects(e, "A", "B").to_json(e)
        self.assertEqual(body["representatives"], ["f1", "f2"])

    def test_non_mono_category_is_refused(self) -> None:
        cat = load_category(FIXTURES / "non_mono.json")
        with self.assertRaises(NonMonoError):
            subobjects(cat, "A", "B")


class PullbackTests(unittest.TestCase):
    def test_automorphism_swaps_classes(self) -> None:
        e = worked_example()
        self.assertEqual(image_map(e, "σ", "A"), (1, 0))
        self.assertEqual(pullback(e, "σ", discrete(2), "A"), discrete(2))
        self.assertEqual(pullback(e, "σ", trivial(2), "A"), trivial(2))

    def test_identity_pulls_back_to_itself(self) -> None:
        cat = as_category("linord", [chain(2), chain(4)])
        pi = Partition((0, 1, 0, 2, 1, 0))
        self.assertEqual(pullback(cat, cat.identity(chain(4)), pi, chain(2)), pi)

    def test_partition_size_must_match(self) -> None:
        with self.assertRaises(ValidationError):
            pullback(worked_example(), "σ", trivial(3), "A")


class LeftMultiplicationTests(unittest.TestCase):
    def test_worked_example_has_no_violations(self) -> None:
        e = worked_example()
        for w in ("idB", "σ"):
            report = check_basic_props(e, "A", "B", "B", w)
            self.assertTrue(report.passed, msg=report.violations)
            self.assertTrue(report.exhaustive)
            self.assertEqual(report.partitions_checked, 2)

    def test_chain_embeddings(self) -> None:
        cat = as_category("linord", [chain(2), chain(3), chain(5)])
        for w in cat.hom(chain(3), chain(5)):
            report = check_basic_props(cat, chain(2), chain(3), chain(5), w)
            self.assertTrue(report.passed, msg=report.violations)

    def test_wrong_morphism_is_rejected(self) -> None:
        with self.assertRaises(ValidationError):
            check_basic_props(worked_example(), "A", "B", "B", "f1")

    def test_pullback_laws_along_a_chain(self) -> None:
        cat = as_category("linord", [chain(1), chain(2), chain(3), chain(4)])
        w = cat.hom(chain(2), chain(3))[0]
        v = cat.hom(chain(3), chain(4))[1]
        report = check_pullback_laws(cat, chain(1), w, v, random.Random(3), samples=5)
        self.assertEqual(report.violations, [])
        self.assertEqual(report.instances, 6)

    @settings(max_examples=100, deadline=None)
    @given(labellings, labellings, st.integers(min_value=0, max_value=2), st.integers(min_value=0, max_value=3))
    def test_pullback_respects_composition_and_join(self, first, second, i, j) -> None:
        w = CHAINS.hom(chain(2), chain(3))[i]
        v = CHAINS.hom(chain(3), chain(4))[j]
        vw = CHAINS.compose(v, w)
        p, q = Partition.from_labels(first), Partition.from_labels(second)
        a = chain(1)
        self.assertEqual(pullback(CHAINS, vw, p, a), pullback(CHAINS, w, pullback(CHAINS, v, p, a), a))
        self.assertEqual(
            pullback(CHAINS, vw, join([p, q]), a),
            join([pullback(CHAINS, vw, p, a), pullback(CHAINS, vw, q, a)]),
        )

    def test_suite_over_the_builtin_corpus(self) -> None:
        rec = basic_props_suite(builtin_corpus(), instances=40, seed=7)
        self.assertTrue(rec.passed, msg=[o.detail for o in rec.failures])
        self.assertEqual(len(rec.outcomes), 80)


if __name__ == "__main__":
    unittest.main()
