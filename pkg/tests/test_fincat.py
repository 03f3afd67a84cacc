import copy
import unittest
from pathlib import Path

from ramseylab.corpus import E_RAW, builtin_corpus, cyclic_group, fan, load_corpus, thin, torsor, worked_example
from ramseylab.errors import BudgetExceeded, CategoryLawError, ValidationError
from ramseylab.fincat import (
    all_mono,
    amalgamate_ext,
    amalgamation,
    cofinal,
    directed,
    dump_category,
    duplicate_object,
    is_group,
    is_iso,
    isomorphic_objects,
    load_category,
    power,
    product,
    star,
    state_space,
    validate_category,
)

PROJECT_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = PROJECT_ROOT / "tests" / "fixtures" / "categories"


class ValidationTests(unittest.TestCase):
    def test_worked_example_loads(self) -> None:
        cat = load_category(FIXTURES / "E.json")
        self.assertEqual(cat.name, "E")
        self.assertEqual(cat.hom("A", "B"), ("f1", "f2"))
        self.assertEqual(cat.compose("σ", "f1"), "f2")
        self.assertEqual(cat.compose("idB", "f2"), "f2")

    def test_broken_associativity_is_reported_with_witness(self) -> None:
        with self.assertRaises(CategoryLawError) as ctx:
            load_category(FIXTURES / "broken.json")
        self.assertEqual(ctx.exception.law, "associativity")
        self.assertIn("f1", ctx.exception.witness)

    def test_missing_composite_is_a_closure_error(self) -> None:
        raw = copy.deepcopy(E_RAW)
        raw["compose"] = [entry for entry in raw["compose"] if entry[:2] != ["σ", "σ"]]
        with self.assertRaises(CategoryLawError) as ctx:
            validate_category(raw)
        self.assertEqual(ctx.exception.law, "closure")
        self.assertEqual(ctx.exception.witness, ["σ", "σ"])

    def test_dangling_morphism_reference(self) -> None:
        raw = copy.deepcopy(E_RAW)
        raw["compose"].append(["σ", "nope", "f1"])
        with self.assertRaises(CategoryLawError) as ctx:
            validate_category(raw)
        self.assertEqual(ctx.exception.law, "dangling")

    def test_unreadable_file_is_a_validation_error(self) -> None:
        with self.assertRaises(ValidationError):
            load_category(FIXTURES / "missing.json")

    def test_dump_round_trips_through_validation(self) -> None:
        cat = worked_example()
        again = validate_category(dump_category(cat), "E")
        self.assertEqual(dump_category(again), dump_category(cat))

    def test_unknown_object(self) -> None:
        with self.assertRaises(ValidationError):
            worked_example().require_object("Q")


class PredicateTests(unittest.TestCase):
    def test_worked_example_predicates(self) -> None:
        cat = worked_example()
        self.assertTrue(all_mono(cat).holds)
        self.assertTrue(directed(cat).holds)
        self.assertTrue(amalgamation(cat).holds)
        self.assertEqual(cat.upset("A"), ("A", "B"))
        self.assertEqual(cat.aut("B"), ("idB", "σ"))
        self.assertEqual(cat.aut("A"), ("idA",))

    def test_parallel_arrows_without_symmetry_do_not_amalgamate(self) -> None:
        result = amalgamation(fan(2))
        self.assertFalse(result.holds)
        self.assertEqual(result.witness, ["f1", "f2"])

    def test_idempotent_breaks_mono(self) -> None:
        cat = load_category(FIXTURES / "non_mono.json")
        self.assertFalse(all_mono(cat).holds)
        self.assertFalse(cat.is_all_mono())

    def test_span_is_not_directed(self) -> None:
        span = thin("span", ["A", "B", "C"], [("A", "B"), ("A", "C")])
        result = directed(span)
        self.assertFalse(result.holds)
        self.assertEqual(result.witness, ["B", "C"])

    def test_cofinal_is_recorded_with_note(self) -> None:
        result = cofinal(worked_example(), ["B"])
        self.assertTrue(result.holds)
        self.assertIsNotNone(result.note)
        self.assertFalse(cofinal(worked_example(), ["A"]).holds)

    def test_isomorphisms_and_groups(self) -> None:
        e = worked_example()
        self.assertTrue(is_iso(e, "σ"))
        self.assertFalse(is_iso(e, "f1"))
        self.assertTrue(is_group(cyclic_group(3), "M"))
        self.assertTrue(is_group(e, "B"))

    def test_duplicate_object_is_isomorphic_copy(self) -> None:
        dup = duplicate_object(worked_example(), "B")
        cat = dup.category
        self.assertEqual(dup.copy, "B'")
        self.assertTrue(isomorphic_objects(cat, "B", "B'"))
        self.assertEqual(len(cat.hom("A", "B'")), 2)
        self.assertEqual(dup.object_map["B'"], "B")
        self.assertTrue(cat.is_all_mono())

    def test_extension_property(self) -> None:
        e = worked_example()
        witness = amalgamate_ext(e, "A", "B", "B", "f1")
        self.assertIsNotNone(witness)
        self.assertEqual(witness.d, "B")


class ConstructionTests(unittest.TestCase):
    def test_product_homs_multiply(self) -> None:
        prod = product(worked_example(), cyclic_group(2))
        self.assertEqual(len(prod.objects), 2)
        self.assertEqual(len(prod.hom(("A", "M"), ("B", "M"))), 4)
        self.assertEqual(prod.label(("A", "M")), "(A,M)")
        self.assertTrue(prod.is_all_mono())

    def test_product_budget(self) -> None:
        with self.assertRaises(BudgetExceeded):
            power(torsor(3), 4, max_objects=10)

    def test_state_space_separates_lengths(self) -> None:
        space = state_space(cyclic_group(2), 3)
        self.assertEqual(len(space.objects), 3)
        self.assertEqual(space.hom(("M",), ("M", "M")), ())
        self.assertEqual(len(space.hom(("M", "M"), ("M", "M"))), 4)
        self.assertEqual(star(("M",), ("M", "M")), ("M", "M", "M"))

    def test_builtin_corpus_is_all_mono(self) -> None:
        corpus = builtin_corpus()
        self.assertGreaterEqual(len(corpus), 10)
        for cat in corpus:
            self.assertTrue(cat.is_all_mono(), msg=cat.name)
            for a in cat.objects:
                for b in cat.objects:
                    self.assertLessEqual(len(cat.hom(a, b)), 4, msg=cat.name)

    def test_shipped_corpus_matches_builtin_names(self) -> None:
        shipped = {cat.name for cat in load_corpus(PROJECT_ROOT / "corpus")}
        builtin = {cat.name for cat in builtin_corpus()}
        self.assertEqual(len(shipped), 11)
        self.assertTrue(shipped <= builtin)

    def test_missing_corpus_directory(self) -> None:
        with self.assertRaises(ValidationError):
            load_corpus(PROJECT_ROOT / "no-such-corpus")


if __name__ == "__main__":
    unittest.main()
