import unittest
from pathlib import Path

from ramseylab.corpus import worked_example
from ramseylab.errors import FunctorLawError, UnsupportedQuery, ValidationError
from ramseylab.fincat import duplicate_object
from ramseylab.functors import (
    OUTSIDE,
    collapse_functor,
    entropy_nondecreasing_check,
    functor_properties,
    identity_functor,
    load_functor,
    order_forgetting_functor,
    order_forgetting_oracle_check,
    validate_functor,
)
from ramseylab.ramsey import locate
from ramseylab.structcat import complete

FIXTURES = Path(__file__).resolve().parent / "fixtures" / "categories"


class FunctorLawTests(unittest.TestCase):
    def test_identity_fixture_loads(self) -> None:
        u = load_functor(FIXTURES / "identity_E.json")
        self.assertEqual(u.name, "identity on E")
        self.assertIs(u.source, u.target)
        self.assertEqual(u.on_morphism("σ"), "σ")

    def test_broken_composition_names_the_pair(self) -> None:
        with self.assertRaises(FunctorLawError) as ctx:
            load_functor(FIXTURES / "broken_functor.json")
        self.assertEqual(ctx.exception.law, "composition")
        self.assertEqual(ctx.exception.witness, ["σ", "f1"])

    def test_partial_maps_are_rejected(self) -> None:
        e = worked_example()
        with self.assertRaises(FunctorLawError) as ctx:
            validate_functor(e, e, {"A": "A"}, {})
        self.assertEqual(ctx.exception.law, "total")
        morphisms = {f: f for f in e.morphisms()}
        morphisms["f1"] = "idB"
        with self.assertRaises(FunctorLawError) as ctx:
            validate_functor(e, e, {"A": "A", "B": "B"}, morphisms)
        self.assertEqual(ctx.exception.law, "ends")

    def test_missing_file(self) -> None:
        with self.assertRaises(ValidationError):
            load_functor(FIXTURES / "nope.json")


class FunctorEntropyTests(unittest.TestCase):
    def test_identity_satisfies_everything(self) -> None:
        u = identity_functor(worked_example())
        self.assertEqual(functor_properties(u).failed, [])
        report = entropy_nondecreasing_check(u)
        self.assertTrue(report.passed, msg=report.to_json())
        self.assertIsNone(report.label)

    def test_collapse_is_refused_in_strict_mode(self) -> None:
        e = worked_example()
        u = collapse_functor(duplicate_object(e, "B"), e)
        self.assertIn("unique_restrictions", functor_properties(u).failed)
        with self.assertRaises(UnsupportedQuery):
            entropy_nondecreasing_check(u)

    def test_collapse_runs_labelled_when_not_strict(self) -> None:
        e = worked_example()
        report = entropy_nondecreasing_check(collapse_functor(duplicate_object(e, "B"), e), strict=False)
        self.assertEqual(report.label, OUTSIDE)
        self.assertTrue(report.passed)
        self.assertEqual(report.to_json()["label"], OUTSIDE)

    def test_order_forgetting_fibers(self) -> None:
        u = order_forgetting_functor(3)
        self.assertEqual(len(u.source.objects), 29)
        self.assertEqual(len(u.fiber(locate(u.target, complete(2)))), 2)
        self.assertTrue(u.source.is_all_mono())

    def test_order_forgetting_oracle_route(self) -> None:
        rec = order_forgetting_oracle_check(4)
        self.assertTrue(rec.passed, msg=[(o.name, o.detail) for o in rec.failures])
        self.assertEqual(len(rec.outcomes), 2 * 18)


if __name__ == "__main__":
    unittest.main()
