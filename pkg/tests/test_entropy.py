import math
import unittest

from ramseylab.corpus import builtin_corpus, cyclic_group, worked_example
from ramseylab.entropy import (
    TRUNCATION_NOTE,
    EntropyConfig,
    boltzmann_identity_check,
    entropy_theorem_suite,
    is_subramsey,
    log_degree_entropy,
    oracle_antitone_check,
    phi,
    ramsey_entropy,
)
from ramseylab.errors import UnsupportedQuery, ValidationError
from ramseylab.partition import EntropyKind
from ramseylab.ramsey import LITERAL
from ramseylab.structcat import ORACLE_PROVENANCE, complete, parse_structure, path


class FiniteScopeTests(unittest.TestCase):
    def test_phi_of_the_worked_example(self) -> None:
        result = phi(EntropyConfig(), "A", worked_example())
        self.assertAlmostEqual(result.value.value, 1.0)
        self.assertEqual(result.argmax, "B")
        self.assertEqual(result.route, "essential-search")
        self.assertEqual(result.provenance, "computed")
        self.assertEqual([row["B"] for row in result.per_b], ["A", "B"])

    def test_entropy_vanishes_and_stops_early(self) -> None:
        result = ramsey_entropy(EntropyConfig(), "A", worked_example())
        self.assertEqual(result.value, 0)
        self.assertEqual(result.argmin, "B")
        self.assertEqual(list(result.phis), ["B"])
        self.assertTrue(result.notes[0].startswith("scan stopped"))

    def test_literal_mode_and_shannon_agree_here(self) -> None:
        e = worked_example()
        cfg = EntropyConfig(EntropyKind.SHANNON, LITERAL)
        self.assertAlmostEqual(phi(cfg, "A", e).value.value, 1.0)
        self.assertEqual(ramsey_entropy(cfg, "A", e).value, 0)

    def test_closed_form(self) -> None:
        e = worked_example()
        self.assertEqual(log_degree_entropy(e, "A"), 0)
        self.assertTrue(is_subramsey(e, "A"))
        self.assertTrue(is_subramsey(cyclic_group(3), "M"))

    def test_finite_scope_needs_a_category(self) -> None:
        with self.assertRaises(ValidationError):
            phi(EntropyConfig(), "A")


class OracleScopeTests(unittest.TestCase):
    def test_shannon_has_no_oracle(self) -> None:
        with self.assertRaises(UnsupportedQuery):
            EntropyConfig(EntropyKind.SHANNON, scope="oracle")
        with self.assertRaises(ValidationError):
            EntropyConfig(scope="galactic")

    def test_phi_is_log_of_the_degree(self) -> None:
        result = phi(EntropyConfig(scope="oracle"), path(4))
        self.assertAlmostEqual(result.value.value, math.log2(12))
        self.assertEqual(result.provenance, ORACLE_PROVENANCE)

    def test_path_entropy_within_a_bound(self) -> None:
        result = ramsey_entropy(EntropyConfig(scope="oracle", bound=4), path(3))
        self.assertAlmostEqual(result.value.value, math.log2(3))
        self.assertIn(TRUNCATION_NOTE, result.notes)

    def test_complete_graphs_are_ramsey(self) -> None:
        result = ramsey_entropy(EntropyConfig(scope="oracle", bound=4), complete(3))
        self.assertEqual(result.value, 0)

    def test_product_adds(self) -> None:
        cfg = EntropyConfig(scope="product-oracle", bound=4)
        result = ramsey_entropy(cfg, (path(3), path(3)))
        self.assertAlmostEqual(result.value.value, 2 * math.log2(3))
        chain = parse_structure("linord", "3")
        mixed = ramsey_entropy(cfg, (path(3), chain))
        self.assertAlmostEqual(mixed.value.value, math.log2(3))

    def test_truncation_is_antitone(self) -> None:
        rec = oracle_antitone_check([path(3), complete(2)], bounds=(3, 4))
        self.assertTrue(rec.passed, msg=[o.detail for o in rec.failures])


class EntropySuiteTests(unittest.TestCase):
    def test_boltzmann_identity(self) -> None:
        rec = boltzmann_identity_check([worked_example(), cyclic_group(2)])
        self.assertTrue(rec.passed)
        self.assertFalse(any(o.status.value == "recorded" for o in rec.outcomes))

    def test_theorems_on_small_categories(self) -> None:
        e, z2 = worked_example(), cyclic_group(2)
        rec = entropy_theorem_suite([e, z2], pairs=[(e, z2)])
        self.assertTrue(rec.passed, msg=[(o.name, o.detail) for o in rec.failures])

    def test_theorems_over_the_builtin_corpus(self) -> None:
        for kind in (EntropyKind.BOLTZMANN, EntropyKind.SHANNON):
            rec = entropy_theorem_suite(builtin_corpus(), EntropyConfig(kind))
            self.assertTrue(rec.passed, msg=[(o.name, o.detail) for o in rec.failures])

    def test_boltzmann_identity_over_the_builtin_corpus(self) -> None:
        rec = boltzmann_identity_check(builtin_corpus())
        self.assertTrue(rec.passed, msg=[(o.name, o.detail) for o in rec.failures])


if __name__ == "__main__":
    unittest.main()
