import random
import unittest

from ramseylab.corpus import builtin_corpus, cyclic_group, default_pairs, fan, worked_example
from ramseylab.errors import ValidationError
from ramseylab.fincat import product
from ramseylab.partition import Partition, discrete, tensor, trivial
from ramseylab.ramsey import (
    GRADED,
    LITERAL,
    EssentialMode,
    arrow_check,
    arrow_problem,
    degree_bounds_universe,
    degree_exact_finite,
    degree_law_suite,
    degree_value,
    discrepancy_probe,
    essential_check,
    essential_join_witness,
    essential_min,
    raw_coloring_verdict,
    tensor_essential_check,
    tensor_essential_suite,
    verify_counterexample,
    verify_holds_sample,
    witness_search,
)
from ramseylab.structcat import as_category, chain, complete
from ramseylab.subobj import subobjects


def _chains(*sizes: int):
    return as_category("linord", [chain(n) for n in sizes])


class ArrowTests(unittest.TestCase):
    def test_six_points_force_a_monochromatic_triangle(self) -> None:
        cat = _chains(2, 3, 5, 6)
        result = arrow_check(cat, chain(6), chain(3), chain(2), k=2, t=1)
        self.assertTrue(result.holds)
        self.assertIsNone(result.counterexample)
        self.assertEqual(result.to_json()["verified_samples"], 100)

    def test_five_points_have_a_counterexample(self) -> None:
        cat = _chains(2, 3, 5, 6)
        result = arrow_check(cat, chain(5), chain(3), chain(2), k=2, t=1)
        self.assertFalse(result.holds)
        self.assertEqual(result.counterexample.ground_size, 10)
        self.assertEqual(result.min_colors, 2)
        self.assertIn("counterexample", result.to_json())
        problem, _ = arrow_problem(cat, chain(5), chain(3), chain(2), 2, 1)
        self.assertTrue(verify_counterexample(problem, result.counterexample.assignment))

    def test_pentagon_coloring_is_a_counterexample(self) -> None:
        cat = _chains(2, 3, 5)
        problem, _ = arrow_problem(cat, chain(5), chain(3), chain(2), 2, 1)
        pairs = [cls[0].map for cls in subobjects(cat, chain(2), chain(5)).classes]
        pentagon = [0 if (j - i) % 5 in (1, 4) else 1 for i, j in pairs]
        self.assertTrue(verify_counterexample(problem, pentagon))
        self.assertFalse(verify_counterexample(problem, [0] * len(pairs)))

    def test_threads_do_not_change_the_counterexample(self) -> None:
        cat = _chains(2, 3, 5)
        one = arrow_check(cat, chain(5), chain(3), chain(2), 2, 1, threads=1)
        many = arrow_check(cat, chain(5), chain(3), chain(2), 2, 1, threads=8)
        self.assertEqual(one.to_json(), many.to_json())

    def test_raw_colorings_agree_on_small_instances(self) -> None:
        e = worked_example()
        for t in (1, 2):
            problem, _ = arrow_problem(e, "B", "B", "A", 2, t)
            self.assertEqual(raw_coloring_verdict(problem), arrow_check(e, "B", "B", "A", 2, t).holds)

    def test_holds_verdict_survives_sampling(self) -> None:
        problem, _ = arrow_problem(worked_example(), "B", "B", "A", 2, 2)
        self.assertEqual(verify_holds_sample(problem, random.Random(0)), [])

    def test_arguments_are_validated(self) -> None:
        e = worked_example()
        with self.assertRaises(ValidationError):
            arrow_check(e, "B", "B", "A", 0, 1)
        with self.assertRaises(ValidationError):
            arrow_check(e, "A", "B", "A", 2, 1)
        with self.assertRaises(ValidationError):
            arrow_check(e, "B", "B", "A", 2, 1, kind="colorful")

    def test_witness_search_finds_the_least_c(self) -> None:
        cat = _chains(2, 3, 4, 5, 6)
        found = witness_search(cat, chain(3), chain(2), 2, 1)
        self.assertEqual(found.found, chain(6))
        self.assertEqual(len(found.checked), 4)
        missing = witness_search(_chains(2, 3, 4, 5), chain(3), chain(2), 2, 1)
        self.assertIsNone(missing.found)


class DegreeTests(unittest.TestCase):
    def test_worked_example_degrees(self) -> None:
        e = worked_example()
        estimate = degree_exact_finite(e, "A")
        self.assertTrue(estimate.exact)
        self.assertEqual(estimate.value, 2)
        self.assertEqual(estimate.k, 2)
        self.assertEqual(estimate.provenance, "computed")
        self.assertEqual(degree_value(e, "B"), 1)
        self.assertEqual(degree_value(e, "A", "embedding"), 2)
        self.assertEqual(estimate.failures[0]["t"], 1)

    def test_embedding_degree_is_not_monotone_without_amalgamation(self) -> None:
        e_prime = fan(2)
        self.assertGreater(degree_value(e_prime, "A", "embedding"), degree_value(e_prime, "B", "embedding"))

    def test_cyclic_groups(self) -> None:
        for n in (2, 3):
            z = cyclic_group(n)
            self.assertEqual(degree_value(z, "M"), 1)
            self.assertEqual(degree_value(z, "M", "embedding"), n)

    def test_json_shape(self) -> None:
        body = degree_exact_finite(worked_example(), "A").to_json()
        self.assertEqual(body["value"], 2)
        self.assertEqual(body["lower_bound"], body["upper_bound"])
        self.assertEqual(body["witnesses"][1], {"B": "B", "t": 2, "C": "B"})

    def test_universe_bounds_for_a_point(self) -> None:
        estimate = degree_bounds_universe("graph", complete(1), 3)
        self.assertEqual(estimate.upper, 1)
        self.assertFalse(estimate.exact)
        self.assertTrue(any("agrees" in note for note in estimate.notes))

    def test_universe_bounds_are_scoped(self) -> None:
        estimate = degree_bounds_universe("linord", chain(2), 5)
        self.assertEqual(estimate.upper, 2)
        self.assertIn({"B": "c3", "k": 2, "t": 1, "scope": "no C with at most 5 elements"}, estimate.failures)
        self.assertTrue(any("differs" in note for note in estimate.notes))

    def test_degree_laws_on_small_categories(self) -> None:
        e, z2 = worked_example(), cyclic_group(2)
        rec = degree_law_suite([e, fan(2), z2], pairs=[(e, z2)])
        self.assertTrue(rec.passed, msg=[(o.name, o.detail) for o in rec.failures])

    def test_degree_laws_over_the_builtin_corpus(self) -> None:
        corpus = builtin_corpus()
        rec = degree_law_suite(corpus)
        self.assertTrue(rec.passed, msg=[(o.name, o.detail) for o in rec.failures])
        self.assertGreaterEqual(len(corpus), 10)


class EssentialTests(unittest.TestCase):
    def test_mode_parsing(self) -> None:
        self.assertEqual(EssentialMode.parse("literal"), LITERAL)
        self.assertEqual(EssentialMode.parse("graded"), GRADED)
        self.assertEqual(EssentialMode.parse("graded:3").k, 3)
        self.assertEqual(GRADED.label(2), "graded(2)")
        for bad in ("graded:0", "literal:2", "fuzzy"):
            with self.assertRaises(ValidationError):
                EssentialMode.parse(bad)

    def test_discrete_partition_is_essential_for_the_worked_example(self) -> None:
        e = worked_example()
        self.assertTrue(essential_check(e, "A", "B", discrete(2)).essential)
        refused = essential_check(e, "A", "B", trivial(2))
        self.assertFalse(refused.essential)
        self.assertEqual(refused.refutations, [{"C": "B", "pi": "01"}])

    def test_minimum_matches_the_degree(self) -> None:
        e = worked_example()
        for mode in (GRADED, LITERAL):
            result = essential_min(e, "A", "B", mode)
            self.assertEqual(result.min_blocks, 2)
            self.assertEqual(result.argmin_blocks, discrete(2))
            self.assertAlmostEqual(result.min_entropy.value, 1.0)

    def test_wrong_ground_size(self) -> None:
        with self.assertRaises(ValidationError):
            essential_check(worked_example(), "A", "B", Partition((0, 0, 1)))

    def test_join_witness(self) -> None:
        witness = essential_join_witness(worked_example(), "A", "B", "B")
        self.assertEqual(witness.lam, discrete(2))
        self.assertTrue(witness.essential)
        self.assertEqual([c["w"] for c in witness.choices], ["idB", "idB"])

    def test_modes_agree_with_the_degree_on_the_worked_example(self) -> None:
        rec = discrepancy_probe([worked_example()])
        self.assertTrue(rec.passed)
        self.assertEqual(rec.outcomes[0].data, {"literal": 2, "graded": 2, "degree": 2})


class TensorEssentialTests(unittest.TestCase):
    def test_discrete_partitions_of_the_worked_example(self) -> None:
        e = worked_example()
        report = tensor_essential_check(e, e, "A", "B", discrete(2), "A", "B", discrete(2))
        self.assertTrue(report.passed)
        self.assertEqual(report.product.witness, "(B,B)")
        self.assertEqual(report.product.lam, discrete(4))

    def test_chains_use_both_factor_witnesses(self) -> None:
        cat = _chains(1, 2, 3)
        two = EssentialMode("graded", 2)
        report = tensor_essential_check(cat, cat, chain(1), chain(2), trivial(2), chain(1), chain(1), trivial(1), two)
        self.assertEqual(report.factor1.witness, cat.label(chain(3)))
        self.assertEqual(report.factor2.witness, cat.label(chain(1)))
        self.assertTrue(report.passed)
        self.assertEqual(report.product.witness, product(cat, cat).label((chain(3), chain(1))))
        self.assertEqual(report.product.lam, tensor(trivial(2), trivial(1)))

    def test_two_colors_avoid_rectangles_on_a_small_grid(self) -> None:
        cat = _chains(1, 2, 3)
        two = EssentialMode("graded", 2)
        report = tensor_essential_check(cat, cat, chain(1), chain(2), trivial(2), chain(1), chain(2), trivial(2), two)
        self.assertTrue(report.factor1.essential and report.factor2.essential)
        self.assertEqual(report.status, "fail")
        self.assertEqual(len(report.product.refutations), 4)

    def test_hypothesis_not_met(self) -> None:
        e = worked_example()
        report = tensor_essential_check(e, e, "A", "B", trivial(2), "A", "B", discrete(2))
        self.assertEqual(report.status, "hypothesis not met")
        self.assertIsNone(report.product)

    def test_sweep_over_the_default_pairs(self) -> None:
        pairs = default_pairs(builtin_corpus())
        rec = tensor_essential_suite(pairs)
        self.assertTrue(rec.passed, msg=[(o.name, o.detail) for o in rec.failures])
        self.assertGreater(len(rec.outcomes), len(pairs))


if __name__ == "__main__":
    unittest.main()
