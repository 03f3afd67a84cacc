import itertools
import math
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from ramseylab.errors import ValidationError
from ramseylab.extended import ExtNat, ExtReal
from ramseylab.partition import (
    Coloring,
    Comparison,
    Partition,
    are_isomorphic,
    bell,
    boltzmann,
    check_entropy_axioms,
    coloring_of_partition,
    compare,
    count_partitions,
    discrete,
    enumerate_partitions,
    is_finer,
    join,
    meet,
    parse_partition,
    partition_of_coloring,
    shannon,
    stirling2,
    tensor,
    trivial,
)


@st.composite
def partition_pairs(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    labels = st.lists(st.integers(min_value=0, max_value=3), min_size=n, max_size=n)
    return Partition.from_labels(draw(labels)), Partition.from_labels(draw(labels))


class PartitionBasicsTests(unittest.TestCase):
    def test_assignment_must_be_restricted_growth(self) -> None:
        with self.assertRaises(ValidationError):
            Partition((1, 0))
        with self.assertRaises(ValidationError):
            Partition(())

    def test_from_labels_canonicalises(self) -> None:
        self.assertEqual(Partition.from_labels(["x", "y", "x"]), Partition((0, 1, 0)))
        self.assertEqual(Partition.from_labels([5, 5, 2]).rgs, "001")

    def test_parse_literal(self) -> None:
        p = parse_partition("[[0,1],[2]]")
        self.assertEqual(p.rgs, "001")
        self.assertEqual(p.blocks, ((0, 1), (2,)))
        self.assertEqual(len(p), 2)

    def test_parse_rejects_overlap_and_gaps(self) -> None:
        with self.assertRaises(ValidationError):
            parse_partition("[[0,1],[1]]")
        with self.assertRaises(ValidationError):
            parse_partition("[[0],[2]]", 3)
        with self.assertRaises(ValidationError):
            parse_partition("not json")

    def test_enumeration_counts_match_bell_numbers(self) -> None:
        self.assertEqual([bell(n) for n in range(1, 7)], [1, 2, 5, 15, 52, 203])
        for n in range(1, 7):
            parts = list(enumerate_partitions(n))
            self.assertEqual(len(parts), bell(n))
            self.assertEqual(len(set(parts)), len(parts))

    def test_enumeration_respects_block_cap(self) -> None:
        capped = list(enumerate_partitions(4, max_blocks=2))
        self.assertEqual(len(capped), 8)
        self.assertEqual(count_partitions(4, 2), 8)
        self.assertTrue(all(p.num_blocks <= 2 for p in capped))

    def test_enumeration_starts_trivial_and_ends_discrete(self) -> None:
        parts = list(enumerate_partitions(4))
        self.assertEqual(parts[0], trivial(4))
        self.assertEqual(parts[-1], discrete(4))

    def test_bell_matches_the_binomial_recurrence(self) -> None:
        expected = [1]
        for n in range(10):
            expected.append(sum(math.comb(n, k) * expected[k] for k in range(n + 1)))
        self.assertEqual([bell(n) for n in range(11)], expected)

    def test_stirling_numbers_sum_to_bell(self) -> None:
        self.assertEqual(stirling2(4, 2), 7)
        self.assertEqual(stirling2(5, 3), 25)
        self.assertEqual(stirling2(3, 0), 0)
        for n in range(1, 9):
            self.assertEqual(sum(stirling2(n, k) for k in range(1, n + 1)), bell(n))

    def test_capped_counts_match_enumeration(self) -> None:
        for n in range(1, 7):
            for k in range(1, n + 1):
                self.assertEqual(count_partitions(n, k), len(list(enumerate_partitions(n, max_blocks=k))))


class ColoringTests(unittest.TestCase):
    def test_unused_colors_are_dropped(self) -> None:
        self.assertEqual(partition_of_coloring(Coloring(9, (5, 5, 5))), trivial(3))
        self.assertEqual(partition_of_coloring(Coloring(2, (0, 0, 1))), Partition((0, 0, 1)))
        self.assertEqual(partition_of_coloring(Coloring(3, (2, 0, 2))), Partition((0, 1, 0)))

    def test_round_trip_for_every_partition(self) -> None:
        for n in range(1, 7):
            for p in enumerate_partitions(n):
                chi = coloring_of_partition(p)
                self.assertEqual(chi.palette_size, p.num_blocks)
                self.assertEqual(chi.color_of, p.assignment)
                self.assertEqual(partition_of_coloring(chi), p)

    def test_palette_is_validated(self) -> None:
        with self.assertRaises(ValidationError):
            Coloring(2, (0, 2))
        with self.assertRaises(ValidationError):
            Coloring(0, ())


class IsomorphismTests(unittest.TestCase):
    def test_block_sizes_decide(self) -> None:
        self.assertTrue(are_isomorphic(Partition((0, 0, 1)), Partition((0, 1, 1))))
        self.assertFalse(are_isomorphic(Partition((0, 0, 1)), discrete(3)))
        self.assertFalse(are_isomorphic(Partition((0, 0, 1)), Partition((0, 1, 1, 2))))
        self.assertTrue(are_isomorphic(Partition((0, 1, 0, 2, 2)), Partition((0, 0, 1, 1, 2))))

    def test_every_partition_is_isomorphic_to_itself(self) -> None:
        for n in range(1, 6):
            for p in enumerate_partitions(n):
                self.assertTrue(are_isomorphic(p, p))


class LatticeTests(unittest.TestCase):
    def test_join_is_common_refinement(self) -> None:
        p, q = Partition((0, 0, 1, 1)), Partition((0, 1, 0, 1))
        self.assertEqual(join([p, q]), discrete(4))
        self.assertEqual(meet([p, q]), trivial(4))

    def test_compare_names_direction(self) -> None:
        self.assertEqual(compare(trivial(3), discrete(3)), Comparison.P_COARSER)
        self.assertEqual(compare(discrete(3), trivial(3)), Comparison.P_FINER)
        self.assertEqual(compare(Partition((0, 0, 1)), Partition((0, 1, 1))), Comparison.INCOMPARABLE)
        self.assertEqual(compare(discrete(2), discrete(2)), Comparison.EQUAL)

    def test_mismatched_ground_sizes_raise(self) -> None:
        with self.assertRaises(ValidationError):
            is_finer(discrete(2), discrete(3))

    def test_tensor_indexes_pairs_row_major(self) -> None:
        self.assertEqual(tensor(Partition((0, 1)), trivial(2)), Partition((0, 0, 1, 1)))
        self.assertEqual(tensor(discrete(2), discrete(3)), discrete(6))
        self.assertEqual(tensor(trivial(3), trivial(2)), trivial(6))

    def test_join_is_the_least_common_refinement(self) -> None:
        for n in range(1, 6):
            parts = list(enumerate_partitions(n))
            finer = [[is_finer(p, q) for q in parts] for p in parts]
            index = {p: i for i, p in enumerate(parts)}
            for i, p in enumerate(parts):
                for j, q in enumerate(parts):
                    top = index[join([p, q])]
                    self.assertTrue(finer[top][i] and finer[top][j])
                    for r in range(len(parts)):
                        if finer[r][i] and finer[r][j]:
                            self.assertTrue(finer[r][top], msg=(p.rgs, q.rgs, parts[r].rgs))

    def test_refinement_is_a_partial_order(self) -> None:
        for n in range(1, 6):
            parts = list(enumerate_partitions(n))
            finer = [[is_finer(p, q) for q in parts] for p in parts]
            size = len(parts)
            for i in range(size):
                self.assertTrue(finer[i][i])
                for j in range(size):
                    if finer[i][j] and finer[j][i]:
                        self.assertEqual(i, j)
                    if not finer[i][j]:
                        continue
                    for k in range(size):
                        if finer[j][k]:
                            self.assertTrue(finer[i][k], msg=(parts[i].rgs, parts[j].rgs, parts[k].rgs))

    def test_compare_agrees_with_refinement(self) -> None:
        parts = list(enumerate_partitions(4))
        for p in parts:
            for q in parts:
                verdict = compare(p, q)
                self.assertEqual(verdict is Comparison.EQUAL, p == q)
                if p != q:
                    self.assertEqual(verdict is Comparison.P_FINER, is_finer(p, q))
                    self.assertEqual(verdict is Comparison.P_COARSER, is_finer(q, p))

    def test_tensor_blocks_are_products_of_blocks(self) -> None:
        for n in range(1, 5):
            for m in range(1, 5):
                for p in enumerate_partitions(n):
                    for q in enumerate_partitions(m):
                        t = tensor(p, q)
                        self.assertEqual(t.num_blocks, p.num_blocks * q.num_blocks)
                        for i, i2 in itertools.product(range(n), repeat=2):
                            for j, j2 in itertools.product(range(m), repeat=2):
                                self.assertEqual(
                                    t.same_block(i * m + j, i2 * m + j2),
                                    p.same_block(i, i2) and q.same_block(j, j2),
                                )

    @settings(max_examples=200, deadline=None)
    @given(partition_pairs())
    def test_join_and_meet_bound_their_inputs(self, pair) -> None:
        p, q = pair
        j, m = join([p, q]), meet([p, q])
        self.assertTrue(is_finer(j, p) and is_finer(j, q))
        self.assertTrue(is_finer(p, m) and is_finer(q, m))
        self.assertTrue(is_finer(j, m))


class EntropyTests(unittest.TestCase):
    def test_known_values(self) -> None:
        self.assertAlmostEqual(shannon(Partition((0, 0, 1, 1))), 1.0, places=9)
        self.assertAlmostEqual(boltzmann(discrete(4)), 2.0, places=9)
        self.assertEqual(shannon(trivial(5)), 0.0)
        self.assertAlmostEqual(shannon(Partition((0, 0, 1))), math.log2(3) - 2 / 3, places=9)
        self.assertAlmostEqual(shannon(Partition((0, 1, 1, 1))), 0.8112781244591328, delta=1e-9)
        self.assertAlmostEqual(boltzmann(Partition((0, 0, 1, 1))), 1.0, places=9)

    def test_shannon_never_exceeds_boltzmann(self) -> None:
        for n in range(1, 7):
            for p in enumerate_partitions(n):
                self.assertLessEqual(shannon(p), boltzmann(p) + 1e-9, msg=p.rgs)

    def test_entropy_vanishes_exactly_on_trivial_partitions(self) -> None:
        for n in range(1, 7):
            for p in enumerate_partitions(n):
                for h in (shannon, boltzmann):
                    self.assertEqual(abs(h(p)) < 1e-9, p.is_trivial, msg=(h.__name__, p.rgs))

    def test_both_entropies_pass_every_axiom(self) -> None:
        for kind in ("shannon", "boltzmann"):
            report = check_entropy_axioms(kind, 6, 4)
            self.assertTrue(report.passed, msg=report.to_json())
            self.assertIsNone(report.first_failure)

    def test_block_count_fails_the_bound_axiom(self) -> None:
        report = check_entropy_axioms(lambda p: float(p.num_blocks), 3)
        self.assertFalse(report.passed)
        self.assertEqual(report.first_failure.axiom, "bound")

    def test_axiom_check_is_capped(self) -> None:
        with self.assertRaises(ValidationError):
            check_entropy_axioms("shannon", 8)


class ExtendedNumberTests(unittest.TestCase):
    def test_infinity_absorbs_products(self) -> None:
        self.assertTrue((ExtNat.inf() * 3).is_inf)
        self.assertEqual(ExtNat(2) * 3, 6)
        self.assertLess(ExtNat(5), ExtNat.inf())

    def test_reals_compare_within_tolerance(self) -> None:
        self.assertEqual(ExtReal(1.0), ExtReal(1.0 + 1e-12))
        self.assertTrue(ExtReal(1.0).leq(1.0 - 1e-12))
        self.assertFalse(ExtReal(1.0).leq(0.5))
        self.assertEqual(ExtNat(4).log2(), 2.0)
        self.assertEqual(ExtReal.inf().to_json(), "inf")

    def test_equal_reals_hash_alike_across_rounding_boundaries(self) -> None:
        low, high = ExtReal(1.0000000004), ExtReal(1.0000000006)
        self.assertEqual(low, high)
        self.assertEqual(hash(low), hash(high))
        self.assertEqual(len({low, high}), 1)
        self.assertEqual(len({ExtReal(1.0), ExtReal(2.0), ExtReal.inf()}), 3)


if __name__ == "__main__":
    unittest.main()
