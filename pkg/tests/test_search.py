import itertools
import threading
import time
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from ramseylab.checks import CheckRecorder, Status
from ramseylab.orchestrator.runner import collect_in_order
from ramseylab.search import ColoringProblem, find_bad_coloring, satisfied_by


def _pairs_problem(max_blocks: int) -> ColoringProblem:
    # one witness per pair of three elements; satisfied when the pair is monochromatic
    return ColoringProblem.build(3, [[(0, 1)], [(0, 2)], [(1, 2)]], limit=1, max_blocks=max_blocks)


def _is_rgs(labels) -> bool:
    top = -1
    for label in labels:
        if label > top + 1:
            return False
        top = max(top, label)
    return True


@st.composite
def problems(draw):
    size = draw(st.integers(min_value=1, max_value=5))
    group = st.lists(st.integers(min_value=0, max_value=size - 1), min_size=1, max_size=size, unique=True)
    witness = st.lists(group, min_size=1, max_size=2)
    constraints = draw(st.lists(witness, min_size=1, max_size=3))
    limit = draw(st.integers(min_value=1, max_value=2))
    max_blocks = draw(st.integers(min_value=1, max_value=3))
    return ColoringProblem.build(size, constraints, limit, max_blocks)


class ColoringSearchTests(unittest.TestCase):
    def test_first_bad_coloring_is_lexicographically_least(self) -> None:
        problem = ColoringProblem.build(3, [[(0, 1, 2)]], limit=1, max_blocks=2)
        self.assertEqual(find_bad_coloring(problem), (0, 0, 1))

    def test_pigeonhole_leaves_no_bad_coloring(self) -> None:
        self.assertIsNone(find_bad_coloring(_pairs_problem(2)))
        self.assertEqual(find_bad_coloring(_pairs_problem(3)), (0, 1, 2))

    def test_satisfied_witnesses(self) -> None:
        problem = _pairs_problem(2)
        self.assertEqual(satisfied_by(problem, (0, 0, 1)), [0])
        self.assertEqual(satisfied_by(problem, (0, 0, 0)), [0, 1, 2])

    def test_block_cap_is_clamped_to_size(self) -> None:
        self.assertEqual(ColoringProblem.build(2, [[(0, 1)]], 1, 10).max_blocks, 2)
        self.assertEqual(ColoringProblem.build(2, [[(0, 1)]], 1, 0).max_blocks, 1)

    @settings(max_examples=150, deadline=None)
    @given(problems())
    def test_search_agrees_with_brute_force(self, problem) -> None:
        colorings = [
            c
            for c in itertools.product(range(problem.max_blocks), repeat=problem.size)
            if _is_rgs(c) and not satisfied_by(problem, c)
        ]
        expected = min(colorings) if colorings else None
        self.assertEqual(find_bad_coloring(problem), expected)
        self.assertEqual(find_bad_coloring(problem, threads=3), expected)


class CollectInOrderTests(unittest.TestCase):
    def test_results_follow_submission_order(self) -> None:
        def slow_first(x: int) -> int:
            if x == 0:
                time.sleep(0.05)
            return x * x

        self.assertEqual(collect_in_order(slow_first, list(range(6)), threads=4), [0, 1, 4, 9, 16, 25])

    def test_single_thread_runs_inline(self) -> None:
        seen = []
        collect_in_order(lambda x: seen.append(threading.current_thread().name), [1, 2], threads=1)
        self.assertEqual(set(seen), {threading.current_thread().name})

    def test_worker_errors_propagate(self) -> None:
        def explode(x: int) -> int:
            raise RuntimeError(f"boom {x}")

        with self.assertRaises(RuntimeError):
            collect_in_order(explode, [1, 2, 3], threads=2)


class CheckRecorderTests(unittest.TestCase):
    def test_failures_are_collected_not_raised(self) -> None:
        rec = CheckRecorder("demo")
        self.assertTrue(rec.expect_equal("same", 1, 1))
        self.assertFalse(rec.expect_equal("differs", [1, 2], [1, 3]))
        rec.record("exhibit", "kept for reference")
        self.assertFalse(rec.passed)
        self.assertEqual(rec.counts[Status.RECORDED], 1)
        self.assertEqual([o.name for o in rec.failures], ["differs"])
        self.assertIn("expected", rec.failures[0].detail)

    def test_extend_prefixes_names(self) -> None:
        inner = CheckRecorder("inner")
        inner.expect_true("ok", True)
        outer = CheckRecorder("outer")
        outer.extend(inner)
        self.assertEqual(outer.outcomes[0].name, "inner: ok")
        self.assertEqual(outer.to_json()["counts"], {"pass": 1, "fail": 0, "recorded": 0})


if __name__ == "__main__":
    unittest.main()
