"""Backtracking search for "bad" colorings shared by the arrow and essential-partition checks.

A problem has ``size`` elements and one constraint per witness ``w``: a tuple of groups of
elements. ``w`` is satisfied by a coloring when every group sees at most ``limit`` colors.
A coloring is bad when no ``w`` is satisfied. Colorings are enumerated as restricted-growth
strings with at most ``max_blocks`` blocks, so the first bad one found is the lexicographically
least and the answer does not depend on how the search is split across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .orchestrator.runner import collect_in_order

Group = tuple[int, ...]


@dataclass(frozen=True)
class ColoringProblem:
    size: int
    constraints: tuple[tuple[Group, ...], ...]
    limit: int
    max_blocks: int

    @classmethod
    def build(
        cls, size: int, constraints: Sequence[Sequence[Sequence[int]]], limit: int, max_blocks: int
    ) -> "ColoringProblem":
        frozen = tuple(tuple(tuple(group) for group in groups) for groups in constraints)
        return cls(size, frozen, limit, max(1, min(max_blocks, max(size, 1))))


class _State:
    """Per-worker counters; one instance per prefix so workers share nothing mutable."""

    def __init__(self, problem: ColoringProblem) -> None:
        self.problem = problem
        self.labels = [-1] * problem.size
        groups = [g for constraint in problem.constraints for g in constraint]
        self.unassigned = [len(g) for g in groups]
        self.counts: list[dict[int, int]] = [{} for _ in groups]
        self.group_ids: list[list[int]] = []
        offset = 0
        for constraint in problem.constraints:
            self.group_ids.append(list(range(offset, offset + len(constraint))))
            offset += len(constraint)
        self.member_of: list[list[int]] = [[] for _ in range(problem.size)]
        self.watchers: list[list[int]] = [[] for _ in range(problem.size)]
        for w, ids in enumerate(self.group_ids):
            for gid in ids:
                for element in groups[gid]:
                    self.member_of[element].append(gid)
                    self.watchers[element].append(w)
        for element in range(problem.size):
            self.watchers[element] = sorted(set(self.watchers[element]))

    def assign(self, element: int, color: int) -> None:
        self.labels[element] = color
        for gid in self.member_of[element]:
            self.unassigned[gid] -= 1
            counts = self.counts[gid]
            counts[color] = counts.get(color, 0) + 1

    def unassign(self, element: int) -> None:
        color = self.labels[element]
        self.labels[element] = -1
        for gid in self.member_of[element]:
            self.unassigned[gid] += 1
            counts = self.counts[gid]
            counts[color] -= 1
            if not counts[color]:
                del counts[color]

    def surely_satisfied(self, w: int) -> bool:
        limit = self.problem.limit
        return all(len(self.counts[gid]) + self.unassigned[gid] <= limit for gid in self.group_ids[w])

    def any_surely_satisfied(self, element: int | None) -> bool:
        candidates = range(len(self.group_ids)) if element is None else self.watchers[element]
        return any(self.surely_satisfied(w) for w in candidates)


def _extend(state: _State, prefix: Sequence[int]) -> bool:
    """Apply ``prefix``; False when some witness is already guaranteed."""
    if state.any_surely_satisfied(None):
        return False
    for element, color in enumerate(prefix):
        state.assign(element, color)
        if state.any_surely_satisfied(element):
            return False
    return True


def _dfs(state: _State, start: int, top: int) -> Optional[tuple[int, ...]]:
    problem = state.problem
    element = start
    if element == problem.size:
        return tuple(state.labels)
    # iterative DFS: stack of (element, next color to try, running max)
    stack = [(element, 0, top)]
    while stack:
        element, color, running = stack.pop()
        if state.labels[element] >= 0:
            state.unassign(element)
        limit = min(running + 1, problem.max_blocks - 1)
        while color <= limit:
            state.assign(element, color)
            if not state.any_surely_satisfied(element):
                break
            state.unassign(element)
            color += 1
        else:
            continue
        stack.append((element, color + 1, running))
        if element + 1 == problem.size:
            return tuple(state.labels)
        stack.append((element + 1, 0, max(running, color)))
    return None


def _prefixes(problem: ColoringProblem, length: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for _ in range(length):
        grown = []
        for prefix in out:
            top = max(prefix, default=-1)
            for color in range(min(top + 2, problem.max_blocks)):
                grown.append(prefix + (color,))
        out = grown
    return out


def _search_from(problem: ColoringProblem, prefix: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    state = _State(problem)
    if not _extend(state, prefix):
        return None
    return _dfs(state, len(prefix), max(prefix, default=-1))


def find_bad_coloring(problem: ColoringProblem, threads: int = 1) -> Optional[tuple[int, ...]]:
    """Lexicographically least bad coloring, or None when every coloring satisfies some witness."""
    if problem.size == 0:
        state = _State(problem)
        return None if state.any_surely_satisfied(None) else ()
    length = 0
    if threads > 1:
        while length < problem.size - 1 and len(_prefixes(problem, length)) < 4 * threads:
            length += 1
    prefixes = _prefixes(problem, length)
    results = collect_in_order(lambda prefix: _search_from(problem, prefix), prefixes, threads)
    for found in results:
        if found is not None:
            return found
    return None


def satisfied_by(problem: ColoringProblem, coloring: Sequence[int]) -> list[int]:
    """Indices of the witnesses a complete coloring satisfies."""
    return [
        w
        for w, groups in enumerate(problem.constraints)
        if all(len({coloring[e] for e in group}) <= problem.limit for group in groups)
    ]
