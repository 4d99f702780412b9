"""Merge Non-Dominated Sorting.

The population is merge-sorted once per objective. After the first
(lexicographic) sort, each solution's dominance set is every solution
ahead of it; each later stable sort intersects that set with the
solutions ahead of it in the new order. What is left after the last
objective is exactly the set of dominators, from which ranks follow in
one pass over the final order.

Objectives are 0-based throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import mergesort
from .bitset import DominanceSet
from .core import ComparisonTally, NDSortError, ObjectiveMatrix, ObjectiveOutOfRange, Row, as_matrix


class InternalOrderViolation(NDSortError, RuntimeError):
    """A dominator was found behind the solution it dominates."""


@dataclass
class MndsState:
    """Working state of one MNDS run.

    Solutions are addressed by compact index: the position a retained
    solution held right after the first-objective sort. ``ids`` maps a
    compact index back to the caller's row id; ``compact_of`` is its
    inverse for retained solutions.
    """

    matrix: ObjectiveMatrix
    rows: list[Row]
    ids: list[int]
    perm: list[int]
    tally: ComparisonTally
    ds: list[DominanceSet] = field(default_factory=list)
    duplicates: list[tuple[int, int]] = field(default_factory=list)
    compact_of: dict[int, int] = field(default_factory=dict)

    @classmethod
    def initial(cls, matrix, tally: ComparisonTally | None = None) -> "MndsState":
        """Unsorted state over the whole population (no duplicates removed)."""
        matrix = as_matrix(matrix)
        n = matrix.n
        return cls(
            matrix=matrix,
            rows=list(matrix.rows),
            ids=list(range(n)),
            perm=list(range(n)),
            tally=tally if tally is not None else ComparisonTally(),
            compact_of={i: i for i in range(n)},
        )

    @property
    def size(self) -> int:
        return len(self.rows)

    def order_ids(self) -> list[int]:
        """Current order as caller ids."""
        return [self.ids[c] for c in self.perm]

    def dominance_ids(self, solution_id: int) -> set[int]:
        """Dominance set of a retained solution, as caller ids."""
        return {self.ids[c] for c in self.ds[self.compact_of[solution_id]]}


def stable_sort_by_objective(state: MndsState, objective: int, lex_ties: bool = False) -> bool:
    """Reorder ``state.perm`` by one objective; return True if the order changed.

    With `lex_ties`, equal values are ordered by full lexicographic
    comparison; otherwise they keep their current relative order.
    """
    if not 0 <= objective < state.matrix.m:
        raise ObjectiveOutOfRange(f"objective {objective} not in [0, {state.matrix.m})")
    if lex_ties:
        if objective != 0:
            # key on the objective, then the whole vector in natural order
            rows = [(row[objective],) + row for row in state.rows]
        else:
            rows = state.rows
        perm, changed, used = mergesort.lexicographic(state.perm, rows)
    else:
        key = [row[objective] for row in state.rows]
        perm, changed, used = mergesort.by_key(state.perm, key)
    state.tally.add(used)
    state.perm = perm
    return changed


def sort_first_objective(matrix, tally: ComparisonTally | None = None) -> MndsState:
    """Sort by the first objective, drop exact duplicates, seed dominance sets.

    Each duplicate is recorded as ``(duplicate_id, canonical_id)`` where the
    canonical solution is the first of its run of equal rows in sorted
    order, so chains of three or more copies all point at a retained row.
    """
    state = MndsState.initial(matrix, tally)
    stable_sort_by_objective(state, 0, lex_ties=True)

    rows = state.rows
    kept: list[int] = []
    duplicates: list[tuple[int, int]] = []
    used = 0
    prev: Row | None = None
    for i in state.perm:
        row = rows[i]
        if prev is not None:
            # neighbours in lexicographic order; equal only if every value ties
            same = True
            for x, y in zip(row, prev):
                used += 1
                if x != y:
                    same = False
                    break
            if same:
                duplicates.append((i, kept[-1]))
                continue
        kept.append(i)
        prev = row
    state.tally.add(used)

    n_kept = len(kept)
    state.rows = [rows[i] for i in kept]
    state.ids = kept
    state.compact_of = {i: c for c, i in enumerate(kept)}
    state.perm = list(range(n_kept))
    state.duplicates = duplicates
    state.ds = [DominanceSet.prefix(n_kept, c) for c in range(n_kept)]
    return state


def sort_rest_of_objectives(
    state: MndsState,
    on_pass: Callable[[MndsState, int], None] | None = None,
) -> bool:
    """Refine dominance sets with objectives 1..M-1; return whether any dominance remains.

    Stops as soon as every dominance set is empty. A pass whose sort leaves
    the order unchanged cannot shrink any set, so its sweep is skipped.
    `on_pass`, if given, is called as ``on_pass(state, objective)`` after
    each objective is processed.
    """
    has_dominance = True
    n = state.size
    ds = state.ds
    for objective in range(1, state.matrix.m):
        if not has_dominance:
            break
        if stable_sort_by_objective(state, objective):
            has_dominance = False
            ahead = DominanceSet(n)
            for s in state.perm:
                d = ds[s]
                if d:
                    d.intersection_update(ahead)
                    if d:
                        has_dominance = True
                ahead.add(s)
        if on_pass is not None:
            on_pass(state, objective)
    return has_dominance


def get_ranking(state: MndsState) -> list[int]:
    """1-based rank of every retained solution, indexed by compact index.

    Walks the final order, in which every dominator precedes what it
    dominates. A solution's rank can be at most one above the highest rank
    seen so far, so the scan of its dominance set stops once it gets there.
    """
    ranks: list[int | None] = [None] * state.size
    max_rank = 0
    for s in state.perm:
        rank = 1
        for u in state.ds[s]:
            r = ranks[u]
            if r is None:
                raise InternalOrderViolation(
                    f"solution {state.ids[u]} dominates {state.ids[s]} but is not ranked yet"
                )
            if r >= rank:
                rank = r + 1
                if rank > max_rank:
                    break
        ranks[s] = rank
        if rank > max_rank:
            max_rank = rank
    return ranks


def mnds_rank(matrix, tally: ComparisonTally | None = None) -> list[int]:
    """Rank every solution of `matrix` with MNDS.

    Returns a list whose i-th entry is the 1-based front of row i.
    Duplicates get the rank of the retained copy.
    """
    matrix = as_matrix(matrix)
    state = sort_first_objective(matrix, tally)
    ranks = [0] * matrix.n
    if sort_rest_of_objectives(state):
        for c, r in enumerate(get_ranking(state)):
            ranks[state.ids[c]] = r
    else:
        for i in state.ids:
            ranks[i] = 1
    for dup, canonical in state.duplicates:
        ranks[dup] = ranks[canonical]
    return ranks
