"""Reference non-dominated sorters: FNDS (the oracle), ENS-SS and ENS-BS.

Every sorter returns 1-based ranks indexed by row id and adds the number
of scalar objective comparisons it made to the optional tally.
"""

from __future__ import annotations

from typing import Sequence

from . import mergesort
from .core import ComparisonTally, Row, as_matrix


def fnds_rank(matrix, tally: ComparisonTally | None = None) -> list[int]:
    """Deb's fast non-dominated sort.

    Every unordered pair is classified once, objective by objective, and
    the scan stops as soon as each side is better somewhere (incomparable).
    The domination lists and counters are then peeled front by front.
    """
    rows = as_matrix(matrix).rows
    n = len(rows)
    dominated_by_me: list[list[int]] = [[] for _ in range(n)]
    counter = [0] * n
    used = 0
    for i in range(n):
        a = rows[i]
        better_i = dominated_by_me[i]
        for j in range(i + 1, n):
            b = rows[j]
            a_wins = b_wins = False
            for x, y in zip(a, b):
                used += 1
                if x < y:
                    if b_wins:
                        break
                    a_wins = True
                elif y < x:
                    if a_wins:
                        break
                    b_wins = True
            else:
                if a_wins:
                    better_i.append(j)
                    counter[j] += 1
                elif b_wins:
                    dominated_by_me[j].append(i)
                    counter[i] += 1
    if tally is not None:
        tally.add(used)

    ranks = [0] * n
    front = [i for i in range(n) if counter[i] == 0]
    rank = 1
    while front:
        nxt = []
        for p in front:
            ranks[p] = rank
            for q in dominated_by_me[p]:
                counter[q] -= 1
                if counter[q] == 0:
                    nxt.append(q)
        front = nxt
        rank += 1
    return ranks


def _dominated_by_front(front: list[Row], row: Row) -> tuple[bool, int]:
    """Does any front member dominate `row`? Members are scanned newest first.

    Every member precedes `row` lexicographically and differs from it, so
    componentwise <= is enough for dominance.
    """
    used = 0
    for t in reversed(front):
        for x, y in zip(t, row):
            used += 1
            if x > y:
                break
        else:
            return True, used
    return False, used


def _ens(matrix, tally: ComparisonTally | None, binary: bool) -> list[int]:
    rows = as_matrix(matrix).rows
    n = len(rows)
    order, _, used = mergesort.lexicographic(range(n), rows)
    fronts: list[list[Row]] = []
    ranks = [0] * n
    prev = None
    for s in order:
        row = rows[s]
        if prev is not None:
            same = True
            for x, y in zip(row, rows[prev]):
                used += 1
                if x != y:
                    same = False
                    break
            if same:
                ranks[s] = ranks[prev]
                prev = s
                continue
        if binary:
            lo, hi = 0, len(fronts)
            while lo < hi:
                mid = (lo + hi) // 2
                hit, c = _dominated_by_front(fronts[mid], row)
                used += c
                if hit:
                    lo = mid + 1
                else:
                    hi = mid
            k = lo
        else:
            k = 0
            while k < len(fronts):
                hit, c = _dominated_by_front(fronts[k], row)
                used += c
                if not hit:
                    break
                k += 1
        if k == len(fronts):
            fronts.append([])
        fronts[k].append(row)
        ranks[s] = k + 1
        prev = s
    if tally is not None:
        tally.add(used)
    return ranks


def ens_ss_rank(matrix, tally: ComparisonTally | None = None) -> list[int]:
    """Efficient non-dominated sort, sequential search over fronts."""
    return _ens(matrix, tally, binary=False)


def ens_bs_rank(matrix, tally: ComparisonTally | None = None) -> list[int]:
    """Efficient non-dominated sort, binary search over fronts."""
    return _ens(matrix, tally, binary=True)


def fronts_from_ranks(ranks: Sequence[int]) -> list[list[int]]:
    """Group ids by rank: ``fronts[k]`` holds the ids of rank k+1, ascending."""
    fronts: list[list[int]] = [[] for _ in range(max(ranks, default=0))]
    for i, r in enumerate(ranks):
        fronts[r - 1].append(i)
    if any(not f for f in fronts):
        raise ValueError("ranks skip a front")
    return fronts


def ranks_from_fronts(fronts: Sequence[Sequence[int]]) -> list[int]:
    n = sum(len(f) for f in fronts)
    ranks = [0] * n
    for k, front in enumerate(fronts):
        if not front:
            raise ValueError(f"front {k} is empty")
        for i in front:
            if not 0 <= i < n or ranks[i]:
                raise ValueError(f"id {i} is out of range or in two fronts")
            ranks[i] = k + 1
    return ranks
