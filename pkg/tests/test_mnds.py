import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import WORKED_EXAMPLE_RANKS
from ndsort import (
    ComparisonTally,
    MndsState,
    ObjectiveOutOfRange,
    fnds_rank,
    gen_uniform,
    get_ranking,
    mnds_rank,
    sort_first_objective,
    sort_rest_of_objectives,
    stable_sort_by_objective,
)
from ndsort.mnds import InternalOrderViolation
from oracles import dominance_sets, peel_ranks


def one_based(ids):
    return [i + 1 for i in ids]


def ds_of(state, solution):
    """Dominance set of a 1-based solution as 1-based ids."""
    return set(one_based(state.dominance_ids(solution - 1)))


populations = st.integers(1, 4).flatmap(
    lambda m: st.lists(st.tuples(*[st.integers(0, 4)] * m), min_size=0, max_size=30)
)


class TestWorkedExample:
    def test_first_objective_order_includes_duplicates(self, worked_example):
        state = MndsState.initial(worked_example)
        assert stable_sort_by_objective(state, 0, lex_ties=True)
        assert one_based(state.order_ids()) == [4, 3, 2, 14, 1, 5, 8, 10, 7, 6, 9, 13, 11, 12]

    def test_duplicates_and_initial_dominance_set(self, worked_example):
        state = sort_first_objective(worked_example)
        assert [(d + 1, c + 1) for d, c in state.duplicates] == [(14, 2), (13, 9)]
        assert ds_of(state, 7) == {4, 3, 2, 1, 5, 8, 10}
        assert state.size == 12

    def test_dominance_set_trajectory_and_orders(self, worked_example):
        state = sort_first_objective(worked_example)
        seen = {}

        def record(st_, objective):
            seen[objective] = (one_based(st_.order_ids()), ds_of(st_, 7))

        assert sort_rest_of_objectives(state, on_pass=record)
        assert seen[1] == ([1, 5, 8, 3, 7, 4, 2, 10, 6, 9, 12, 11], {1, 3, 5, 8})
        assert seen[2] == ([2, 3, 12, 7, 4, 6, 11, 10, 9, 1, 5, 8], {3})

    def test_ranks(self, worked_example):
        assert mnds_rank(worked_example) == WORKED_EXAMPLE_RANKS

    def test_duplicates_inherit_canonical_rank(self, worked_example):
        ranks = mnds_rank(worked_example)
        assert ranks[13] == ranks[1] == 1
        assert ranks[12] == ranks[8]


class TestStableSort:
    def test_already_sorted_reports_unchanged(self):
        state = MndsState.initial([(1, 5), (2, 4), (3, 3)])
        assert not stable_sort_by_objective(state, 0)
        assert state.perm == [0, 1, 2]

    def test_objective_out_of_range(self):
        state = MndsState.initial([(1, 2)])
        with pytest.raises(ObjectiveOutOfRange):
            stable_sort_by_objective(state, 2)

    def test_ties_keep_previous_order(self):
        rng = random.Random(11)
        for _ in range(200):
            rows = [(rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(1, 40))]
            state = MndsState.initial(rows)
            rng.shuffle(state.perm)
            before = list(state.perm)
            stable_sort_by_objective(state, 1)
            tag = {s: i for i, s in enumerate(before)}
            assert state.perm == sorted(before, key=lambda s: (rows[s][1], tag[s]))

    def test_lex_ties_on_later_objective(self):
        rows = [(2, 1, 0), (1, 1, 5), (0, 2, 0)]
        state = MndsState.initial(rows)
        stable_sort_by_objective(state, 1, lex_ties=True)
        assert state.perm == [1, 0, 2]

    def test_tallies_into_state(self):
        tally = ComparisonTally()
        state = MndsState.initial([(3,), (1,), (2,)], tally)
        stable_sort_by_objective(state, 0)
        assert tally.count > 0


class TestPhases:
    def test_single_solution(self):
        state = sort_first_objective([(1.0, 2.0)])
        assert len(state.ds) == 1 and not state.ds[0] and state.duplicates == []

    def test_empty_population(self):
        from ndsort import ObjectiveMatrix

        state = sort_first_objective(ObjectiveMatrix([], m=3))
        assert state.size == 0
        assert mnds_rank(ObjectiveMatrix([], m=3)) == []

    def test_three_identical_solutions(self):
        rows = [(0.5, 0.5), (0.1, 0.9), (0.5, 0.5), (0.5, 0.5)]
        state = sort_first_objective(rows)
        assert sorted(state.duplicates) == [(2, 0), (3, 0)]
        assert mnds_rank(rows) == fnds_rank(rows) == [1, 1, 1, 1]

    def test_single_objective_skips_loop(self):
        state = sort_first_objective([(3.0,), (1.0,), (2.0,)])
        assert sort_rest_of_objectives(state)
        assert mnds_rank([(3.0,), (1.0,), (2.0,)]) == [3, 1, 2]

    def test_decreasing_curve_has_no_dominance(self):
        n = 50
        rows = [(i / n, 1 - (i / n) ** 2) for i in range(n)]
        # brute force: no pair dominates
        assert all(not s for s in dominance_sets(rows))
        state = sort_first_objective(rows)
        assert not sort_rest_of_objectives(state)
        assert all(not d for d in state.ds)
        assert mnds_rank(rows) == [1] * n

    def test_dominated_chain(self):
        rows = [(float(i), float(i), float(i)) for i in range(7, -1, -1)]
        assert mnds_rank(rows) == [8, 7, 6, 5, 4, 3, 2, 1]

    def test_ranking_all_empty_sets(self):
        state = sort_first_objective([(0.0, 1.0), (1.0, 0.0)])
        for d in state.ds:
            d.clear()
        assert get_ranking(state) == [1, 1]

    def test_order_violation_detected(self):
        state = sort_first_objective([(0.0, 0.0), (1.0, 1.0)])
        state.perm.reverse()
        with pytest.raises(InternalOrderViolation):
            get_ranking(state)


class TestOracleEquivalence:
    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_random_uniform_500(self, m):
        matrix = gen_uniform(500, m, 100 + m)
        assert mnds_rank(matrix) == fnds_rank(matrix)

    @settings(max_examples=300, deadline=None)
    @given(populations.filter(bool))
    def test_matches_peeling(self, rows):
        assert mnds_rank(rows) == peel_ranks(rows)

    @settings(max_examples=200, deadline=None)
    @given(populations.filter(bool))
    def test_dominance_sets_exact(self, rows):
        state = sort_first_objective(rows)
        sort_rest_of_objectives(state)
        expected = dominance_sets(rows)
        retained = set(state.ids)
        for c, i in enumerate(state.ids):
            assert {state.ids[u] for u in state.ds[c]} == expected[i] & retained


class TestInvariants:
    @settings(max_examples=150, deadline=None)
    @given(populations.filter(bool))
    def test_dominance_sets_only_shrink(self, rows):
        state = sort_first_objective(rows)
        previous = [set(d) for d in state.ds]

        def check(st_, objective):
            for c, d in enumerate(st_.ds):
                assert set(d) <= previous[c]
                previous[c] = set(d)

        sort_rest_of_objectives(state, on_pass=check)

    @settings(max_examples=150, deadline=None)
    @given(populations.filter(bool), st.randoms(use_true_random=False))
    def test_row_permutation_invariance(self, rows, rnd):
        perm = list(range(len(rows)))
        rnd.shuffle(perm)
        ranks = mnds_rank(rows)
        shuffled = mnds_rank([rows[p] for p in perm])
        assert shuffled == [ranks[p] for p in perm]

    @settings(max_examples=150, deadline=None)
    @given(populations.filter(bool))
    def test_monotone_transform_invariance(self, rows):
        transforms = [lambda v: math.exp(v), lambda v: 3 * v - 7, lambda v: v ** 3 + v]
        moved = [tuple(transforms[k % 3](v) for k, v in enumerate(row)) for row in rows]
        assert mnds_rank(moved) == mnds_rank(rows)

    @settings(max_examples=150, deadline=None)
    @given(populations.filter(bool))
    def test_contiguous_ranks_with_dominators_one_below(self, rows):
        ranks = mnds_rank(rows)
        assert set(ranks) == set(range(1, max(ranks) + 1))
        above = dominance_sets(rows)
        for i, r in enumerate(ranks):
            if r > 1:
                assert any(ranks[u] == r - 1 for u in above[i])

    def test_comparison_bound_random(self):
        rng = random.Random(21)
        for _ in range(60):
            n, m = rng.randint(2, 300), rng.randint(2, 8)
            matrix = gen_uniform(n, m, rng.randrange(2**32))
            tally = ComparisonTally()
            mnds_rank(matrix, tally)
            # continuous draws: no first-objective ties, so the tie term vanishes
            assert tally.count <= (2 * m - 1) * n * math.ceil(math.log2(n))

    def test_comparison_bound_with_ties(self):
        rng = random.Random(22)
        for _ in range(60):
            n, m = rng.randint(2, 200), rng.randint(2, 6)
            rows = [tuple(rng.randint(0, 3) for _ in range(m)) for _ in range(n)]
            tally = ComparisonTally()
            mnds_rank(rows, tally)
            # every first-objective tie, in the sort or the duplicate scan, costs at most m
            ties = sum(1 for i in range(n) for j in range(i + 1, n) if rows[i][0] == rows[j][0])
            assert tally.count <= (2 * m - 1) * n * math.ceil(math.log2(n)) + ties * m
