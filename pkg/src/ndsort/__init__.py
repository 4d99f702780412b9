"""Merge Non-Dominated Sorting with baseline sorters, generators and a benchmark CLI."""

from .baselines import ens_bs_rank, ens_ss_rank, fnds_rank, fronts_from_ranks, ranks_from_fronts
from .bitset import DominanceSet
from .core import (
    ComparisonTally,
    LengthMismatch,
    NDSortError,
    NonFiniteValue,
    ObjectiveMatrix,
    ObjectiveOutOfRange,
    Order,
    ShapeMismatch,
    ZeroObjectives,
    as_matrix,
    dominates,
    lexicographic_compare,
    validate_population,
)
from .datagen import GenSpec, InsufficientPoints, gen_degenerate, gen_shells, gen_uniform
from .mnds import (
    InternalOrderViolation,
    MndsState,
    get_ranking,
    mnds_rank,
    sort_first_objective,
    sort_rest_of_objectives,
    stable_sort_by_objective,
)

__version__ = "0.1.0"
