"""Population type, Pareto dominance and the comparison-counting contract.

All objectives are minimized. Ties and duplicates are decided by exact
floating-point equality.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Row = tuple[float, ...]


class NDSortError(Exception):
    """Base class for every error raised by this package."""


class NonFiniteValue(NDSortError, ValueError):
    def __init__(self, row: int, column: int, value: object):
        super().__init__(f"non-finite value {value!r} at row {row}, column {column}")
        self.row = row
        self.column = column
        self.value = value


class ZeroObjectives(NDSortError, ValueError):
    pass


class ShapeMismatch(NDSortError, ValueError):
    pass


class LengthMismatch(NDSortError, ValueError):
    pass


class ObjectiveOutOfRange(NDSortError, IndexError):
    pass


class ComparisonTally:
    """Running count of scalar objective-value comparisons for one run.

    A tally is passed explicitly into each sorter; nothing is global, so
    concurrent runs never share one.
    """

    __slots__ = ("count",)

    def __init__(self, count: int = 0):
        if count < 0:
            raise ValueError("tally cannot start negative")
        self.count = count

    def add(self, k: int) -> None:
        if k < 0:
            raise ValueError("tally can only grow")
        self.count += k

    def reset(self) -> None:
        self.count = 0

    def __int__(self) -> int:
        return self.count

    def __repr__(self) -> str:
        return f"ComparisonTally({self.count})"


def validate_population(values: Iterable[Sequence[float]], m: int | None = None) -> None:
    """Check that `values` is a well-formed N x M population.

    Raises
    ------
    ZeroObjectives
        If the objective count is 0.
    ShapeMismatch
        If rows have different lengths, or disagree with `m`.
    NonFiniteValue
        On the first NaN or infinity, reporting its row and column.
    """
    if m is not None and m < 1:
        raise ZeroObjectives("a population needs at least one objective")
    width = m
    for i, row in enumerate(values):
        if width is None:
            width = len(row)
            if width == 0:
                raise ZeroObjectives("a population needs at least one objective")
        elif len(row) != width:
            raise ShapeMismatch(f"row {i} has {len(row)} values, expected {width}")
        for j, v in enumerate(row):
            if not math.isfinite(v):
                raise NonFiniteValue(i, j, v)


@dataclass(frozen=True)
class ObjectiveMatrix:
    """N solutions by M objective values; row index is the solution id.

    Build one with :func:`as_matrix` (or directly from a sequence of rows).
    An empty population is valid but still needs ``m`` to be known.
    """

    rows: tuple[Row, ...]
    m: int
    _columns: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __init__(self, rows: Iterable[Sequence[float]], m: int | None = None):
        rows = tuple(tuple(float(v) for v in row) for row in rows)
        if m is None:
            if not rows:
                raise ZeroObjectives("cannot infer the objective count of an empty population")
            m = len(rows[0])
        validate_population(rows, m)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_columns", {})

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.m

    def column(self, k: int) -> tuple[float, ...]:
        if not 0 <= k < self.m:
            raise ObjectiveOutOfRange(f"objective {k} not in [0, {self.m})")
        col = self._columns.get(k)
        if col is None:
            col = self._columns[k] = tuple(row[k] for row in self.rows)
        return col

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> Row:
        return self.rows[i]

    def __getstate__(self):
        return {"rows": self.rows, "m": self.m}

    def __setstate__(self, state):
        object.__setattr__(self, "rows", state["rows"])
        object.__setattr__(self, "m", state["m"])
        object.__setattr__(self, "_columns", {})


def as_matrix(values, m: int | None = None) -> ObjectiveMatrix:
    """Coerce nested sequences or a 2-D numpy array into an ObjectiveMatrix."""
    if isinstance(values, ObjectiveMatrix):
        if m is not None and m != values.m:
            raise ShapeMismatch(f"matrix has {values.m} objectives, expected {m}")
        return values
    shape = getattr(values, "shape", None)
    if shape is not None:
        if len(shape) != 2:
            raise ShapeMismatch(f"expected a 2-D array, got shape {shape}")
        if m is None:
            m = shape[1]
        values = values.tolist()
    return ObjectiveMatrix(values, m)


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def dominates(a: Sequence[float], b: Sequence[float], tally: ComparisonTally | None = None) -> bool:
    """True iff `a` Pareto-dominates `b` under minimization.

    Stops at the first objective where ``a`` is worse; the tally receives
    the number of objective pairs actually examined.
    """
    if len(a) != len(b):
        raise LengthMismatch(f"vectors of length {len(a)} and {len(b)}")
    strict = False
    used = 0
    result = True
    for x, y in zip(a, b):
        used += 1
        if x > y:
            result = False
            break
        if x < y:
            strict = True
    if tally is not None:
        tally.add(used)
    return result and strict


def lexicographic_compare(
    a: Sequence[float], b: Sequence[float], tally: ComparisonTally | None = None
) -> Order:
    if len(a) != len(b):
        raise LengthMismatch(f"vectors of length {len(a)} and {len(b)}")
    used = 0
    result = Order.EQUAL
    for x, y in zip(a, b):
        used += 1
        if x != y:
            result = Order.LESS if x < y else Order.GREATER
            break
    if tally is not None:
        tally.add(used)
    return result


def check_ranks(ranks: Sequence[int], n: int) -> None:
    """Raise ValueError unless `ranks` covers n ids with contiguous ranks 1..F."""
    if len(ranks) != n:
        raise ValueError(f"{len(ranks)} ranks for {n} solutions")
    if n == 0:
        return
    seen = set(ranks)
    if min(seen) != 1 or seen != set(range(1, max(seen) + 1)):
        raise ValueError(f"ranks are not contiguous from 1: {sorted(seen)}")
