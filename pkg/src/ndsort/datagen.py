"""Seeded synthetic populations.

All randomness comes from SplitMix64 so that any implementation can
reproduce the same matrices bit for bit::

    state  = (state + 0x9E3779B97F4A7C15) mod 2**64
    z      = state
    z      = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z      = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

A draw in [0, 1) is ``(output >> 11) * 2**-53``. Matrices are filled row
by row, one draw per value.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .core import NDSortError, ObjectiveMatrix

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class InsufficientPoints(NDSortError, ValueError):
    pass


class SplitMix64:
    """SplitMix64 stream; `next_u64` is the scalar path, `uniforms` the vectorized one."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, k: int) -> int:
        """Integer in [0, k)."""
        return int(self.next_float() * k)

    def u64_block(self, count: int) -> np.ndarray:
        steps = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + steps * np.uint64(GOLDEN_GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
        self.state = (self.state + count * GOLDEN_GAMMA) & MASK64
        return z

    def uniforms(self, count: int) -> np.ndarray:
        return (self.u64_block(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def gen_uniform(n: int, m: int, seed: int) -> ObjectiveMatrix:
    """n x m i.i.d. draws in [0, 1)."""
    _check_dims(n, m)
    values = SplitMix64(seed).uniforms(n * m).reshape(n, m)
    return ObjectiveMatrix(values.tolist(), m)


def gen_shells(n: int, m: int, k_fronts: int, seed: int) -> ObjectiveMatrix:
    """Population with exactly `k_fronts` fronts.

    ``ceil(n / k_fronts)`` base points are drawn uniformly on the simplex
    (normalized exponentials). Row r is base point ``r // k_fronts``
    shifted by ``r % k_fronts`` on every coordinate, so shell j always
    holds a copy of each base point its successor holds, and every row of
    shell j has rank j + 1.
    """
    _check_dims(n, m)
    if m < 2:
        raise ValueError("shells need at least two objectives")
    if k_fronts < 1 or n < k_fronts:
        raise InsufficientPoints(f"{n} points cannot fill {k_fronts} fronts")
    n_base = -(-n // k_fronts)
    u = SplitMix64(seed).uniforms(n_base * m).reshape(n_base, m)
    e = -np.log1p(-u)
    totals = e.sum(axis=1, keepdims=True)
    totals[totals == 0.0] = 1.0
    base = e / totals
    rows = [(base[r // k_fronts] + (r % k_fronts)).tolist() for r in range(n)]
    return ObjectiveMatrix(rows, m)


def gen_degenerate(n: int, m: int, seed: int, dup_fraction: float = 0.0, quant_levels: int = 0) -> ObjectiveMatrix:
    """Tie- and duplicate-heavy population.

    Values from :func:`gen_uniform` are snapped down to a grid of
    `quant_levels` levels (0 leaves them continuous). Then
    ``floor(dup_fraction * n)`` distinct rows, chosen with the same stream,
    are overwritten by a copy of a uniformly chosen earlier row.
    """
    _check_dims(n, m)
    if n < 1:
        raise ValueError("degenerate populations need n >= 1")
    if not 0.0 <= dup_fraction < 1.0:
        raise ValueError("dup_fraction must be in [0, 1)")
    if quant_levels < 0:
        raise ValueError("quant_levels must be >= 0")
    rng = SplitMix64(seed)
    values = rng.uniforms(n * m).reshape(n, m)
    if quant_levels:
        values = np.floor(values * quant_levels) / quant_levels
    rows = values.tolist()

    n_dup = math.floor(dup_fraction * n)
    # partial Fisher-Yates over candidate rows 1..n-1
    candidates = list(range(1, n))
    for i in range(n_dup):
        j = i + rng.below(len(candidates) - i)
        candidates[i], candidates[j] = candidates[j], candidates[i]
    for t in sorted(candidates[:n_dup]):
        rows[t] = list(rows[rng.below(t)])
    return ObjectiveMatrix(rows, m)


def _check_dims(n: int, m: int) -> None:
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 1:
        raise ValueError("m must be >= 1")


_KIND_PARAMS = {
    "uniform": set(),
    "shells": {"k_fronts"},
    "degenerate": {"dup_fraction", "quant_levels"},
}


@dataclass(frozen=True)
class GenSpec:
    """A generator call that can be named, parsed, and replayed.

    Text form: ``kind:n=..,m=..,seed=..[,k_fronts=..][,dup_fraction=..][,quant_levels=..]``.
    """

    kind: str
    n: int
    m: int
    seed: int
    k_fronts: int | None = None
    dup_fraction: float | None = None
    quant_levels: int | None = None

    def __post_init__(self):
        if self.kind not in _KIND_PARAMS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        _check_dims(self.n, self.m)
        wanted = _KIND_PARAMS[self.kind]
        for name in ("k_fronts", "dup_fraction", "quant_levels"):
            given = getattr(self, name) is not None
            if given and name not in wanted:
                raise ValueError(f"{name} does not apply to {self.kind}")
        if self.kind == "shells" and self.k_fronts is None:
            raise ValueError("shells need k_fronts")
        if self.kind == "degenerate":
            if self.dup_fraction is None:
                object.__setattr__(self, "dup_fraction", 0.0)
            if self.quant_levels is None:
                object.__setattr__(self, "quant_levels", 0)

    def generate(self) -> ObjectiveMatrix:
        if self.kind == "uniform":
            return gen_uniform(self.n, self.m, self.seed)
        if self.kind == "shells":
            return gen_shells(self.n, self.m, self.k_fronts, self.seed)
        return gen_degenerate(self.n, self.m, self.seed, self.dup_fraction, self.quant_levels)

    @property
    def label(self) -> str:
        parts = [self.kind, f"n{self.n}", f"m{self.m}", f"s{self.seed}"]
        if self.kind == "shells":
            parts.append(f"k{self.k_fronts}")
        if self.kind == "degenerate":
            parts += [f"d{self.dup_fraction:g}", f"q{self.quant_levels}"]
        return "-".join(parts)

    @classmethod
    def parse(cls, text: str) -> "GenSpec":
        kind, _, rest = text.partition(":")
        fields: dict = {}
        for item in filter(None, re.split(r"[,\s]+", rest)):
            key, sep, value = item.partition("=")
            key = key.replace("-", "_")
            if not sep or key not in {"n", "m", "seed", "k_fronts", "dup_fraction", "quant_levels"}:
                raise ValueError(f"bad generator parameter {item!r}")
            fields[key] = float(value) if key == "dup_fraction" else int(value)
        missing = {"n", "m", "seed"} - fields.keys()
        if missing:
            raise ValueError(f"generator spec {text!r} lacks {sorted(missing)}")
        return cls(kind=kind.strip(), **fields)
