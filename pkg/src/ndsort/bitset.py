"""Fixed-capacity bit set with tracked lowest and highest members."""

from __future__ import annotations

from typing import Iterable, Iterator

# set-bit offsets of every byte value, for fast ascending iteration
_BYTE_BITS = tuple(tuple(k for k in range(8) if v >> k & 1) for v in range(256))


class DominanceSet:
    """A set of positions in ``[0, capacity)`` backed by one Python int.

    ``min_pos`` and ``max_pos`` are the smallest and largest members, or
    None when the set is empty. Intersections only look at the overlap of
    the two ``[min_pos, max_pos]`` ranges and bail out when it is empty.
    """

    __slots__ = ("bits", "capacity", "min_pos", "max_pos")

    def __init__(self, capacity: int, positions: Iterable[int] = ()):
        if capacity < 0:
            raise ValueError("capacity must be non-negative")
        self.capacity = capacity
        self.bits = 0
        self.min_pos: int | None = None
        self.max_pos: int | None = None
        for p in positions:
            self.add(p)

    @classmethod
    def prefix(cls, capacity: int, k: int) -> "DominanceSet":
        """The set {0, ..., k-1}."""
        if not 0 <= k <= capacity:
            raise IndexError(f"prefix length {k} exceeds capacity {capacity}")
        s = cls(capacity)
        if k:
            s.bits = (1 << k) - 1
            s.min_pos = 0
            s.max_pos = k - 1
        return s

    def add(self, pos: int) -> None:
        if not 0 <= pos < self.capacity:
            raise IndexError(f"position {pos} outside [0, {self.capacity})")
        self.bits |= 1 << pos
        if self.min_pos is None:
            self.min_pos = self.max_pos = pos
        elif pos < self.min_pos:
            self.min_pos = pos
        elif pos > self.max_pos:
            self.max_pos = pos

    def clear(self) -> None:
        self.bits = 0
        self.min_pos = self.max_pos = None

    def intersection_update(self, other: "DominanceSet") -> None:
        if self.min_pos is None or other.min_pos is None:
            self.clear()
            return
        lo = max(self.min_pos, other.min_pos)
        hi = min(self.max_pos, other.max_pos)
        if lo > hi:
            self.clear()
            return
        # CPython's int AND already stops at the shorter operand, which ends
        # at word(hi); bits under lo are zero in one operand by construction.
        bits = self.bits & other.bits
        if not bits:
            self.clear()
            return
        self.bits = bits
        self.max_pos = bits.bit_length() - 1
        self.min_pos = (bits & -bits).bit_length() - 1

    def __and__(self, other: "DominanceSet") -> "DominanceSet":
        out = self.copy()
        out.intersection_update(other)
        return out

    def copy(self) -> "DominanceSet":
        out = DominanceSet(self.capacity)
        out.bits = self.bits
        out.min_pos = self.min_pos
        out.max_pos = self.max_pos
        return out

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, pos: object) -> bool:
        if not isinstance(pos, int) or not 0 <= pos < self.capacity:
            return False
        return (self.bits >> pos) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        """Members in ascending order, scanning only bytes from min_pos up."""
        bits = self.bits
        if not bits:
            return
        data = bits.to_bytes((bits.bit_length() + 7) // 8, "little")
        for bi in range(self.min_pos >> 3, len(data)):
            byte = data[bi]
            if byte:
                base = bi << 3
                for off in _BYTE_BITS[byte]:
                    yield base + off

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DominanceSet):
            return self.bits == other.bits
        if isinstance(other, (set, frozenset)):
            return set(self) == other
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"DominanceSet({sorted(self)!r}, capacity={self.capacity})"
