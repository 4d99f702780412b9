"""Stable bottom-up merge sort over index permutations, with comparison counts.

Two key modes are supported: a single objective column (``by_key``) and
full lexicographic order over objective rows (``lexicographic``). Both
return ``(order, changed, comparisons)``; when the input is already in
order the linear pre-scan is the only work done and ``changed`` is False.

Each examination of one pair of objective values counts as one
comparison, whether it resolves to <, = or >.
"""

from __future__ import annotations

from typing import Callable, Sequence

Merge = Callable[[list, list, int, int, int], int]


def _bottom_up(order: Sequence[int], merge: Merge) -> tuple[list[int], int]:
    n = len(order)
    src = list(order)
    dst = [0] * n
    width = 1
    comparisons = 0
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = lo + width
            if mid >= n:
                dst[lo:n] = src[lo:n]
                break
            hi = min(mid + width, n)
            comparisons += merge(src, dst, lo, mid, hi)
        src, dst = dst, src
        width *= 2
    return src, comparisons


def by_key(order: Sequence[int], key: Sequence[float]) -> tuple[list[int], bool, int]:
    """Stable sort of `order` ascending by ``key[i]``."""
    n = len(order)
    comparisons = 0
    for i in range(n - 1):
        comparisons += 1
        if key[order[i + 1]] < key[order[i]]:
            break
    else:
        return list(order), False, comparisons

    def merge(src, dst, lo, mid, hi):
        i, j, k = lo, mid, lo
        a, b = src[i], src[j]
        ka, kb = key[a], key[b]
        c = 0
        while True:
            c += 1
            if kb < ka:
                dst[k] = b
                k += 1
                j += 1
                if j == hi:
                    dst[k:hi] = src[i:mid]
                    return c
                b = src[j]
                kb = key[b]
            else:
                dst[k] = a
                k += 1
                i += 1
                if i == mid:
                    dst[k:hi] = src[j:hi]
                    return c
                a = src[i]
                ka = key[a]

    result, merged = _bottom_up(order, merge)
    return result, True, comparisons + merged


def _tail_compare(x: Sequence[float], y: Sequence[float]) -> tuple[int, int]:
    # x[0] == y[0] already established
    used = 0
    for k in range(1, len(x)):
        used += 1
        if x[k] != y[k]:
            return (-1 if x[k] < y[k] else 1), used
    return 0, used


def lexicographic(order: Sequence[int], rows: Sequence[Sequence[float]]) -> tuple[list[int], bool, int]:
    """Stable sort of `order` by the first objective, ties broken lexicographically."""
    n = len(order)
    comparisons = 0
    for i in range(n - 1):
        x, y = rows[order[i]], rows[order[i + 1]]
        comparisons += 1
        if y[0] < x[0]:
            break
        if y[0] == x[0]:
            sign, used = _tail_compare(y, x)
            comparisons += used
            if sign < 0:
                break
    else:
        return list(order), False, comparisons

    def merge(src, dst, lo, mid, hi):
        i, j, k = lo, mid, lo
        a, b = src[i], src[j]
        ra, rb = rows[a], rows[b]
        c = 0
        while True:
            c += 1
            if rb[0] < ra[0]:
                take_right = True
            elif rb[0] > ra[0]:
                take_right = False
            else:
                sign, used = _tail_compare(rb, ra)
                c += used
                take_right = sign < 0
            if take_right:
                dst[k] = b
                k += 1
                j += 1
                if j == hi:
                    dst[k:hi] = src[i:mid]
                    return c
                b = src[j]
                rb = rows[b]
            else:
                dst[k] = a
                k += 1
                i += 1
                if i == mid:
                    dst[k:hi] = src[j:hi]
                    return c
                a = src[i]
                ra = rows[a]

    result, merged = _bottom_up(order, merge)
    return result, True, comparisons + merged
