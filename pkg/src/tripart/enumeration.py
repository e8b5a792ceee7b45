"""Exhaustive generation of partitions of n: the brute-force oracle.

Partitions stream in canonical order, descending lexicographic on the
expanded part sequence, so (n)x[1] comes first and (1)x[n] last.  A
pentagonal-number recurrence provides an independent count so the
enumerator can be cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .core import Partition

#: Largest n enumerated without an explicit override.  p(60) is just
#: under a million partitions; anything bigger deserves a conscious
#: decision from the caller.
DESK_CEILING = 60


class NonPositiveSizeError(ValueError):
    """Enumeration target n must be at least 1."""


class DeskCeilingError(ValueError):
    """n exceeds the desk-scale ceiling and no override was given."""


@dataclass(frozen=True)
class PartitionList:
    """All partitions of ``n`` (possibly filtered), in canonical order."""

    n: int
    items: tuple[Partition, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]


def _check_n(n: int, ceiling: int | None) -> None:
    if not isinstance(n, int) or n < 1:
        raise NonPositiveSizeError(f"n must be a positive integer, got {n!r}")
    limit = DESK_CEILING if ceiling is None else ceiling
    if n > limit:
        raise DeskCeilingError(
            f"n={n} exceeds the desk ceiling {limit}; pass a larger ceiling to override"
        )


def iter_raw(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield (parts, mults) tuples of every partition of n, canonical order.

    No validation, no Partition objects: this is the hot path that the
    verification engine runs millions of times.
    """
    if not isinstance(n, int) or n < 1:
        raise NonPositiveSizeError(f"n must be a positive integer, got {n!r}")
    return _iter_recursive(n, n)


def _iter_recursive(remaining: int, max_part: int):
    top = min(max_part, remaining)
    for v in range(top, 0, -1):
        for c in range(remaining // v, 0, -1):
            rest = remaining - c * v
            if rest == 0:
                yield (v,), (c,)
            elif v > 1:
                for ps, ms in _iter_recursive(rest, v - 1):
                    yield (v,) + ps, (c,) + ms


def iter_partitions(n: int, *, ceiling: int | None = None) -> Iterator[Partition]:
    """Stream every partition of n in canonical order."""
    _check_n(n, ceiling)
    for parts, mults in _iter_recursive(n, n):
        yield Partition._wrap(parts, mults)


def partitions_of(n: int, *, ceiling: int | None = None) -> PartitionList:
    """All partitions of n as a list, canonical order, complete."""
    return PartitionList(n, tuple(iter_partitions(n, ceiling=ceiling)))


_pcache = [1]  # p(0) = 1


def count_partitions(n: int) -> int:
    """p(n) by the pentagonal-number recurrence, independent of the enumerator."""
    if not isinstance(n, int) or n < 1:
        raise NonPositiveSizeError(f"n must be a positive integer, got {n!r}")
    while len(_pcache) <= n:
        j = len(_pcache)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > j:
                break
            sign = 1 if k % 2 == 1 else -1
            total += sign * _pcache[j - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= j:
                total += sign * _pcache[j - g2]
            k += 1
        _pcache.append(total)
    return _pcache[n]


def filter_partitions(
    n: int,
    pred: Callable[[Partition], bool],
    *,
    ceiling: int | None = None,
) -> PartitionList:
    """Partitions of n satisfying ``pred``, canonical order preserved."""
    _check_n(n, ceiling)
    items = []
    for parts, mults in _iter_recursive(n, n):
        p = Partition._wrap(parts, mults)
        if pred(p):
            items.append(p)
    return PartitionList(n, tuple(items))
