"""Exact meet-in-the-middle solvers for the subset-sum family.

Witnesses are 0-based index tuples.  The empty subset never counts as a
witness, so ``T = 0`` has no SUBSET SUM solution over positive values.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from ..caps import check_oracle_cap

__all__ = [
    "oracle_2_or_more",
    "oracle_equal_subset_sum",
    "oracle_subset_sum",
]


def _halves(values: Sequence[int]) -> tuple[list[int], list[int]]:
    h = len(values) // 2
    return list(values[:h]), list(values[h:])


def _signed_table(values: list[int]) -> tuple[dict[int, tuple[int, ...]], tuple[int, ...] | None]:
    """First sign vector per signed sum, plus the first nonzero vector summing to 0."""
    first: dict[int, tuple[int, ...]] = {}
    nonzero_zero = None
    for u in product((0, 1, -1), repeat=len(values)):
        total = sum(ui * v for ui, v in zip(u, values))
        first.setdefault(total, u)
        if total == 0 and nonzero_zero is None and any(u):
            nonzero_zero = u
    return first, nonzero_zero


def oracle_equal_subset_sum(
    values: Sequence[int], cap: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two nonempty disjoint index sets with equal sums, or ``None``.

    The returned pair is oriented so the smallest index involved lies in
    the first set.
    """
    check_oracle_cap(len(values), cap)
    left, right = _halves(values)
    h = len(left)
    right_first, right_zero = _signed_table(right)
    for ul in product((0, 1, -1), repeat=h):
        lsum = sum(ui * v for ui, v in zip(ul, left))
        ur = right_first.get(-lsum) if any(ul) else right_zero
        if ur is None:
            continue
        u = ul + ur
        first = next(x for x in u if x)
        a = tuple(i for i, x in enumerate(u) if x == first)
        b = tuple(i for i, x in enumerate(u) if x == -first)
        if a and b:
            return a, b
    return None


def _subset_table(values: list[int], offset: int, keep: int) -> dict[int, list[tuple[int, ...]]]:
    table: dict[int, list[tuple[int, ...]]] = {}
    for mask in range(1 << len(values)):
        idx = tuple(offset + i for i in range(len(values)) if (mask >> i) & 1)
        bucket = table.setdefault(sum(values[i - offset] for i in idx), [])
        if len(bucket) < keep:
            bucket.append(idx)
    return table


def _subsets_summing_to(values: Sequence[int], target: int, limit: int) -> list[tuple[int, ...]]:
    left, right = _halves(values)
    right_table = _subset_table(right, len(left), limit + 1)
    out: list[tuple[int, ...]] = []
    for mask in range(1 << len(left)):
        lidx = tuple(i for i in range(len(left)) if (mask >> i) & 1)
        for ridx in right_table.get(target - sum(left[i] for i in lidx), ()):
            idx = lidx + ridx
            if idx:
                out.append(idx)
                if len(out) == limit:
                    return out
    return out


def oracle_subset_sum(
    values: Sequence[int], target: int, cap: int | None = None
) -> tuple[int, ...] | None:
    """A nonempty index set summing to ``target``, or ``None``."""
    check_oracle_cap(len(values), cap)
    found = _subsets_summing_to(values, target, 1)
    return found[0] if found else None


def oracle_2_or_more(
    values: Sequence[int], target: int, cap: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two distinct nonempty index sets, each summing to ``target``.

    Ordered by size, then lexicographically.
    """
    check_oracle_cap(len(values), cap)
    found = _subsets_summing_to(values, target, 2)
    if len(found) < 2:
        return None
    s1, s2 = sorted(found, key=lambda s: (len(s), s))
    return s1, s2
