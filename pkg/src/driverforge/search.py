"""Exhaustive search for bounded-weight commuting driver terms.

A weight-``j`` candidate is a vector ``u`` in ``{-1, 0, 1}^n`` with ``j``
nonzero entries; fixing the first nonzero entry to ``+1`` leaves
``2^(j-1) * C(n, j)`` candidates per weight.  A candidate commutes with every
constraint iff ``C u = 0``.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .algebra import DriverTerm, term_from_u
from .model import ConstraintSet

__all__ = [
    "SearchReport",
    "candidate_count",
    "find_k_local_drivers",
    "find_two_local_by_columns",
]

log = logging.getLogger(__name__)

# below this many candidates a process pool costs more than it saves
_PARALLEL_THRESHOLD = 200_000


@dataclass(frozen=True)
class SearchReport:
    k: int
    candidates_checked: int
    terms: tuple[DriverTerm, ...]
    elapsed: float


def candidate_count(n: int, k: int, include_weight_one: bool = False) -> int:
    """Closed-form number of canonical candidates of weight ``2..k`` (plus ``n``)."""
    total = sum(2 ** (j - 1) * comb(n, j) for j in range(2, k + 1))
    return total + (n if include_weight_one else 0)


def _sort_key(u: tuple[int, ...]) -> tuple:
    support = tuple(i for i, ui in enumerate(u) if ui)
    return support, tuple(0 if u[i] > 0 else 1 for i in support)


def _search_from(
    columns: Sequence[tuple[int, ...]], k: int, first: int, weight_one: bool
) -> tuple[int, list[tuple[int, ...]]]:
    """Depth-first walk over all candidates whose support starts at ``first``.

    Each node of the walk is one candidate; the running column sum makes the
    ``C u`` test incremental.
    """
    n = len(columns)
    m = len(columns[0])
    zero = (0,) * m
    checked = 0
    found: list[tuple[int, ...]] = []
    u = [0] * n

    def visit(last: int, partial: tuple[int, ...], depth: int) -> None:
        nonlocal checked
        if depth >= 2 or weight_one:
            checked += 1
            if partial == zero:
                found.append(tuple(u))
        if depth == k:
            return
        for j in range(last + 1, n):
            col = columns[j]
            for sign in (1, -1):
                u[j] = sign
                visit(j, tuple(p + sign * c for p, c in zip(partial, col)), depth + 1)
            u[j] = 0

    u[first] = 1
    visit(first, columns[first], 1)
    return checked, found


def find_k_local_drivers(
    cs: ConstraintSet, k: int, workers: int = 1
) -> SearchReport:
    """Every canonical ``u`` with ``1 <= |supp(u)| <= k`` and ``C u = 0``.

    Weight-1 candidates are only examined (and counted) when ``C`` has an
    all-zero column, since otherwise none can commute.  Output is sorted
    lexicographically by support tuple, then by sign pattern with ``+1``
    ordered before ``-1``; this order is independent of ``workers``.
    """
    if not 1 <= k <= cs.n:
        raise ValueError(f"k must satisfy 1 <= k <= n={cs.n}, got {k}")
    start = time.perf_counter()
    columns = cs.columns()
    weight_one = any(not any(col) for col in columns)
    firsts = range(cs.n)
    if workers > 1 and candidate_count(cs.n, k) >= _PARALLEL_THRESHOLD:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    _search_from,
                    [columns] * cs.n,
                    [k] * cs.n,
                    firsts,
                    [weight_one] * cs.n,
                )
            )
    else:
        parts = [_search_from(columns, k, f, weight_one) for f in firsts]
    checked = sum(p[0] for p in parts)
    found = sorted((u for p in parts for u in p[1]), key=_sort_key)
    terms = tuple(term_from_u(u) for u in found)
    elapsed = time.perf_counter() - start
    log.debug("k=%d: %d candidates, %d terms in %.3fs", k, checked, len(terms), elapsed)
    return SearchReport(k=k, candidates_checked=checked, terms=terms, elapsed=elapsed)


def find_two_local_by_columns(cs: ConstraintSet) -> SearchReport:
    """Weight-2 commuting terms from equal and opposite column pairs.

    Equal columns ``i < j`` give ``u = e_i - e_j``; opposite columns give
    ``u = e_i + e_j``.  All-zero columns are equal to each other and to their
    own negation, so for them only the equal-pair rule is applied through the
    hash table and the ``e_i + e_j`` pair is added explicitly once.
    ``candidates_checked`` counts the columns hashed.
    """
    start = time.perf_counter()
    columns = cs.columns()
    zero = (0,) * cs.m
    by_column: dict[tuple[int, ...], list[int]] = {}
    found: list[tuple[int, ...]] = []

    def u_pair(i: int, j: int, sj: int) -> tuple[int, ...]:
        u = [0] * cs.n
        u[i], u[j] = 1, sj
        return tuple(u)

    for j, col in enumerate(columns):
        for i in by_column.get(col, ()):
            found.append(u_pair(i, j, -1))
        if col == zero:
            for i in by_column.get(col, ()):
                found.append(u_pair(i, j, 1))
        else:
            neg = tuple(-c for c in col)
            for i in by_column.get(neg, ()):
                found.append(u_pair(i, j, 1))
        by_column.setdefault(col, []).append(j)
    found.sort(key=_sort_key)
    return SearchReport(
        k=2,
        candidates_checked=cs.n,
        terms=tuple(term_from_u(u) for u in found),
        elapsed=time.perf_counter() - start,
    )
