"""Feasible-space enumeration and the driver-induced transition graph.

States are the binary assignments satisfying every row at its target value.
Each commuting term contributes an undirected edge ``x <-> x'`` for every
feasible ``x`` matching its ``(v, w)`` pattern.  Connectivity is a property of
this classical graph; amplitude cancellation between terms at particular
coefficient choices is not modelled.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import DriverTerm, commutation_defect
from .caps import check_state_cap
from .model import ConstraintSet

__all__ = [
    "ConnectivityReport",
    "FeasibleSpace",
    "NonCommutingTerm",
    "build_transition_graph",
    "components",
    "connects_entire_space",
    "enumerate_feasible",
    "is_nontrivial",
]

_CHUNK = 1 << 20


class NonCommutingTerm(ValueError):
    pass


@dataclass(frozen=True)
class FeasibleSpace:
    cs: ConstraintSet
    states: tuple[int, ...]
    edges: frozenset[tuple[int, int]] = field(default=frozenset())

    @property
    def n(self) -> int:
        return self.cs.n

    def __len__(self) -> int:
        return len(self.states)

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {s: [] for s in self.states}
        for a, b in sorted(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        return adj


def enumerate_feasible(cs: ConstraintSet, cap: int | None = None) -> FeasibleSpace:
    """All ``x`` in ``{0,1}^n`` with ``c_i . x = b_i`` for every row, sorted."""
    n = cs.n
    check_state_cap(n, cap)
    small = all(row.l1_norm < 2**62 and abs(row.value) < 2**62 for row in cs.constraints)
    if not small:
        states = tuple(x for x in range(1 << n) if cs.is_satisfied_by(x))
        return FeasibleSpace(cs, states)
    found: list[np.ndarray] = []
    for lo in range(0, 1 << n, _CHUNK):
        xs = np.arange(lo, min(lo + _CHUNK, 1 << n), dtype=np.int64)
        keep = np.ones(xs.shape, dtype=bool)
        for row in cs.constraints:
            total = np.zeros(xs.shape, dtype=np.int64)
            for i, c in enumerate(row.coeffs):
                if c:
                    total += c * ((xs >> (n - 1 - i)) & 1)
            keep &= total == row.value
        found.append(xs[keep])
    states = tuple(int(x) for x in np.concatenate(found)) if found else ()
    return FeasibleSpace(cs, states)


def build_transition_graph(
    fs: FeasibleSpace, terms: Iterable[DriverTerm]
) -> FeasibleSpace:
    """Return ``fs`` with the edges induced by ``terms`` added.

    Raises :class:`NonCommutingTerm` for a term with nonzero defect on any
    row.  A transition leaving the feasible set would contradict the
    commutation condition and trips an assertion.
    """
    n = fs.n
    members = set(fs.states)
    edges = set(fs.edges)
    for t in terms:
        if t.max_index() >= n:
            raise ValueError(f"term does not fit in {n} qubits")
        for r, row in enumerate(fs.cs.constraints):
            d = commutation_defect(t, row)
            if d:
                raise NonCommutingTerm(f"term {t.key} has defect {d} on row {r + 1}")
        if t.is_diagonal:
            continue
        vmask = sum(1 << (n - 1 - i) for i in t.v)
        wmask = sum(1 << (n - 1 - i) for i in t.w)
        for x in fs.states:
            if x & vmask == vmask and not x & wmask:
                y = (x & ~vmask) | wmask
                assert y in members, f"transition {x:0{n}b} -> {y:0{n}b} leaves the feasible set"
                edges.add((min(x, y), max(x, y)))
    return FeasibleSpace(fs.cs, fs.states, frozenset(edges))


def is_nontrivial(fs: FeasibleSpace) -> bool:
    """True iff the terms induce at least one edge among feasible states."""
    return len(fs.edges) >= 1


def components(fs: FeasibleSpace) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest member."""
    adj = fs.adjacency()
    seen: set[int] = set()
    out = []
    for s in fs.states:
        if s in seen:
            continue
        seen.add(s)
        comp, queue = [], deque([s])
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    component_count: int
    component_sizes: tuple[int, ...]
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "connected": self.connected,
            "component_count": self.component_count,
            "components": list(self.component_sizes),
            "degenerate": self.degenerate,
        }


def connects_entire_space(fs: FeasibleSpace) -> ConnectivityReport:
    """Whether the edges join all feasible states into one component.

    Empty and single-state spaces count as connected and are flagged
    ``degenerate``.
    """
    comps = components(fs)
    return ConnectivityReport(
        connected=len(comps) <= 1,
        component_count=len(comps),
        component_sizes=tuple(len(c) for c in comps),
        degenerate=len(fs.states) <= 1,
    )


def reachable_from(fs: FeasibleSpace, sources: Sequence[int]) -> set[int]:
    adj = fs.adjacency()
    seen = set(sources)
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
