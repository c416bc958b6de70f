"""EQUAL SUBSET SUM to a 0-1 constraint matrix via layers of generalized adders.

Each integer ``s_i`` owns one column shared by every layer; in layer ``l``
the adder consuming it carries the coefficient of bit ``l`` of ``s_i``.
Layers ``1..m`` chain the integer bits followed by the previous layer's
carries; later layers chain carries only, one adder fewer each time, until
a single carry remains.  The last sum of every layer and the final carry
are forced to zero, so an assignment in ``{-1, 0, 1}`` on the integer
columns extends to a null vector exactly when its signed sum vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

from ..algebra import DriverTerm, u_of
from ..model import ConstraintSet, DomainTag
from .adder import ADDER_TABLE, adder_internals, ga_truth_rows

__all__ = [
    "AdderInternal",
    "AdderSpec",
    "Carry",
    "ConsistencyError",
    "GadgetLayout",
    "InputRef",
    "IntegerVar",
    "REDUCED_FIXTURE_MATRIX",
    "Sum",
    "adder_count",
    "backmap_solution",
    "build_binary_lp",
    "forward_propagate",
    "layer_count",
    "reduced_fixture",
]


class ConsistencyError(RuntimeError):
    """A state the construction rules out was observed."""


@dataclass(frozen=True)
class IntegerVar:
    index: int

    def to_dict(self) -> dict:
        return {"role": "integer", "index": self.index + 1}


@dataclass(frozen=True)
class AdderInternal:
    adder: int
    which: str

    def to_dict(self) -> dict:
        return {"role": "adder_internal", "adder": self.adder + 1, "which": self.which}


@dataclass(frozen=True)
class Carry:
    layer: int
    index: int

    def to_dict(self) -> dict:
        return {"role": "carry", "layer": self.layer, "index": self.index}


@dataclass(frozen=True)
class Sum:
    layer: int
    index: int

    def to_dict(self) -> dict:
        return {"role": "sum", "layer": self.layer, "index": self.index}


ColumnRole = Union[IntegerVar, AdderInternal, Carry, Sum]


@dataclass(frozen=True)
class InputRef:
    column: int
    coeff: int

    def to_dict(self) -> dict:
        return {"column": self.column + 1, "coeff": self.coeff}


@dataclass(frozen=True)
class AdderSpec:
    """One gadget: ``layer`` and ``position`` are 1-based, columns 0-based."""

    id: int
    layer: int
    position: int
    input_a: InputRef
    input_b: InputRef
    internals: tuple[int, int, int]
    carry: int
    sum: int

    @property
    def columns(self) -> tuple[int, ...]:
        return (self.input_a.column, self.input_b.column, *self.internals, self.carry, self.sum)

    def to_dict(self) -> dict:
        return {
            "id": self.id + 1,
            "layer": self.layer,
            "position": self.position,
            "input_a": self.input_a.to_dict(),
            "input_b": self.input_b.to_dict(),
            "internals": [c + 1 for c in self.internals],
            "carry": self.carry + 1,
            "sum": self.sum + 1,
        }


SparseRow = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GadgetLayout:
    """Generated matrix with column roles.

    Rows are stored sparsely as ``(column, coefficient)`` pairs because the
    unreduced build grows as ``O(m^2 n^2)`` in both dimensions.
    """

    values: tuple[int, ...]
    rows: tuple[SparseRow, ...]
    columns: tuple[ColumnRole, ...]
    adders: tuple[AdderSpec, ...]
    forced_zero: tuple[int, ...]

    @property
    def n(self) -> int:
        """Number of integer columns."""
        return len(self.values)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        width = len(self.columns)
        dense = []
        for row in self.rows:
            out = [0] * width
            for j, k in row:
                out[j] = k
            dense.append(tuple(out))
        return tuple(dense)

    def residual(self, mu: Sequence[int]) -> list[int]:
        if len(mu) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} entries, got {len(mu)}")
        return [sum(k * mu[j] for j, k in row) for row in self.rows]

    def annihilates(self, mu: Sequence[int]) -> bool:
        return not any(self.residual(mu))

    def forced_columns(self) -> list[int]:
        return [self.rows[r][0][0] for r in self.forced_zero]

    def to_constraint_set(self) -> ConstraintSet:
        return ConstraintSet.from_rows(self.matrix, [0] * len(self.rows), DomainTag.BINARY01)

    def to_dict(self) -> dict:
        return {
            "values": list(self.values),
            "matrix": [list(r) for r in self.matrix],
            "columns": [c.to_dict() for c in self.columns],
            "adders": [a.to_dict() for a in self.adders],
            "forced_zero_rows": [r + 1 for r in self.forced_zero],
        }


class _Builder:
    def __init__(self, values: Sequence[int]) -> None:
        self.values = tuple(values)
        self.columns: list[ColumnRole] = [IntegerVar(i) for i in range(len(values))]
        self.adders: list[AdderSpec] = []

    def _new(self, role: ColumnRole) -> int:
        self.columns.append(role)
        return len(self.columns) - 1

    def add(self, layer: int, position: int, a: InputRef, b: InputRef) -> AdderSpec:
        aid = len(self.adders)
        internals = tuple(self._new(AdderInternal(aid, w)) for w in ("x1", "x2", "x3"))
        carry = self._new(Carry(layer, position))
        total = self._new(Sum(layer, position))
        spec = AdderSpec(aid, layer, position, a, b, internals, carry, total)
        self.adders.append(spec)
        return spec

    def chain(self, layer: int, inputs: list[InputRef]) -> list[AdderSpec]:
        """``in_0 + in_1``, then each running sum plus the next input."""
        row = [self.add(layer, 1, inputs[0], inputs[1])]
        for pos, ref in enumerate(inputs[2:], start=2):
            row.append(self.add(layer, pos, InputRef(row[-1].sum, 1), ref))
        return row

    def finish(self, forced_columns: list[int]) -> GadgetLayout:
        rows: list[SparseRow] = []
        for spec in self.adders:
            for block_row in ga_truth_rows(spec.input_a.coeff, spec.input_b.coeff):
                entries: dict[int, int] = {}
                for col, k in zip(spec.columns, block_row):
                    if k:
                        entries[col] = entries.get(col, 0) + k
                rows.append(tuple(sorted(entries.items())))
        forced = []
        for col in forced_columns:
            forced.append(len(rows))
            rows.append(((col, 1),))
        return GadgetLayout(self.values, tuple(rows), tuple(self.columns), tuple(self.adders), tuple(forced))


def layer_count(values: Sequence[int]) -> int:
    """``m = ceil(log2 max S) + 1`` bit layers."""
    return (max(values) - 1).bit_length() + 1


def adder_count(n: int, m: int) -> int:
    """Adders in the unreduced build: ``(n-1) l`` in bit layer ``l``, then a shrinking carry tail."""
    tail = (n - 1) * m - 1
    return (n - 1) * m * (m + 1) // 2 + tail * (tail + 1) // 2


def build_binary_lp(values: Sequence[int]) -> GadgetLayout:
    """Unreduced 0-1 matrix whose null vectors in ``{-1,0,1}`` encode equal-sum pairs."""
    values = tuple(values)
    n = len(values)
    if n < 2:
        raise ValueError(f"need at least two integers, got {n}")
    if any(isinstance(s, bool) or not isinstance(s, int) or s <= 0 for s in values):
        raise ValueError("values must be positive integers")
    m = layer_count(values)
    b = _Builder(values)
    forced: list[int] = []
    carries: list[int] = []
    layer = 0
    for layer in range(1, m + 1):
        inputs = [InputRef(i, (s >> (layer - 1)) & 1) for i, s in enumerate(values)]
        inputs += [InputRef(k, 1) for k in carries]
        row = b.chain(layer, inputs)
        forced.append(row[-1].sum)
        carries = [a.carry for a in row]
    while len(carries) >= 2:
        layer += 1
        row = b.chain(layer, [InputRef(k, 1) for k in carries])
        forced.append(row[-1].sum)
        carries = [a.carry for a in row]
    forced.append(carries[0])
    layout = b.finish(forced)

    count = adder_count(n, m)
    rows, cols = layout.shape
    assert len(layout.adders) == count, (len(layout.adders), count)
    assert len(forced) == n * m
    assert rows <= 6 * count + n * m and cols <= 5 * count + n, (rows, cols)
    return layout


def reduced_fixture() -> GadgetLayout:
    """Hand-pruned two-adder layout for ``S = {1, 1, 2}``.

    Adder 1 adds the low bits of ``s_1`` and ``s_2``; adder 2 adds the high
    bit of ``s_3`` to that carry.  Both sums and the final carry are forced.
    """
    b = _Builder((1, 1, 2))
    first = b.add(1, 1, InputRef(0, 1), InputRef(1, 1))
    second = b.add(1, 2, InputRef(2, 1), InputRef(first.carry, 1))
    return b.finish([first.sum, second.carry, second.sum])


# Columns: s1, s2, s3, then (x1, x2, x3, k, z) for each of the two adders.
REDUCED_FIXTURE_MATRIX: tuple[tuple[int, ...], ...] = (
    (1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1),
    (0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
)


def forward_propagate(layout: GadgetLayout, u: Sequence[int]) -> tuple[int, ...] | None:
    """Extend ``u`` on the integer columns through every adder in primary mode.

    Returns the full assignment when all forced wires come out zero,
    otherwise ``None`` (which happens exactly when ``sum u_i s_i != 0``).
    """
    if len(u) != layout.n:
        raise ValueError(f"expected {layout.n} entries, got {len(u)}")
    if any(x not in (-1, 0, 1) for x in u):
        raise ValueError("assignment entries must be in {-1, 0, 1}")
    mu = [0] * len(layout.columns)
    mu[: layout.n] = list(u)
    for spec in layout.adders:
        a = spec.input_a.coeff * mu[spec.input_a.column]
        b = spec.input_b.coeff * mu[spec.input_b.column]
        s, c = ADDER_TABLE[(a, b)][0]
        for col, x in zip(spec.internals, adder_internals(c, s)):
            mu[col] = x
        mu[spec.carry] = c
        mu[spec.sum] = s
    if any(mu[c] for c in layout.forced_columns()):
        return None
    if not layout.annihilates(mu):
        raise ConsistencyError("propagated assignment violates an adder row")
    return tuple(mu)


def backmap_solution(
    layout: GadgetLayout, solution: Sequence[int] | DriverTerm
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Read ``(A, B)`` off the integer columns of a null vector or driver term.

    Raises:
        ValueError: ``solution`` is not annihilated by the matrix, or is zero.
        ConsistencyError: nonzero ``solution`` vanishes on every integer column,
            or the recovered sets have different sums.
    """
    if isinstance(solution, DriverTerm):
        mu = u_of(solution, len(layout.columns))
    else:
        mu = tuple(solution)
    if any(x not in (-1, 0, 1) for x in mu):
        raise ValueError("assignment entries must be in {-1, 0, 1}")
    if not layout.annihilates(mu):
        raise ValueError("assignment is not annihilated by the layout matrix")
    if not any(mu):
        raise ValueError("the zero assignment is not a witness")
    head = mu[: layout.n]
    if not any(head):
        raise ConsistencyError("nonzero null vector vanishes on the integer columns")
    a = tuple(i for i, x in enumerate(head) if x == 1)
    b = tuple(i for i, x in enumerate(head) if x == -1)
    if not a or not b or sum(layout.values[i] for i in a) != sum(layout.values[i] for i in b):
        raise ConsistencyError(f"recovered sets {a} and {b} do not balance")
    return a, b
