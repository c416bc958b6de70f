"""Linear constraint instances and the instance file format.

A constraint is stored the way it is usually written down, ``c . x = b`` over
binary ``x``.  The embedded operator ``sum_i c_i Z_i`` acts on a basis state
``|x>`` with eigenvalue ``sum_i c_i (1 - 2 x_i)``; that value is always derived
from ``(c, b)`` and never stored.

Basis states are bitmasks with ``x_1`` as the most significant bit, so that
``format(x, f"0{n}b")`` reads left to right as ``x_1 ... x_n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Sequence

__all__ = [
    "Constraint",
    "ConstraintSet",
    "DomainTag",
    "InstanceError",
    "SpinValue",
    "bit",
    "bitstring",
    "dump_instance",
    "parse_instance",
    "spin_eigenvalue",
    "spin_value_of",
]


class InstanceError(ValueError):
    """Raised for malformed or inconsistent constraint instances."""


class DomainTag(str, Enum):
    INTEGER = "integer"
    BINARY01 = "binary01"
    PM01 = "pm01"

    def admits(self, coeffs: Iterable[int]) -> bool:
        if self is DomainTag.INTEGER:
            return True
        allowed = {0, 1} if self is DomainTag.BINARY01 else {-1, 0, 1}
        return all(c in allowed for c in coeffs)


def _tightest_tag(rows: Iterable[Sequence[int]]) -> DomainTag:
    rows = list(rows)
    for tag in (DomainTag.BINARY01, DomainTag.PM01):
        if all(tag.admits(r) for r in rows):
            return tag
    return DomainTag.INTEGER


@dataclass(frozen=True)
class Constraint:
    """One row ``coeffs . x = value``."""

    coeffs: tuple[int, ...]
    value: int

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        for c in (*coeffs, self.value):
            if isinstance(c, bool) or not isinstance(c, int):
                raise InstanceError(f"non-integer entry {c!r} in constraint")
        if not any(coeffs):
            raise InstanceError("all-zero constraint row")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def evaluate(self, x: int) -> int:
        """``c . x`` for the bitmask state ``x``."""
        n = len(self.coeffs)
        return sum(c for i, c in enumerate(self.coeffs) if (x >> (n - 1 - i)) & 1)

    @property
    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.coeffs)


@dataclass(frozen=True)
class ConstraintSet:
    """The ``m x n`` coefficient matrix with one target value per row."""

    n: int
    constraints: tuple[Constraint, ...]
    domain_tag: DomainTag = DomainTag.INTEGER

    def __post_init__(self) -> None:
        constraints = tuple(self.constraints)
        if not constraints:
            raise InstanceError("empty constraint list")
        if self.n < 1:
            raise InstanceError(f"n must be positive, got {self.n}")
        for k, row in enumerate(constraints):
            if row.n != self.n:
                raise InstanceError(
                    f"constraint {k} has {row.n} coefficients, expected {self.n}"
                )
        tag = DomainTag(self.domain_tag)
        if not all(tag.admits(row.coeffs) for row in constraints):
            raise InstanceError(f"coefficients fall outside domain {tag.value!r}")
        object.__setattr__(self, "constraints", constraints)
        object.__setattr__(self, "domain_tag", tag)

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[int]],
        values: Sequence[int] | None = None,
        domain_tag: DomainTag | str | None = None,
    ) -> ConstraintSet:
        """Build from a coefficient matrix; values default to zero."""
        rows = [tuple(r) for r in rows]
        if not rows:
            raise InstanceError("empty constraint list")
        if values is None:
            values = [0] * len(rows)
        if len(values) != len(rows):
            raise InstanceError("one value per row required")
        tag = _tightest_tag(rows) if domain_tag is None else DomainTag(domain_tag)
        return cls(
            n=len(rows[0]),
            constraints=tuple(Constraint(r, v) for r, v in zip(rows, values)),
            domain_tag=tag,
        )

    @property
    def m(self) -> int:
        return len(self.constraints)

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(row.coeffs for row in self.constraints)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(row.value for row in self.constraints)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row.coeffs[j] for row in self.constraints) for j in range(self.n)]

    def with_values(self, values: Sequence[int]) -> ConstraintSet:
        return ConstraintSet.from_rows(self.matrix, values, self.domain_tag)

    def duplicate_rows(self) -> list[tuple[int, int]]:
        """Index pairs ``(i, j)``, ``i < j``, of rows with identical coefficients."""
        seen: dict[tuple[int, ...], int] = {}
        dups = []
        for j, row in enumerate(self.constraints):
            if row.coeffs in seen:
                dups.append((seen[row.coeffs], j))
            else:
                seen[row.coeffs] = j
        return dups

    def is_satisfied_by(self, x: int) -> bool:
        return all(row.evaluate(x) == row.value for row in self.constraints)


@dataclass(frozen=True)
class SpinValue:
    eigenvalue: int


def spin_value_of(cs: ConstraintSet, row: int, b: int) -> SpinValue:
    """Eigenvalue of the row's embedded operator on states with ``c . x = b``.

    Equal to ``sum(c) - 2 b``.
    """
    if not 0 <= row < cs.m:
        raise IndexError(f"row {row} out of range for {cs.m} constraints")
    return SpinValue(sum(cs.constraints[row].coeffs) - 2 * b)


def bit(x: int, i: int, n: int) -> int:
    """Value of ``x_{i+1}`` (0-based ``i``) in the bitmask ``x``."""
    return (x >> (n - 1 - i)) & 1


def bitstring(x: int, n: int) -> str:
    return format(x, f"0{n}b")


def spin_eigenvalue(coeffs: Sequence[int], x: int) -> int:
    """``sum_i c_i (1 - 2 x_i)`` computed state-wise."""
    n = len(coeffs)
    return sum(c * (1 - 2 * bit(x, i, n)) for i, c in enumerate(coeffs))


_INSTANCE_KEYS = {"n", "domain", "constraints"}
_ROW_KEYS = {"coeffs", "value"}


def _require_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError(f"{what} must be an integer, got {value!r}")
    return value


def parse_instance(text: str | dict) -> ConstraintSet:
    """Parse and validate an instance document.

    ``text`` is the JSON content (or an already decoded mapping).  When the
    ``domain`` field is absent the tightest variant consistent with the
    coefficients is inferred.
    """
    if isinstance(text, dict):
        doc = text
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("instance must be a JSON object")
    unknown = set(doc) - _INSTANCE_KEYS
    if unknown:
        raise InstanceError(f"unknown fields: {sorted(unknown)}")
    if "n" not in doc or "constraints" not in doc:
        raise InstanceError("instance requires 'n' and 'constraints'")
    n = _require_int(doc["n"], "n")
    raw_rows = doc["constraints"]
    if not isinstance(raw_rows, list) or not raw_rows:
        raise InstanceError("empty constraint list")
    rows, values = [], []
    for k, raw in enumerate(raw_rows):
        if not isinstance(raw, dict):
            raise InstanceError(f"constraint {k} must be an object")
        extra = set(raw) - _ROW_KEYS
        if extra or not _ROW_KEYS <= set(raw):
            raise InstanceError(f"constraint {k} must have exactly 'coeffs' and 'value'")
        coeffs = raw["coeffs"]
        if not isinstance(coeffs, list):
            raise InstanceError(f"constraint {k}: 'coeffs' must be a list")
        if len(coeffs) != n:
            raise InstanceError(
                f"dimension mismatch: constraint {k} has {len(coeffs)} coefficients, n={n}"
            )
        rows.append([_require_int(c, f"constraint {k} coefficient") for c in coeffs])
        values.append(_require_int(raw["value"], f"constraint {k} value"))
    if "domain" in doc:
        try:
            tag = DomainTag(doc["domain"])
        except ValueError as exc:
            raise InstanceError(f"unknown domain {doc['domain']!r}") from exc
    else:
        tag = None
    return ConstraintSet.from_rows(rows, values, tag)


def dump_instance(cs: ConstraintSet) -> str:
    doc = {
        "n": cs.n,
        "domain": cs.domain_tag.value,
        "constraints": [
            {"coeffs": list(row.coeffs), "value": row.value} for row in cs.constraints
        ],
    }
    return json.dumps(doc)
