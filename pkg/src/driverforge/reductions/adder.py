"""The generalized full adder: a 6x7 0-1 gadget enforcing ``2c + s = a + b``.

Assignments take values in ``{-1, 0, 1}`` and a row is satisfied when the
assignment sums to zero over it.  Columns are ordered ``(a, b, x1, x2, x3, c, s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

__all__ = [
    "ADDER_COLUMNS",
    "ADDER_TABLE",
    "AdderIO",
    "Mode",
    "adder_internals",
    "ga_truth_rows",
    "primary",
    "secondary",
]

ADDER_COLUMNS = ("a", "b", "x1", "x2", "x3", "c", "s")

# (a, b) -> (primary (s, c), secondary (s, c) or None)
ADDER_TABLE: dict[tuple[int, int], tuple[tuple[int, int], tuple[int, int] | None]] = {
    (-1, -1): ((0, -1), None),
    (-1, 0): ((-1, 0), (1, -1)),
    (-1, 1): ((0, 0), None),
    (0, -1): ((-1, 0), (1, -1)),
    (0, 0): ((0, 0), None),
    (0, 1): ((1, 0), (-1, 1)),
    (1, -1): ((0, 0), None),
    (1, 0): ((1, 0), (-1, 1)),
    (1, 1): ((0, 1), None),
}


class Mode(str, Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"


@dataclass(frozen=True)
class AdderIO:
    a: int
    b: int
    s: int
    c: int
    mode: Mode = Mode.PRIMARY

    def __post_init__(self) -> None:
        for name in ("a", "b", "s", "c"):
            if getattr(self, name) not in (-1, 0, 1):
                raise ValueError(f"{name} must be in {{-1, 0, 1}}")
        if 2 * self.c + self.s != self.a + self.b:
            raise ValueError(f"2c + s != a + b for {self}")
        prim, sec = ADDER_TABLE[(self.a, self.b)]
        expected = prim if self.mode is Mode.PRIMARY else sec
        if expected != (self.s, self.c):
            raise ValueError(f"({self.s}, {self.c}) is not the {self.mode.value} output for ({self.a}, {self.b})")


def primary(a: int, b: int) -> AdderIO:
    s, c = ADDER_TABLE[(a, b)][0]
    return AdderIO(a, b, s, c, Mode.PRIMARY)


def secondary(a: int, b: int) -> AdderIO | None:
    """The carry-trading alternative, present only when ``a + b`` is odd."""
    sec = ADDER_TABLE[(a, b)][1]
    if sec is None:
        return None
    return AdderIO(a, b, sec[0], sec[1], Mode.SECONDARY)


def adder_internals(c: int, s: int) -> tuple[int, int, int]:
    """Ancilla values ``(x1, x2, x3)`` forced by rows 4-6: ``x1 = x2 = -c``, ``x3 = -s``."""
    return -c, -c, -s


def ga_truth_rows(a_coeff: int, b_coeff: int) -> list[list[int]]:
    """The six gadget rows over ``(a, b, x1, x2, x3, c, s)``.

    Input coefficients are 1 for wires and the relevant bit for integer
    columns; a 0 coefficient makes the gadget ignore that input.
    """
    if a_coeff not in (0, 1) or b_coeff not in (0, 1):
        raise ValueError("input coefficients must be 0 or 1")
    return [
        [a_coeff, b_coeff, 1, 1, 1, 0, 0],
        [0, 0, 1, 0, 1, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
        [0, 0, 1, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 1, 0, 1],
    ]
