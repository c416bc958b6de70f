"""Exact verification of driver Hamiltonians against constraint operators.

Constraint operators are diagonal, so ``[H, C] = 0`` reduces to: along every
basis transition a term induces, the source and target states have the same
eigenvalue.  Nothing here builds a ``2^n x 2^n`` matrix; see
:mod:`driverforge.dense` for the dense oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .algebra import DriverHamiltonian, DriverTerm
from .caps import CapExceeded, check_state_cap
from .model import ConstraintSet, bitstring

__all__ = [
    "BasisTransition",
    "CapExceeded",
    "Counterexample",
    "exact_commutator_is_zero",
    "find_counterexample",
    "has_offdiagonal_term",
    "transitions_of",
]


@dataclass(frozen=True)
class BasisTransition:
    """``|target><source|`` component of a term, with its Z-dressing sign."""

    source: int
    target: int
    sign: int


def _masks(t: DriverTerm, n: int) -> tuple[int, int, int]:
    def mask(idx: frozenset[int]) -> int:
        return sum(1 << (n - 1 - i) for i in idx)

    return mask(t.v), mask(t.w), mask(t.y)


def _free_positions(t: DriverTerm, n: int) -> list[int]:
    fixed = t.v | t.w
    return [n - 1 - i for i in range(n) if i not in fixed]


def transitions_of(t: DriverTerm, n: int, cap: int | None = None) -> Iterator[BasisTransition]:
    """Transitions of ``Z^y S+^v S-^w``, in increasing source order.

    ``S+ = |0><1|`` consumes a 1, so sources carry 1 on ``v`` and 0 on ``w``;
    targets have ``v`` cleared and ``w`` set.  There are
    ``2^(n - |v| - |w|)`` of them.
    """
    check_state_cap(n, cap)
    if t.max_index() >= n:
        raise ValueError(f"term does not fit in {n} qubits")
    vmask, wmask, ymask = _masks(t, n)
    free = sorted(_free_positions(t, n))
    for k in range(1 << len(free)):
        src = vmask
        for b, pos in enumerate(free):
            if (k >> b) & 1:
                src |= 1 << pos
        tgt = (src & ~vmask) | wmask
        sign = -1 if bin(src & ymask).count("1") % 2 else 1
        yield BasisTransition(src, tgt, sign)


@dataclass(frozen=True)
class Counterexample:
    term_index: int
    row: int
    source: str
    target: str
    source_eigenvalue: int
    target_eigenvalue: int

    def to_dict(self) -> dict:
        return {
            "term": self.term_index + 1,
            "row": self.row + 1,
            "source": self.source,
            "target": self.target,
            "source_eigenvalue": self.source_eigenvalue,
            "target_eigenvalue": self.target_eigenvalue,
        }


def _eigenvalues(coeffs: tuple[int, ...], states: np.ndarray, n: int) -> np.ndarray:
    bound = sum(abs(c) for c in coeffs)
    dtype = np.int64 if bound < 2**62 else object
    out = np.zeros(states.shape, dtype=dtype)
    for i, c in enumerate(coeffs):
        if c:
            bits = ((states >> (n - 1 - i)) & 1).astype(dtype)
            out += c * (1 - 2 * bits)
    return out


def _sources(t: DriverTerm, n: int) -> np.ndarray:
    vmask, _, _ = _masks(t, n)
    free = _free_positions(t, n)
    ks = np.arange(1 << len(free), dtype=np.int64)
    src = np.full(ks.shape, vmask, dtype=np.int64)
    for b, pos in enumerate(sorted(free)):
        src |= ((ks >> b) & 1) << pos
    return src


def find_counterexample(
    H: DriverHamiltonian, cs: ConstraintSet, cap: int | None = None
) -> Counterexample | None:
    """First transition whose endpoints differ in some row's eigenvalue."""
    if H.n != cs.n:
        raise ValueError(f"Hamiltonian on {H.n} qubits, constraints on {cs.n}")
    n = cs.n
    check_state_cap(n, cap)
    for j, t in enumerate(H.terms):
        if t.is_diagonal:
            continue
        vmask, wmask, _ = _masks(t, n)
        src = _sources(t, n)
        tgt = (src & ~vmask) | wmask
        for r, row in enumerate(cs.constraints):
            ls = _eigenvalues(row.coeffs, src, n)
            lt = _eigenvalues(row.coeffs, tgt, n)
            bad = np.nonzero(ls != lt)[0]
            if bad.size:
                k = int(bad[0])
                return Counterexample(
                    j, r, bitstring(int(src[k]), n), bitstring(int(tgt[k]), n), int(ls[k]), int(lt[k])
                )
    return None


def exact_commutator_is_zero(
    H: DriverHamiltonian, cs: ConstraintSet, cap: int | None = None
) -> bool:
    """``[H, C_i] == 0`` for every row, checked transition by transition."""
    return find_counterexample(H, cs, cap) is None


def has_offdiagonal_term(H: DriverHamiltonian) -> bool:
    """Per-qubit partial-trace test on the merged term list.

    ``Tr_k(H S+_k)`` picks out the components carrying ``S-`` on qubit ``k``
    (from a term or from its partner), and distinct merged terms are
    linearly independent, so the trace is nonzero iff some surviving term
    has ``k`` in ``v | w``.
    """
    for k in range(H.n):
        if any(k in t.v or k in t.w for t in H.terms if t.coeff):
            return True
    return False
