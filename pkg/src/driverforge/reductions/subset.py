"""Mappings between subset-sum problems and driver-existence questions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..algebra import DriverHamiltonian, DriverTerm, ExactComplex, term_from_u, u_of
from ..model import ConstraintSet, DomainTag, InstanceError

__all__ = [
    "Assignment",
    "GivenKGadget",
    "SubsetInstance",
    "append_given_k_gadget",
    "ess_witness_from_term",
    "ess_witness_to_term",
    "parse_subset_instance",
    "reduce_2om_to_nontrivial",
    "reduce_ess_to_constraint",
    "reduce_ss_to_2om",
    "projector_pair_driver",
    "ss_witness_from_2om",
    "ss_witness_to_2om",
    "transition_driver",
]


@dataclass(frozen=True)
class SubsetInstance:
    values: tuple[int, ...]
    target: int | None = None

    def __post_init__(self) -> None:
        values = tuple(self.values)
        if not values:
            raise InstanceError("empty value list")
        for s in values:
            if isinstance(s, bool) or not isinstance(s, int) or s <= 0:
                raise InstanceError(f"values must be positive integers, got {s!r}")
        if self.target is not None and (isinstance(self.target, bool) or not isinstance(self.target, int)):
            raise InstanceError(f"target must be an integer, got {self.target!r}")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.values)

    def to_dict(self) -> dict:
        doc: dict = {"values": list(self.values)}
        if self.target is not None:
            doc["target"] = self.target
        return doc


def parse_subset_instance(text: str | dict) -> SubsetInstance:
    doc = json.loads(text) if isinstance(text, str) else text
    if not isinstance(doc, dict) or "values" not in doc or set(doc) - {"values", "target"}:
        raise InstanceError("subset file must be an object with 'values' and optional 'target'")
    if not isinstance(doc["values"], list):
        raise InstanceError("'values' must be a list")
    return SubsetInstance(tuple(doc["values"]), doc.get("target"))


@dataclass(frozen=True)
class Assignment:
    """Signed selection ``u`` in ``{-1, 0, 1}^n``: +1 puts ``s_i`` in A, -1 in B."""

    u: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(x not in (-1, 0, 1) for x in self.u):
            raise ValueError(f"assignment entries must be in {{-1, 0, 1}}: {self.u!r}")
        object.__setattr__(self, "u", tuple(self.u))

    @classmethod
    def from_sets(cls, n: int, a: Sequence[int], b: Sequence[int]) -> Assignment:
        if set(a) & set(b):
            raise ValueError("A and B must be disjoint")
        return cls(tuple(1 if i in a else -1 if i in b else 0 for i in range(n)))

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.u) if x == 1)

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.u) if x == -1)

    def energy(self, values: Sequence[int]) -> int:
        """``sum_i u_i s_i``."""
        return sum(x * s for x, s in zip(self.u, values))


def reduce_ess_to_constraint(inst: SubsetInstance) -> ConstraintSet:
    """The single row ``c = S``; its commuting off-diagonal terms are ESS witnesses.

    The stored value is 0; commutation does not depend on it.
    """
    return ConstraintSet.from_rows([inst.values], [0], DomainTag.INTEGER)


def ess_witness_to_term(n: int, a: Sequence[int], b: Sequence[int]) -> DriverTerm:
    return term_from_u(Assignment.from_sets(n, a, b).u)


def ess_witness_from_term(t: DriverTerm, values: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Read A from the S+ positions and B from the S- positions."""
    u = Assignment(u_of(t, len(values)))
    if u.energy(values) != 0:
        raise ValueError("term does not commute with the subset constraint")
    return u.a, u.b


def reduce_ss_to_2om(inst: SubsetInstance) -> SubsetInstance:
    """``(S, T) -> (S + [T], T)``; the appended element has index ``n``."""
    if inst.target is None or inst.target <= 0:
        raise InstanceError(f"target must be a positive integer, got {inst.target!r}")
    return SubsetInstance(inst.values + (inst.target,), inst.target)


def ss_witness_to_2om(n: int, subset: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """A SUBSET SUM witness ``S1`` gives the pair ``(S1, {T})``."""
    return tuple(sorted(subset)), (n,)


def ss_witness_from_2om(
    n: int, pair: tuple[Sequence[int], Sequence[int]]
) -> tuple[int, ...]:
    """Back-map a 2-OR-MORE witness on ``S + [T]`` to a SUBSET SUM witness on ``S``.

    The appended index ``n`` can only appear as the singleton ``{T}``,
    because every other value is positive; the other set avoids it.
    """
    s1, s2 = (tuple(sorted(s)) for s in pair)
    if s1 == s2:
        raise ValueError("2-OR-MORE witnesses must differ")
    for s in (s1, s2):
        if n not in s:
            return s
    raise ValueError(f"both sets use the appended index {n}")


def reduce_2om_to_nontrivial(inst: SubsetInstance) -> tuple[ConstraintSet, int]:
    """Row ``c = S`` with target ``c . x = T`` and its spin eigenvalue ``sum(S) - 2T``."""
    if inst.target is None:
        raise InstanceError("2-OR-MORE SUBSET SUM needs a target")
    cs = ConstraintSet.from_rows([inst.values], [inst.target], DomainTag.INTEGER)
    return cs, sum(inst.values) - 2 * inst.target


def transition_driver(n: int, s1: Sequence[int], s2: Sequence[int]) -> DriverTerm:
    """Single basis term sending the indicator state of ``s1`` to that of ``s2``.

    Positions in both sets (or neither) are left alone, which keeps the
    term commuting whenever ``sum(s1) == sum(s2)``.
    """
    a, b = set(s1), set(s2)
    if a == b:
        raise ValueError("sets must differ")
    # S+ clears a bit of |s1>, S- sets one
    return DriverTerm(frozenset(a - b), frozenset(b - a))


def projector_pair_driver(n: int, s1: Sequence[int], s2: Sequence[int]) -> DriverHamiltonian:
    """``|p><q| + |q><p|`` for the indicator states of ``s1`` and ``s2``, in the term basis.

    Shared 1s and shared 0s become projectors ``(1 - Z)/2`` and ``(1 + Z)/2``,
    which expand into Z-dressed copies of :func:`transition_driver`.
    """
    base = transition_driver(n, s1, s2)
    a, b = set(s1), set(s2)
    ones = sorted(a & b)
    zeros = sorted(set(range(n)) - a - b)
    fixed = ones + zeros
    terms = []
    scale = Fraction(1, 2 ** len(fixed))
    for pick in product((0, 1), repeat=len(fixed)):
        sign = 1
        y = []
        for i, take in zip(fixed, pick):
            if take:
                y.append(i)
                if i in a:
                    sign = -sign
        terms.append(DriverTerm(base.v, base.w, frozenset(y), ExactComplex(sign * scale)))
    return DriverHamiltonian(n, tuple(terms))


@dataclass(frozen=True)
class GivenKGadget:
    cs: ConstraintSet
    weights: tuple[int, ...]
    terms: tuple[DriverTerm, ...]
    n_original: int

    @property
    def values(self) -> tuple[int, ...]:
        return self.cs.values


def _row_slack(coeffs: Sequence[int], value: int) -> int:
    """Bound on ``|c . x - b|`` over binary ``x``, at least ``||c||_1``."""
    pos = sum(c for c in coeffs if c > 0)
    neg = sum(c for c in coeffs if c < 0)
    return max(pos - neg, abs(pos - value), abs(neg - value))


def append_given_k_gadget(
    cs: ConstraintSet,
    k: int,
    values: Sequence[int] | None = None,
    weights: Sequence[int] | None = None,
) -> GivenKGadget:
    """Append ``k`` ancilla pairs whose only feasible patterns are ``10`` and ``01``.

    Pair ``j`` (variables ``n + 2j``, ``n + 2j + 1``, 0-based) gets weight
    ``a_j`` in every row and each target grows by ``sum(a)``.  The weights
    must satisfy ``a_j > R + sum(a_1..a_{j-1})``, where ``R`` bounds
    ``|c_i . x - b_i|`` over all rows (``||c_i||_1`` whenever ``b_i`` is
    attainable); by default the smallest such weights are used.  Returned
    terms are the pair hops ``S+_{n+2j} S-_{n+2j+1}``.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if values is not None:
        cs = cs.with_values(values)
    slack = max(_row_slack(row.coeffs, row.value) for row in cs.constraints)
    if weights is None:
        chosen: list[int] = []
        for _ in range(k):
            chosen.append(slack + sum(chosen) + 1)
    else:
        chosen = list(weights)
        if len(chosen) != k:
            raise ValueError(f"expected {k} weights, got {len(chosen)}")
        for j, a in enumerate(chosen):
            if a <= slack + sum(chosen[:j]):
                raise ValueError(
                    f"weight a_{j + 1}={a} must exceed {slack + sum(chosen[:j])}"
                )
    n = cs.n
    rows = []
    for row in cs.constraints:
        rows.append(list(row.coeffs) + [a for a in chosen for _ in range(2)])
    new_values = [row.value + sum(chosen) for row in cs.constraints]
    new_cs = ConstraintSet.from_rows(rows, new_values, DomainTag.INTEGER)
    terms = tuple(
        DriverTerm(frozenset({n + 2 * j}), frozenset({n + 2 * j + 1})) for j in range(k)
    )
    return GivenKGadget(new_cs, tuple(chosen), terms, n)
