"""Driver terms over the ``{1, Z, S+, S-}`` single-qubit basis.

``S+ = |0><1|`` and ``S- = |1><0|`` are the eigenmatrices of ``M -> [M, Z]``
with eigenvalues ``+2`` and ``-2``.  A :class:`DriverTerm` names one basis
product (Z on ``y``, S+ on ``v``, S- on ``w``) together with a coefficient;
its Hermitian partner (``v`` and ``w`` swapped, coefficient conjugated) is
always implied.

A term commutes with ``sum_i c_i Z_i`` exactly when
``sum_{i in v} c_i - sum_{i in w} c_i == 0``.

Qubit indices are 0-based internally.  Rendered strings and the term file
format use 1-based indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .model import Constraint, ConstraintSet

__all__ = [
    "DriverHamiltonian",
    "DriverTerm",
    "ExactComplex",
    "HermitianPair",
    "TermError",
    "commutation_defect",
    "commutes_with_all",
    "dump_terms",
    "hermitian_pair_description",
    "parse_terms",
    "term_from_u",
    "u_of",
]


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with rational real and imaginary parts."""

    re: Fraction = Fraction(1)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: ExactComplex | int | Fraction | complex) -> ExactComplex:
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(Fraction(value), Fraction(0))

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re, -self.im)

    def __add__(self, other: ExactComplex) -> ExactComplex:
        other = ExactComplex.coerce(other)
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __mul__(self, other: ExactComplex) -> ExactComplex:
        other = ExactComplex.coerce(other)
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> ExactComplex:
        return ExactComplex(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        imag = {1: "i", -1: "-i"}.get(self.im, f"{self.im}i")
        if not self.re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"

    def to_list(self) -> list[int]:
        return [self.re.numerator, self.re.denominator, self.im.numerator, self.im.denominator]

    @classmethod
    def from_list(cls, raw: Sequence[int]) -> ExactComplex:
        if len(raw) != 4 or any(isinstance(r, bool) or not isinstance(r, int) for r in raw):
            raise TermError(f"coefficient must be four integers, got {raw!r}")
        if raw[1] == 0 or raw[3] == 0:
            raise TermError("zero denominator in coefficient")
        return cls(Fraction(raw[0], raw[1]), Fraction(raw[2], raw[3]))


ONE = ExactComplex()


@dataclass(frozen=True)
class DriverTerm:
    """``coeff * Z^y S+^v S-^w`` plus its Hermitian partner.

    ``v``, ``w`` and ``y`` are pairwise disjoint sets of 0-based qubit
    indices.  Off-diagonal terms are stored in canonical orientation: the
    smallest index of ``v | w`` belongs to ``v``.
    """

    v: frozenset[int]
    w: frozenset[int]
    y: frozenset[int] = frozenset()
    coeff: ExactComplex = field(default=ONE, compare=True)

    def __post_init__(self) -> None:
        v, w, y = frozenset(self.v), frozenset(self.w), frozenset(self.y)
        if v & w or v & y or w & y:
            raise TermError(f"index sets overlap: y={sorted(y)} v={sorted(v)} w={sorted(w)}")
        if any(i < 0 for i in v | w | y):
            raise TermError("qubit indices must be non-negative")
        coeff = ExactComplex.coerce(self.coeff)
        if v | w and min(v | w) in w:
            v, w, coeff = w, v, coeff.conjugate()
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "coeff", coeff)

    @property
    def support(self) -> frozenset[int]:
        return self.v | self.w

    @property
    def weight(self) -> int:
        return len(self.v) + len(self.w) + len(self.y)

    @property
    def is_diagonal(self) -> bool:
        return not self.v and not self.w

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.y)), tuple(sorted(self.v)), tuple(sorted(self.w))

    def max_index(self) -> int:
        return max(self.v | self.w | self.y, default=-1)

    def with_coeff(self, coeff: ExactComplex | int | complex) -> DriverTerm:
        # self.v already holds the canonical orientation, no re-conjugation happens
        return DriverTerm(self.v, self.w, self.y, ExactComplex.coerce(coeff))


def commutation_defect(t: DriverTerm, c: Constraint | Sequence[int]) -> int:
    """``sum_{i in v} c_i - sum_{i in w} c_i``; zero iff the pair commutes with ``c``."""
    coeffs = c.coeffs if isinstance(c, Constraint) else tuple(c)
    if t.max_index() >= len(coeffs):
        raise TermError(f"term touches qubit {t.max_index() + 1} but constraint has {len(coeffs)}")
    return sum(coeffs[i] for i in t.v) - sum(coeffs[i] for i in t.w)


def commutes_with_all(t: DriverTerm, cs: ConstraintSet) -> bool:
    return all(commutation_defect(t, row) == 0 for row in cs.constraints)


def term_from_u(u: Sequence[int], y: Iterable[int] = ()) -> DriverTerm:
    """Term with S+ where ``u_i = 1`` and S- where ``u_i = -1``.

    If the first nonzero entry of ``u`` is ``-1`` the vector is negated, which
    selects the Hermitian partner as the canonical representative.
    """
    if any(ui not in (-1, 0, 1) for ui in u):
        raise TermError(f"u must lie in {{-1, 0, 1}}^n, got {list(u)!r}")
    if not any(u):
        raise TermError("u is all-zero")
    y = frozenset(y)
    v = frozenset(i for i, ui in enumerate(u) if ui == 1)
    w = frozenset(i for i, ui in enumerate(u) if ui == -1)
    if y & (v | w):
        raise TermError("z-dressing overlaps the support of u")
    return DriverTerm(v, w, y)


def u_of(t: DriverTerm, n: int) -> tuple[int, ...]:
    """Inverse of :func:`term_from_u` for canonical terms."""
    if t.max_index() >= n:
        raise TermError(f"term does not fit in {n} qubits")
    return tuple(1 if i in t.v else -1 if i in t.w else 0 for i in range(n))


@dataclass(frozen=True)
class HermitianPair:
    term: str
    partner: str
    coeff: ExactComplex
    partner_coeff: ExactComplex

    def __str__(self) -> str:
        return f"({self.coeff}) {self.term} + ({self.partner_coeff}) {self.partner}"


def _render(y: frozenset[int], plus: frozenset[int], minus: frozenset[int]) -> str:
    parts = [f"Z_{i + 1}" for i in sorted(y)]
    for i in sorted(plus | minus):
        parts.append(f"S+_{i + 1}" if i in plus else f"S-_{i + 1}")
    return " ".join(parts) if parts else "I"


def hermitian_pair_description(t: DriverTerm) -> HermitianPair:
    """Render a term and its conjugate partner, e.g. ``S+_1 S-_2`` / ``S-_1 S+_2``."""
    return HermitianPair(
        term=_render(t.y, t.v, t.w),
        partner=_render(t.y, t.w, t.v),
        coeff=t.coeff,
        partner_coeff=t.coeff.conjugate(),
    )


@dataclass(frozen=True)
class DriverHamiltonian:
    """``H = sum_j (alpha_j T_j + conj(alpha_j) T_j^dagger)`` with merged terms.

    Terms sharing a ``(y, v, w)`` triple are merged by adding coefficients;
    terms whose merged coefficient is zero are dropped.
    """

    n: int
    terms: tuple[DriverTerm, ...]

    def __post_init__(self) -> None:
        merged: dict[tuple, ExactComplex] = {}
        order: list[tuple] = []
        proto: dict[tuple, DriverTerm] = {}
        for t in self.terms:
            if t.max_index() >= self.n:
                raise TermError(f"term {t.key} does not fit in {self.n} qubits")
            if t.key not in merged:
                merged[t.key] = ExactComplex(0, 0)
                order.append(t.key)
                proto[t.key] = t
            merged[t.key] = merged[t.key] + t.coeff
        terms = tuple(proto[k].with_coeff(merged[k]) for k in order if merged[k])
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, n: int, terms: Iterable[DriverTerm]) -> DriverHamiltonian:
        return cls(n, tuple(terms))


def parse_terms(text: str | dict) -> DriverHamiltonian:
    """Parse a term file: ``{"n": .., "terms": [{"plus": [..], "minus": [..], "z": [..], "coeff": [..]}]}``."""
    doc = json.loads(text) if isinstance(text, str) else text
    if not isinstance(doc, dict) or set(doc) - {"n", "terms"} or "terms" not in doc:
        raise TermError("term file must be an object with 'n' and 'terms'")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise TermError(f"invalid n: {n!r}")
    terms = []
    for k, raw in enumerate(doc["terms"]):
        if not isinstance(raw, dict) or set(raw) - {"plus", "minus", "z", "coeff"}:
            raise TermError(f"term {k}: unexpected fields")

        def idx(name: str) -> frozenset[int]:
            values = raw.get(name, [])
            if not isinstance(values, list) or any(
                isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= n for i in values
            ):
                raise TermError(f"term {k}: '{name}' must hold 1-based indices in [1, {n}]")
            if len(set(values)) != len(values):
                raise TermError(f"term {k}: repeated index in '{name}'")
            return frozenset(i - 1 for i in values)

        coeff = ExactComplex.from_list(raw["coeff"]) if "coeff" in raw else ONE
        terms.append(DriverTerm(idx("plus"), idx("minus"), idx("z"), coeff))
    return DriverHamiltonian(n, tuple(terms))


def dump_terms(n: int, terms: Iterable[DriverTerm]) -> dict:
    out = []
    for t in terms:
        entry = {"plus": sorted(i + 1 for i in t.v), "minus": sorted(i + 1 for i in t.w)}
        if t.y:
            entry["z"] = sorted(i + 1 for i in t.y)
        if t.coeff != ONE:
            entry["coeff"] = t.coeff.to_list()
        out.append(entry)
    return {"n": n, "terms": out}
