"""Commuting driver Hamiltonians and feasibility-preserving mixers for linear constraints."""

from .algebra import (
    DriverHamiltonian,
    DriverTerm,
    ExactComplex,
    commutation_defect,
    commutes_with_all,
    hermitian_pair_description,
    term_from_u,
)
from .feasibility import (
    build_transition_graph,
    connects_entire_space,
    enumerate_feasible,
    is_nontrivial,
)
from .model import Constraint, ConstraintSet, DomainTag, InstanceError, parse_instance, spin_value_of
from .search import find_k_local_drivers, find_two_local_by_columns
from .verify import exact_commutator_is_zero, has_offdiagonal_term, transitions_of

__version__ = "0.1.0"

__all__ = [
    "Constraint",
    "ConstraintSet",
    "DomainTag",
    "DriverHamiltonian",
    "DriverTerm",
    "ExactComplex",
    "InstanceError",
    "build_transition_graph",
    "commutation_defect",
    "commutes_with_all",
    "connects_entire_space",
    "enumerate_feasible",
    "exact_commutator_is_zero",
    "find_k_local_drivers",
    "find_two_local_by_columns",
    "has_offdiagonal_term",
    "hermitian_pair_description",
    "is_nontrivial",
    "parse_instance",
    "spin_value_of",
    "term_from_u",
    "transitions_of",
]
