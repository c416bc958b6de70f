"""Constructive mappings between subset-sum problems and driver existence."""

from .adder import ADDER_TABLE, AdderIO, Mode, ga_truth_rows, primary, secondary
from .binary_lp import (
    REDUCED_FIXTURE_MATRIX,
    ConsistencyError,
    GadgetLayout,
    backmap_solution,
    build_binary_lp,
    forward_propagate,
    reduced_fixture,
)
from .oracles import oracle_2_or_more, oracle_equal_subset_sum, oracle_subset_sum
from .subset import (
    Assignment,
    GivenKGadget,
    SubsetInstance,
    append_given_k_gadget,
    parse_subset_instance,
    reduce_2om_to_nontrivial,
    reduce_ess_to_constraint,
    reduce_ss_to_2om,
)

__all__ = [
    "ADDER_TABLE",
    "AdderIO",
    "Assignment",
    "ConsistencyError",
    "GadgetLayout",
    "GivenKGadget",
    "Mode",
    "REDUCED_FIXTURE_MATRIX",
    "SubsetInstance",
    "append_given_k_gadget",
    "backmap_solution",
    "build_binary_lp",
    "forward_propagate",
    "ga_truth_rows",
    "oracle_2_or_more",
    "oracle_equal_subset_sum",
    "oracle_subset_sum",
    "parse_subset_instance",
    "primary",
    "reduce_2om_to_nontrivial",
    "reduce_ess_to_constraint",
    "reduce_ss_to_2om",
    "reduced_fixture",
    "secondary",
]
