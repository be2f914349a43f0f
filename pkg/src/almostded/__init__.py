"""Valuation-map models of ideals in almost Dedekind domains over countable ordinal spaces."""

from .colength import ColengthModel, ExtNat, colength, colength_stage
from .groups import (
    StratTuple,
    atom_decompose,
    exactness_report,
    glue,
    kernel_of_restriction,
    order_mismatch_demo,
    sigma_r_report,
    subgroup_basis,
    subgroup_member,
    unglue,
)
from .ideals import (
    IdealMap,
    ideal_cap,
    ideal_equal,
    ideal_inv,
    ideal_leq,
    ideal_mul,
    ideal_sum,
    is_continuous,
    radical_factor,
    radical_recompose,
)
from .model import (
    DomainModel,
    ValidationError,
    mi_check,
    model_custom,
    model_sharp,
    model_sp,
    sp_rank,
    strata,
)
from .ordinal import Ordinal, ord_parse, ord_print
from .sets import Cell, DefinableSet, Space, cb_rank, derived

__all__ = [name for name in dir() if not name.startswith("_")]
