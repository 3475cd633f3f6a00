"""Generalized weights of sum-rank metric codes: computation, constructions, checks."""

from .codes import (
    MsrdParams,
    Shape,
    SumRankCode,
    ambient_weight_sequence,
    code_weight,
    is_mds,
    is_msrd,
    max_srk,
    min_distance,
    srk_weight,
)
from .constructions import (
    CodeChain,
    extended_rs,
    gabidulin_chain,
    lrs_chain,
    msrd_chain,
    msrd_chain_combined,
    pad_rows,
    realize_hamming,
    realize_rank_mn,
    realize_rank_tall,
    realize_relative,
    realize_sumrank,
    rs_chain,
    rs_code,
)
from .errors import BudgetExceeded, ConstructionError, FormatError
from .galois import FieldSpec, field_of_order, fq_make
from .weights import (
    chain_condition,
    check_sequence,
    generalized_weights,
    greedy_weights,
    msrd_weight_sequence,
    relative_generalized_weights,
    relative_greedy_weights,
    verify_bounds,
)

__version__ = "0.1.0"
