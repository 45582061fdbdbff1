"""Extremality of quantum channels in CPT, UCP and UCPT, and under tensor products."""

__version__ = "0.1.0"

from .matcore import DEFAULT_TOL, DimensionError, InputError, TolerancePolicy
from .channel import (
    ChannelClass,
    KrausSet,
    apply,
    classify,
    dual,
    mix,
    random_channel,
    random_unitary,
    random_unitary_mixture,
    tensor,
    unitary_channel,
)
from .choi import ChoiMatrix, choi_of, choi_rank, minimal_kraus, partial_trace_out
from .extremal import (
    ExtremalityReport,
    Verdict,
    analyze,
    is_extreme_cpt,
    is_extreme_ucp,
    is_extreme_ucpt,
    tensor_nonextremality_check,
    ucpt_rank_bound,
)
from .catalog import builtin, epsilon3, epsilon4
