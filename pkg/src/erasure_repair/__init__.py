"""Regenerating-code repair over packet-erasure links: tradeoff, reliability,
parameter search and a GF(2^8) network-coding simulator."""

from .core import (
    INFEASIBLE,
    LOSSLESS,
    ChannelModel,
    CodePoint,
    Family,
    ParameterError,
    SystemParams,
    breakpoints,
    cut_feasible,
    mbr_point,
    min_cut_alpha,
    msr_point,
    tradeoff_alpha_star,
    tradeoff_points,
)
from .optimize import Budget, OptResult, RegionMap, optimize_helpers, optimize_twolayer, region_map
from .reliability import (
    HelperScheme,
    RepetitionScheme,
    TwoLayerAllocation,
    p_success_helpers,
    p_success_repetition,
    p_success_twolayer,
    regen_condition,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "ChannelModel",
    "CodePoint",
    "Family",
    "HelperScheme",
    "INFEASIBLE",
    "LOSSLESS",
    "OptResult",
    "ParameterError",
    "RegionMap",
    "RepetitionScheme",
    "SystemParams",
    "TwoLayerAllocation",
    "breakpoints",
    "cut_feasible",
    "mbr_point",
    "min_cut_alpha",
    "msr_point",
    "optimize_helpers",
    "optimize_twolayer",
    "p_success_helpers",
    "p_success_repetition",
    "p_success_twolayer",
    "regen_condition",
    "region_map",
    "tradeoff_alpha_star",
    "tradeoff_points",
]
