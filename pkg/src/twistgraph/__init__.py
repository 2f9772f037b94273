"""Replica negativity and Renyi entropy of multi-particle qubit states as graph partition functions."""

from .closedform import (
    coefficient_A,
    log_negativity_k1,
    multi_group_negativity,
    multi_group_renyi,
    negativity_polynomial,
    renyi_exp,
)
from .exactmath import ScaleError
from .graphs import partition_function_fast, partition_function_raw
from .poly3 import Polynomial3
from .ratios import RegionRatios

__version__ = "0.1.0"

__all__ = [
    "Polynomial3",
    "RegionRatios",
    "ScaleError",
    "coefficient_A",
    "log_negativity_k1",
    "multi_group_negativity",
    "multi_group_renyi",
    "negativity_polynomial",
    "partition_function_fast",
    "partition_function_raw",
    "renyi_exp",
]
