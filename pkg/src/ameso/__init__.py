"""
ameso
Minimization over integer lattices for Ameso(C) problems: midpoint-closure
and Ameso constant certificates, the one-dimensional sweep, the recursive
procedure on boxes, and the three-option shipping model.
"""

__version__ = "0.1.0"

from .arp import (
    ArpConfig,
    ArpMemo,
    ArpReport,
    ConditionalProblem,
    conditional_value,
    solve_arp,
    solve_conditional,
)
from .config import DEFAULT_SETTINGS, Settings
from .errors import (
    AmesoError,
    ArgumentError,
    DimensionMismatchError,
    DomainError,
    EvaluationError,
    NotAmesoSetError,
    ResourceLimitError,
    StartOutsideDomainError,
)
from .lattice import BoxDomain, ExplicitSet, IntervalDomain, IntPoint, midpoint_ceil, midpoint_floor
from .models import (
    KnapsackInstance,
    TabulatedObjective,
    example3_objective,
    example5_table,
    example6_objective,
    knapsack_objective,
)
from .oracle import Objective, brute_force_min, certify, is_ameso_set, minimal_C
from .solver1d import Solve1DConfig, SolveReport, solve_1d

__all__ = [
    "AmesoError",
    "ArgumentError",
    "ArpConfig",
    "ArpMemo",
    "ArpReport",
    "BoxDomain",
    "ConditionalProblem",
    "DEFAULT_SETTINGS",
    "DimensionMismatchError",
    "DomainError",
    "EvaluationError",
    "ExplicitSet",
    "IntPoint",
    "IntervalDomain",
    "KnapsackInstance",
    "NotAmesoSetError",
    "Objective",
    "ResourceLimitError",
    "Settings",
    "Solve1DConfig",
    "SolveReport",
    "StartOutsideDomainError",
    "TabulatedObjective",
    "brute_force_min",
    "certify",
    "conditional_value",
    "example3_objective",
    "example5_table",
    "example6_objective",
    "is_ameso_set",
    "knapsack_objective",
    "midpoint_ceil",
    "midpoint_floor",
    "minimal_C",
    "solve_1d",
    "solve_arp",
    "solve_conditional",
]
