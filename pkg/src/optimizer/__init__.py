"""
静态优化模块
包含冲突图、冲突消解、计划搜索与优化流程
"""

from .conflict_resolution import (
    ConflictResolver,
    OptionSet,
    expand_candidate,
    expand_graph,
    option_bound,
    proportional_reweigh,
    resolve_pair,
)
from .optimizer import Optimizer, optimize
from .plan_finder import (
    PlanFinder,
    ReductionResult,
    exhaustive_optimal,
    find_optimal_plan,
    guaranteed_weight,
    gwmin,
    next_level,
    reduce_graph,
)
from .sharon_graph import SharonGraph, build_graph, conflicts, plan_conflicts, score_max

__all__ = [
    "SharonGraph",
    "build_graph",
    "conflicts",
    "plan_conflicts",
    "score_max",
    "ConflictResolver",
    "OptionSet",
    "expand_candidate",
    "expand_graph",
    "resolve_pair",
    "option_bound",
    "proportional_reweigh",
    "PlanFinder",
    "ReductionResult",
    "guaranteed_weight",
    "gwmin",
    "reduce_graph",
    "next_level",
    "find_optimal_plan",
    "exhaustive_optimal",
    "Optimizer",
    "optimize",
]
