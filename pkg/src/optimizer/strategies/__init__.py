"""
计划策略模块
包含不共享、贪心、最优与穷举四种计划选择策略
"""

from .base_strategy import BaseStrategy
from .exhaustive_strategy import ExhaustiveStrategy
from .greedy_strategy import GreedyStrategy
from .none_strategy import NoneStrategy
from .optimal_strategy import OptimalStrategy

STRATEGY_CLASSES = {
    "none": NoneStrategy,
    "greedy": GreedyStrategy,
    "optimal": OptimalStrategy,
    "exhaustive": ExhaustiveStrategy,
}

__all__ = [
    "BaseStrategy",
    "NoneStrategy",
    "GreedyStrategy",
    "OptimalStrategy",
    "ExhaustiveStrategy",
    "STRATEGY_CLASSES",
]
