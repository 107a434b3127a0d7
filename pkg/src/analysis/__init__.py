"""
分析模块
包含可共享模式挖掘与代价模型
"""

from .cost_model import CostModel, bvalue, estimate_rates, non_shared_cost, pattern_rate, shared_cost
from .pattern_miner import mine_brute_force, mine_sharable

__all__ = [
    "mine_sharable",
    "mine_brute_force",
    "CostModel",
    "pattern_rate",
    "non_shared_cost",
    "shared_cost",
    "bvalue",
    "estimate_rates",
]
