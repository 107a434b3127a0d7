"""
GWMIN 贪心策略
"""

from ...models.data_models import OptimizerStats, SharingPlan
from ..plan_finder import gwmin
from ..sharon_graph import SharonGraph
from .base_strategy import BaseStrategy


class GreedyStrategy(BaseStrategy):
    """在未约简的冲突图上直接运行 GWMIN"""

    def get_name(self) -> str:
        return "greedy"

    def search(self, graph: SharonGraph, stats: OptimizerStats) -> SharingPlan:
        return gwmin(graph)
