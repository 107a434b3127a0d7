"""
穷举策略
"""

from ...models.data_models import OptimizerStats, SharingPlan
from ..plan_finder import exhaustive_optimal
from ..sharon_graph import SharonGraph
from .base_strategy import BaseStrategy


class ExhaustiveStrategy(BaseStrategy):
    """枚举全部有效子集，顶点数受 exhaustive_max_vertices 限制"""

    def get_name(self) -> str:
        return "exhaustive"

    def search(self, graph: SharonGraph, stats: OptimizerStats) -> SharingPlan:
        return exhaustive_optimal(graph, self.config_manager.get_exhaustive_max_vertices())
