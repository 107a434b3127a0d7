"""
不共享策略
"""

from ...models.data_models import OptimizerStats, SharingPlan
from ..sharon_graph import SharonGraph
from .base_strategy import BaseStrategy


class NoneStrategy(BaseStrategy):
    """返回空计划，所有查询独立执行"""

    def get_name(self) -> str:
        return "none"

    def search(self, graph: SharonGraph, stats: OptimizerStats) -> SharingPlan:
        return SharingPlan.of([], strategy=self.get_name())
