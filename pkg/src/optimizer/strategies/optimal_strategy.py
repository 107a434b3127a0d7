"""
最优计划策略
先以保证权重约简冲突图，再逐层搜索有效计划格
"""

from ...models.data_models import OptimizerStats, SharingPlan
from ..plan_finder import PlanFinder, lattice_statistics, reduce_graph
from ..sharon_graph import SharonGraph
from .base_strategy import BaseStrategy


class OptimalStrategy(BaseStrategy):
    """约简 + 计划格搜索，超出时间限制时由基类回退到 GWMIN"""

    def get_name(self) -> str:
        return "optimal"

    def search(self, graph: SharonGraph, stats: OptimizerStats) -> SharingPlan:
        reduction = reduce_graph(graph, stats.guaranteed_weight)
        stats.conflict_free = len(reduction.conflict_free)
        stats.pruned = len(reduction.pruned)
        stats.reduced_vertices = len(reduction.reduced)
        stats.reduced_edges = reduction.reduced.edge_count

        finder = PlanFinder(self.config_manager.get_time_limit())
        outcome = finder.search(reduction.reduced, reduction.conflict_free)

        for key, value in lattice_statistics(
            len(graph), len(reduction.reduced), outcome.visited
        ).items():
            setattr(stats, key, value)
        return outcome.plan
