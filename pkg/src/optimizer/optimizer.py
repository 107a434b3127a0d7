"""
优化器模块
串联冲突消解与计划策略，输出共享计划及剪枝统计
"""

from ..core.config import ConfigManager
from ..core.log import logger
from ..models.data_models import OptimizerStats, SharingPlan
from .conflict_resolution import ConflictResolver, Reweigh
from .sharon_graph import SharonGraph
from .strategies import STRATEGY_CLASSES


class Optimizer:
    """静态优化器"""

    def __init__(self, config_manager: ConfigManager | None = None, reweigh: Reweigh | None = None):
        self.config_manager = config_manager or ConfigManager()
        self.reweigh = reweigh

    def prepare_graph(self, graph: SharonGraph, stats: OptimizerStats) -> SharonGraph:
        """按配置决定是否在搜索前展开冲突候选"""
        if not self.config_manager.get_resolve_conflicts():
            return graph
        resolver = ConflictResolver(
            self.reweigh,
            self.config_manager.get_max_options_per_candidate(),
            self.config_manager.get_max_generated_options(),
        )
        expanded = resolver.expand_graph(graph)
        stats.expanded_vertices = len(expanded)
        stats.expanded_edges = expanded.edge_count
        return expanded

    def optimize(self, graph: SharonGraph) -> tuple[SharingPlan, OptimizerStats]:
        stats = OptimizerStats(vertices=len(graph), edges=graph.edge_count)
        strategy_name = self.config_manager.get_strategy()
        if strategy_name != "none":
            graph = self.prepare_graph(graph, stats)
        strategy = STRATEGY_CLASSES[strategy_name](self.config_manager)
        return strategy.select(graph, stats)


def optimize(
    graph: SharonGraph,
    strategy: str = "optimal",
    resolve_conflicts: bool = False,
    time_limit: float = 10.0,
    reweigh: Reweigh | None = None,
) -> SharingPlan:
    """按给定选项运行优化流程，返回共享计划"""
    config_manager = ConfigManager(
        {
            "strategy": strategy,
            "resolve_conflicts": resolve_conflicts,
            "time_limit": time_limit,
        }
    )
    plan, stats = Optimizer(config_manager, reweigh).optimize(graph)
    logger.debug(f"优化统计: {stats}")
    return plan
