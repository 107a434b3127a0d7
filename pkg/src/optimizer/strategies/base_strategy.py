"""
计划策略抽象类
定义统一的计划选择流程：准备 -> 搜索 -> 超时回退 -> 统计
"""

import time
from abc import ABC, abstractmethod

from ...core.log import logger
from ...models.data_models import OptimizerStats, SharingPlan
from ...models.exceptions import PlanSearchTimeout
from ..plan_finder import gwmin, guaranteed_weight
from ..sharon_graph import SharonGraph


class BaseStrategy(ABC):
    """
    计划策略抽象类
    子类只需实现 get_name 与 search，公共的计时、日志与回退逻辑由 select 提供
    """

    def __init__(self, config_manager):
        """
        初始化策略

        Args:
            config_manager: 配置管理器
        """
        self.config_manager = config_manager

    @abstractmethod
    def get_name(self) -> str:
        """
        获取策略名称

        Returns:
            策略名称，如 'optimal'
        """
        pass

    @abstractmethod
    def search(self, graph: SharonGraph, stats: OptimizerStats) -> SharingPlan:
        """
        在冲突图上搜索共享计划

        Args:
            graph: 冲突图（可能已展开）
            stats: 统计信息，子类可补充字段

        Returns:
            共享计划
        """
        pass

    def fallback(self, graph: SharonGraph) -> SharingPlan:
        """搜索超时时退回 GWMIN 计划"""
        plan = gwmin(graph)
        return SharingPlan(plan.candidates, plan.score, True, self.get_name())

    def select(self, graph: SharonGraph, stats: OptimizerStats | None = None) -> tuple[SharingPlan, OptimizerStats]:
        """
        统一的计划选择流程

        Args:
            graph: 冲突图
            stats: 已有的统计信息（如展开前后的规模），为空时新建

        Returns:
            (共享计划, 优化统计)
        """
        stats = stats or OptimizerStats(vertices=len(graph), edges=graph.edge_count)
        stats.strategy = self.get_name()
        stats.guaranteed_weight = guaranteed_weight(graph)
        stats.greedy_score = gwmin(graph).score

        logger.info(
            f"开始 {self.get_name()} 计划搜索: {len(graph)} 个顶点，{graph.edge_count} 条边"
        )
        started = time.perf_counter()
        try:
            plan = self.search(graph, stats)
        except PlanSearchTimeout as e:
            logger.warning(f"{e}，退回 GWMIN 计划")
            plan = self.fallback(graph)
        stats.elapsed_ms = (time.perf_counter() - started) * 1000
        stats.fallback = plan.fallback

        if plan.strategy != self.get_name():
            plan = SharingPlan(plan.candidates, plan.score, plan.fallback, self.get_name())
        logger.info(
            f"{self.get_name()} 计划: {len(plan)} 个候选，得分 {plan.score:g}"
            f"{'（GWMIN 回退）' if plan.fallback else ''}，耗时 {stats.elapsed_ms:.2f}ms"
        )
        return plan, stats
