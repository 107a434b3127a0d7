"""
通用工具函数模块
SharonPipeline 整合挖掘、代价估计、建图、优化与执行的完整流程
"""

from ..analysis.cost_model import CostModel, estimate_rates
from ..analysis.pattern_miner import mine_sharable
from ..core.config import ConfigManager
from ..core.log import logger
from ..executor.runtime import Executor
from ..models.data_models import (
    EventType,
    ExecutionCounters,
    OptimizerStats,
    RateTable,
    SharableSet,
    SharingPlan,
    Stream,
    WindowResults,
    Workload,
)
from ..models.exceptions import EmptyStreamError, UnknownEventTypeError
from ..optimizer.optimizer import Optimizer
from ..optimizer.sharon_graph import SharonGraph, build_graph


class SharonPipeline:
    """共享执行流水线 - 整合静态优化与在线执行"""

    def __init__(self, config_manager: ConfigManager | None = None):
        self.config_manager = config_manager or ConfigManager()

    def mine(self, workload: Workload) -> SharableSet:
        return mine_sharable(workload)

    def rates(
        self,
        workload: Workload,
        stream: Stream | None = None,
        overrides: dict[EventType, float] | None = None,
    ) -> RateTable:
        """由事件流估计速率，再用覆盖文件中的值替换；工作负载中的每个类型都必须有速率"""
        alphabet = sorted(workload.type_alphabet)
        if stream is not None and len(stream):
            rates = estimate_rates(stream, workload.window, alphabet)
        elif overrides:
            rates = RateTable({}, workload.window)
        else:
            raise EmptyStreamError("没有可用于估计速率的事件流或速率文件")
        if overrides:
            rates = rates.with_overrides(overrides)

        missing = [t for t in alphabet if t not in rates.rates]
        if missing:
            raise UnknownEventTypeError(f"以下事件类型缺少速率: {', '.join(missing)}")
        return rates

    def build_graph(self, workload: Workload, rates: RateTable) -> tuple[SharonGraph, CostModel]:
        cost_model = CostModel(workload, rates)
        candidates = cost_model.score_all(self.mine(workload).candidates())
        return build_graph(candidates), cost_model

    def optimize(
        self, graph: SharonGraph, cost_model: CostModel | None = None
    ) -> tuple[SharingPlan, OptimizerStats]:
        """cost_model 为空时（注入的冲突图）按比例缩放选项的 BValue"""
        reweigh = cost_model.reweigh if cost_model is not None else None
        return Optimizer(self.config_manager, reweigh).optimize(graph)

    def plan(
        self, workload: Workload, rates: RateTable
    ) -> tuple[SharingPlan, OptimizerStats, SharonGraph]:
        graph, cost_model = self.build_graph(workload, rates)
        plan, stats = self.optimize(graph, cost_model)
        return plan, stats, graph

    def execute(
        self, workload: Workload, plan: SharingPlan | None, stream: Stream
    ) -> tuple[WindowResults, ExecutionCounters]:
        executor = Executor(workload, plan)
        results = executor.run(stream)
        return results, executor.counters

    def run(
        self, workload: Workload, stream: Stream, share: bool = True
    ) -> tuple[WindowResults, ExecutionCounters, SharingPlan]:
        """完整流程：估计速率 -> 计算计划 -> 执行"""
        plan = SharingPlan()
        if share and len(stream):
            plan, _, _ = self.plan(workload, self.rates(workload, stream))
        logger.info(f"按 {len(plan)} 个共享候选执行 {len(workload)} 个查询")
        results, counters = self.execute(workload, plan, stream)
        return results, counters, plan
