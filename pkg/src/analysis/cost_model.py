"""
代价模型模块
估计事件类型速率，计算共享候选的非共享代价、共享代价与收益值 (BValue)

速率单位是"每个窗口内的期望事件数"。
"""

from collections import Counter
from collections.abc import Iterable

from ..core.log import logger
from ..core.workload import decompose
from ..models.data_models import (
    EventType,
    PatternSplit,
    Query,
    RateTable,
    SequencePattern,
    SharingCandidate,
    Stream,
    WindowSpec,
    Workload,
)
from ..models.exceptions import (
    EmptyStreamError,
    NotASubpatternError,
    QueryMissingPatternError,
)


def pattern_rate(pattern: SequencePattern, rates: RateTable) -> float:
    """模式内各事件类型速率之和，空模式为 0"""
    return sum(rates.rate(event_type) for event_type in pattern)


def _subscriber_splits(
    candidate: SharingCandidate, workload: Workload
) -> list[tuple[Query, PatternSplit]]:
    splits = []
    for query_id in candidate.queries:
        query = workload.query(query_id)
        if query is None:
            raise QueryMissingPatternError(f"工作负载中不存在查询 {query_id}")
        try:
            splits.append((query, decompose(query, candidate.pattern)))
        except NotASubpatternError as e:
            raise QueryMissingPatternError(str(e)) from e
    return splits


def non_shared_cost(
    candidate: SharingCandidate, workload: Workload, rates: RateTable
) -> float:
    """各查询独立计算时的代价：Σ Rate(E1) · Rate(P)"""
    return sum(
        rates.rate(query.pattern[0]) * pattern_rate(query.pattern, rates)
        for query, _ in _subscriber_splits(candidate, workload)
    )


def computation_cost(split: PatternSplit, rates: RateTable) -> float:
    """单个查询计算前缀与后缀计数的代价，缺失的部分记为 0"""
    cost = 0.0
    if split.prefix:
        cost += rates.rate(split.prefix[0]) * pattern_rate(split.prefix, rates)
    if split.suffix:
        cost += rates.rate(split.suffix[0]) * pattern_rate(split.suffix, rates)
    return cost


def combination_cost(split: PatternSplit, rates: RateTable) -> float:
    """单个查询合并前缀、共享部分与后缀计数的代价

    缺失前缀或后缀时去掉对应的因子；两者都缺失时不需要合并。
    """
    if not split.prefix and not split.suffix:
        return 0.0
    cost = rates.rate(split.shared[0])
    if split.prefix:
        cost *= rates.rate(split.prefix[0])
    if split.suffix:
        cost *= rates.rate(split.suffix[0])
    return cost


def shared_cost(
    candidate: SharingCandidate, workload: Workload, rates: RateTable
) -> float:
    """共享计算的代价：共享模式计算一次，再加上每个查询的计算与合并代价"""
    pattern = candidate.pattern
    cost = rates.rate(pattern[0]) * pattern_rate(pattern, rates)
    for _, split in _subscriber_splits(candidate, workload):
        cost += computation_cost(split, rates) + combination_cost(split, rates)
    return cost


def bvalue(candidate: SharingCandidate, workload: Workload, rates: RateTable) -> float:
    """收益值 = 非共享代价 - 共享代价，大于 0 时候选才值得共享"""
    return non_shared_cost(candidate, workload, rates) - shared_cost(
        candidate, workload, rates
    )


def estimate_rates(
    stream: Stream,
    window: WindowSpec,
    alphabet: Iterable[EventType] = (),
) -> RateTable:
    """根据事件流估计每个窗口内各类型的期望事件数

    alphabet 中未在流中出现的类型速率为 0。
    """
    if not len(stream) or stream.duration <= 0:
        raise EmptyStreamError("事件流为空，无法估计速率")

    counts = Counter(event.type for event in stream)
    rates = {event_type: 0.0 for event_type in alphabet}
    for event_type, count in counts.items():
        rates[event_type] = count / stream.duration * window.within

    logger.debug(f"速率估计完成: {len(rates)} 种类型，时长 {stream.duration}s")
    return RateTable(rates, window)


class CostModel:
    """绑定工作负载与速率表的代价计算器"""

    def __init__(self, workload: Workload, rates: RateTable):
        self.workload = workload
        self.rates = rates

    def score(self, candidate: SharingCandidate) -> SharingCandidate:
        """返回带有重新计算 BValue 的候选"""
        return candidate.with_bvalue(bvalue(candidate, self.workload, self.rates))

    def score_all(self, candidates: Iterable[SharingCandidate]) -> list[SharingCandidate]:
        scored = [self.score(candidate) for candidate in candidates]
        beneficial = sum(1 for candidate in scored if candidate.bvalue > 0)
        logger.info(f"BValue 计算完成: {len(scored)} 个候选，其中 {beneficial} 个有收益")
        return scored

    def reweigh(self, option: SharingCandidate, original: SharingCandidate) -> float:
        """冲突展开时为缩减后的查询集重新计算 BValue"""
        return bvalue(option, self.workload, self.rates)
