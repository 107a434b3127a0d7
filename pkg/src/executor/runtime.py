"""
运行时执行模块
在线执行工作负载：非共享方式下每个查询独立计数；共享方式下共享片段只计算一次，
各查询沿片段链从左到右合并计数，全程不构造事件序列
"""

from collections import Counter, defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import groupby

from ..core.log import logger
from ..models.data_models import (
    Event,
    ExecutionCounters,
    SharingPlan,
    Stream,
    WindowResults,
    Workload,
)
from ..models.exceptions import InvalidPlanError, StreamOrderError
from ..optimizer.sharon_graph import plan_conflicts
from .chains import SegmentChain, build_chains
from .count_store import BatchOutput, CountStore


def combine_counts(pairs: Iterable[tuple[int, int]]) -> int:
    """合并计数：Σ 左侧合并计数 × 片段完成数"""
    return sum(left * completed for left, completed in pairs)


def validate_plan(workload: Workload, plan: SharingPlan):
    """检查计划只引用存在的查询、模式确实出现在查询中且候选两两不冲突"""
    for candidate in plan:
        for query_id in candidate.queries:
            query = workload.query(query_id)
            if query is None:
                raise InvalidPlanError(f"计划中的候选 {candidate.label} 引用了不存在的查询 {query_id}")
            if not query.pattern.contains(candidate.pattern):
                raise InvalidPlanError(
                    f"计划中的候选 {candidate.label} 的模式不在查询 {query_id} 中"
                )
    candidates = list(plan)
    for i, first in enumerate(candidates):
        for second in candidates[i + 1 :]:
            if plan_conflicts(first, second):
                raise InvalidPlanError(f"计划中的候选 {first.label} 与 {second.label} 存在共享冲突")


@dataclass
class _ChainState:
    """一个查询在一个分组内的合并状态

    left[i]: 片段 0..i-1 合并后的计数，按整体匹配的起始时间索引
    snapshots[i]: 片段 i 的 START 项 id -> (START 时间, 创建时 left[i] 的快照)
    """

    left: list[dict[int, int]] = field(default_factory=list)
    snapshots: list[dict[int, tuple[int, dict[int, int]]]] = field(default_factory=list)

    def expire(self, cutoff: int):
        for left in self.left:
            for start in [o for o in left if o <= cutoff]:
                del left[start]
        for snapshots in self.snapshots:
            for entry_id in list(snapshots):
                if snapshots[entry_id][0] > cutoff:
                    break
                del snapshots[entry_id]


class Executor:
    """在线执行器，一个实例按事件顺序单线程处理一条事件流"""

    def __init__(self, workload: Workload, plan: SharingPlan | None = None):
        self.workload = workload
        self.plan = plan or SharingPlan()
        validate_plan(workload, self.plan)

        self.window = workload.window
        self.grouped = workload.group_by is not None
        self.counters = ExecutionCounters()

        self.chains: dict[str, SegmentChain] = build_chains(list(workload), self.plan)
        self.shared_stores: dict[tuple, CountStore] = {}
        self.chain_stores: dict[str, list[CountStore]] = {}
        for query_id, chain in self.chains.items():
            stores = []
            for segment in chain:
                if segment.is_shared:
                    key = segment.shared.key
                    if key not in self.shared_stores:
                        self.shared_stores[key] = CountStore(
                            segment.shared.label, segment.pattern, self.window.within, self.counters
                        )
                    stores.append(self.shared_stores[key])
                else:
                    owner = query_id if len(chain) == 1 else f"{query_id}@{segment.start}"
                    stores.append(
                        CountStore(owner, segment.pattern, self.window.within, self.counters)
                    )
            self.chain_stores[query_id] = stores

        self.stores: list[CountStore] = list(self.shared_stores.values()) + [
            store
            for stores in self.chain_stores.values()
            for store in stores
            if store not in self.shared_stores.values()
        ]
        self._states: dict[tuple[str, str | None], _ChainState] = {}
        logger.debug(
            f"执行器初始化: {len(self.chains)} 个查询，共享计数存储 {len(self.shared_stores)} 个，"
            f"计数存储总数 {len(self.stores)} 个"
        )

    def _state(self, query_id: str, group: str | None) -> _ChainState:
        key = (query_id, group)
        if key not in self._states:
            size = len(self.chains[query_id])
            self._states[key] = _ChainState(
                [{} for _ in range(size)], [{} for _ in range(size)]
            )
        return self._states[key]

    def _combine(
        self,
        query_id: str,
        group: str | None,
        time: int,
        outputs: dict[int, BatchOutput],
        results: WindowResults,
    ):
        stores = self.chain_stores[query_id]
        state = self._state(query_id, group)
        cutoff = time - self.window.within
        last = len(stores) - 1

        # 新 START 项只能接在批次之前完成的左侧匹配之后
        for i in range(1, len(stores)):
            created = outputs[id(stores[i])].created
            if not created:
                continue
            base = {o: c for o, c in state.left[i].items() if o > cutoff}
            if not base:
                continue
            for entry in created:
                state.snapshots[i][entry.id] = (entry.time, base)

        for i, store in enumerate(stores):
            for entry, delta in outputs[id(store)].completions:
                if i == 0:
                    snapshot = {entry.time: 1}
                else:
                    record = state.snapshots[i].get(entry.id)
                    if record is None:
                        continue
                    snapshot = record[1]
                for start, left_count in snapshot.items():
                    if start <= cutoff:
                        continue
                    amount = delta * left_count
                    if i:
                        self.counters.combinations += 1
                    if i < last:
                        state.left[i + 1][start] = state.left[i + 1].get(start, 0) + amount
                    else:
                        for k in self.window.windows_containing(start, time):
                            results.add(query_id, group, k, amount)

    def _process_batch(
        self, group: str | None, time: int, type_counts: dict[str, int], results: WindowResults
    ):
        outputs = {id(store): store.process_batch(group, time, type_counts) for store in self.stores}
        for query_id in self.chains:
            self._combine(query_id, group, time, outputs, results)

    def _sweep(self, time: int):
        cutoff = time - self.window.within
        for store in self.stores:
            store.expire_all(time)
        for state in self._states.values():
            state.expire(cutoff)

    def run(self, stream: Stream | Iterable[Event]) -> WindowResults:
        """处理整条事件流并返回各查询、分组、窗口的最终计数"""
        results = WindowResults(self.window, self.workload.query_ids)
        next_window = 0
        previous: int | None = None

        for time, batch in groupby(stream, key=lambda event: event.time):
            if previous is not None and time < previous:
                raise StreamOrderError(f"事件时间 {time} 早于前一个时间 {previous}")
            previous = time

            # 窗口右端不晚于当前时间的窗口不会再有新的匹配
            finalized = False
            while self.window.end_of(next_window) <= time:
                results.finalize(next_window)
                next_window += 1
                finalized = True
            if finalized:
                self._sweep(time)

            by_group: dict[str | None, Counter] = defaultdict(Counter)
            for event in batch:
                by_group[event.group if self.grouped else None][event.type] += 1
            for group, type_counts in by_group.items():
                results.groups.add(group)
                self._process_batch(group, time, type_counts, results)

            live = sum(len(store) for store in self.stores)
            self.counters.live_entries_peak = max(self.counters.live_entries_peak, live)

        if previous is not None:
            for k in range(next_window, self.window.last_window(previous) + 1):
                results.finalize(k)

        logger.info(
            f"执行完成: 计数更新 {self.counters.count_updates} 次，"
            f"峰值 START 项 {self.counters.live_entries_peak} 个，合并 {self.counters.combinations} 次"
        )
        return results

    def instrumentation(self) -> dict[str, int]:
        return self.counters.as_dict()


def run_non_shared(workload: Workload, stream: Stream) -> WindowResults:
    return Executor(workload).run(stream)


def run_shared(workload: Workload, plan: SharingPlan, stream: Stream) -> WindowResults:
    return Executor(workload, plan).run(stream)


def instrumentation(executor: Executor) -> dict[str, int]:
    return executor.instrumentation()
