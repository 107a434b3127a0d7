"""
计数存储模块
为一个模式片段在每个分组内维护按 START 事件划分的前缀计数，过期的 START 项从队头淘汰
"""

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import count

from ..models.data_models import EventType, ExecutionCounters, SequencePattern


@dataclass
class StartEntry:
    """一个 START 事件及其各前缀长度的匹配计数"""

    id: int
    time: int
    counts: list[int] = field(default_factory=list)


@dataclass
class BatchOutput:
    """一个时间戳批次处理后的新 START 项与完成增量 (项, 新增完整匹配数)"""

    created: list[StartEntry] = field(default_factory=list)
    completions: list[tuple[StartEntry, int]] = field(default_factory=list)


class CountStore:
    """模式片段的计数存储

    同一批次（相同时间戳）的事件只读取批次之前的计数，保证时间严格递增。
    """

    def __init__(
        self,
        owner: str,
        pattern: SequencePattern,
        within: int,
        counters: ExecutionCounters | None = None,
    ):
        self.owner = owner
        self.pattern = pattern
        self.within = within
        self.counters = counters or ExecutionCounters()
        self.positions = {event_type: j for j, event_type in enumerate(pattern)}
        self.entries: dict[str | None, deque[StartEntry]] = {}
        self._ids = count()

    def __len__(self) -> int:
        return sum(len(entries) for entries in self.entries.values())

    def live_entries(self, group: str | None) -> Iterator[StartEntry]:
        return iter(self.entries.get(group, ()))

    def expire(self, group: str | None, now: int):
        """淘汰不可能再与 now 处于同一窗口的 START 项"""
        entries = self.entries.get(group)
        if not entries:
            return
        cutoff = now - self.within
        while entries and entries[0].time <= cutoff:
            entries.popleft()
        if not entries:
            del self.entries[group]

    def expire_all(self, now: int):
        for group in list(self.entries):
            self.expire(group, now)

    def process_batch(
        self, group: str | None, time: int, type_counts: dict[EventType, int]
    ) -> BatchOutput:
        """处理一个分组在某时间戳上的全部事件

        Args:
            group: 分组值
            time: 批次时间戳
            type_counts: 批次内各事件类型的事件数

        Returns:
            本批次新建的 START 项与完成增量
        """
        output = BatchOutput()
        last = len(self.pattern) - 1
        relevant = sorted(
            (self.positions[t], n) for t, n in type_counts.items() if t in self.positions
        )
        if not relevant:
            return output

        self.expire(group, time)
        entries = self.entries.get(group)
        if entries:
            # 位置从后往前更新，读取到的 counts[j-1] 仍是批次前的值
            for j, n in reversed(relevant):
                if j == 0:
                    continue
                self.counters.record_updates(self.owner, self.pattern[j], n * len(entries))
                for entry in entries:
                    gained = n * entry.counts[j - 1]
                    if not gained:
                        continue
                    if j == last:
                        output.completions.append((entry, gained))
                    entry.counts[j] += gained

        starts = relevant[0][1] if relevant[0][0] == 0 else 0
        if starts:
            entries = self.entries.setdefault(group, deque())
            for _ in range(starts):
                entry = StartEntry(next(self._ids), time, [1] + [0] * last)
                entries.append(entry)
                output.created.append(entry)
                if last == 0:
                    output.completions.append((entry, 1))
            self.counters.record_updates(self.owner, self.pattern[0], starts)
        return output
