"""
数据模型定义
包含事件、序列模式、查询、工作负载、共享候选、共享计划以及执行结果等数据结构
"""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field, replace

from .exceptions import (
    ConfigError,
    DuplicateEventTypeError,
    DuplicateQueryError,
    HeterogeneousWindowError,
    InvalidCandidateError,
    InvalidWindowError,
    StreamOrderError,
    UnknownEventTypeError,
    WorkloadError,
)

# 事件类型就是字母表中的一个非空标识符
EventType = str


@dataclass(frozen=True)
class Event:
    """带时间戳的类型化事件"""

    time: int
    type: EventType
    group: str | None = None

    def __post_init__(self):
        if self.time < 0:
            raise ValueError(f"事件时间必须为非负整数: {self.time}")

    def __str__(self) -> str:
        suffix = f"[{self.group}]" if self.group is not None else ""
        return f"{self.type.lower()}@{self.time}{suffix}"


@dataclass(frozen=True, order=True)
class SequencePattern:
    """事件序列模式 (E1 ... El)，按类型名字典序比较"""

    types: tuple[EventType, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(self.types))

    @classmethod
    def of(cls, *types: EventType) -> "SequencePattern":
        return cls(tuple(types))

    @property
    def length(self) -> int:
        return len(self.types)

    def __len__(self) -> int:
        return len(self.types)

    def __iter__(self) -> Iterator[EventType]:
        return iter(self.types)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return SequencePattern(self.types[item])
        return self.types[item]

    def __add__(self, other: "SequencePattern") -> "SequencePattern":
        return SequencePattern(self.types + other.types)

    def __bool__(self) -> bool:
        return bool(self.types)

    def has_repeated_types(self) -> bool:
        return len(set(self.types)) != len(self.types)

    def index_of(self, sub: "SequencePattern") -> int | None:
        """返回 sub 作为连续子模式出现的起始下标，不存在返回 None"""
        n, m = len(self.types), len(sub.types)
        if m == 0 or m > n:
            return None
        for start in range(n - m + 1):
            if self.types[start : start + m] == sub.types:
                return start
        return None

    def contains(self, sub: "SequencePattern") -> bool:
        return self.index_of(sub) is not None

    def shares_type_with(self, other: "SequencePattern") -> bool:
        return not set(self.types).isdisjoint(other.types)

    def __str__(self) -> str:
        return "(" + ",".join(self.types) + ")"


@dataclass(frozen=True)
class WindowSpec:
    """滑动窗口 [k*slide, k*slide + within)，k 从 0 开始"""

    within: int
    slide: int

    def __post_init__(self):
        if self.slide < 1 or self.within < self.slide:
            raise InvalidWindowError(
                f"窗口参数需满足 within >= slide >= 1，当前 within={self.within}, slide={self.slide}"
            )

    def start_of(self, k: int) -> int:
        return k * self.slide

    def end_of(self, k: int) -> int:
        """窗口右端（开区间）"""
        return k * self.slide + self.within

    def windows_of(self, time: int) -> range:
        """包含时间点 time 的全部窗口下标"""
        return self.windows_containing(time, time)

    def windows_containing(self, start: int, end: int) -> range:
        """同时包含 start 与 end 的窗口下标（start <= end）"""
        lo = max(0, (end - self.within) // self.slide + 1)
        hi = start // self.slide
        return range(lo, hi + 1) if hi >= lo else range(0)

    def last_window(self, time: int) -> int:
        """最后一个起点不晚于 time 的窗口"""
        return time // self.slide


@dataclass(frozen=True)
class Query:
    """COUNT(*) 事件序列聚合查询"""

    id: str
    pattern: SequencePattern
    window: WindowSpec
    group_by: str | None = None

    def __post_init__(self):
        if not self.id:
            raise WorkloadError("查询 id 不能为空")
        if len(self.pattern) < 1:
            raise WorkloadError(f"查询 {self.id} 的模式长度必须 >= 1")
        if self.pattern.has_repeated_types():
            raise DuplicateEventTypeError(
                f"查询 {self.id} 的模式 {self.pattern} 中存在重复的事件类型"
            )


@dataclass(frozen=True)
class Workload:
    """查询工作负载，所有查询共享同一窗口与分组属性"""

    queries: tuple[Query, ...]
    type_alphabet: frozenset[EventType] = frozenset()

    def __post_init__(self):
        queries = tuple(self.queries)
        object.__setattr__(self, "queries", queries)
        if not queries:
            raise WorkloadError("工作负载中没有任何查询")

        seen = set()
        for query in queries:
            if query.id in seen:
                raise DuplicateQueryError(f"查询 id 重复: {query.id}")
            seen.add(query.id)

        first = queries[0]
        for query in queries[1:]:
            if query.window != first.window or query.group_by != first.group_by:
                raise HeterogeneousWindowError(
                    f"查询 {query.id} 的窗口/分组与 {first.id} 不一致"
                )

        alphabet = set(self.type_alphabet)
        for query in queries:
            alphabet.update(query.pattern.types)
        object.__setattr__(self, "type_alphabet", frozenset(alphabet))

    @property
    def window(self) -> WindowSpec:
        return self.queries[0].window

    @property
    def group_by(self) -> str | None:
        return self.queries[0].group_by

    @property
    def query_ids(self) -> list[str]:
        return [query.id for query in self.queries]

    def query(self, query_id: str) -> Query | None:
        for query in self.queries:
            if query.id == query_id:
                return query
        return None

    def __iter__(self) -> Iterator[Query]:
        return iter(self.queries)

    def __len__(self) -> int:
        return len(self.queries)


@dataclass(frozen=True)
class PatternSplit:
    """共享模式在查询中的前缀、共享部分与后缀"""

    prefix: SequencePattern
    shared: SequencePattern
    suffix: SequencePattern

    @property
    def start(self) -> int:
        """共享部分在查询模式中的起始下标（从 0 开始）"""
        return len(self.prefix)

    def concat(self) -> SequencePattern:
        return self.prefix + self.shared + self.suffix


@dataclass(frozen=True)
class RateTable:
    """每个事件类型在一个窗口内的期望事件数"""

    rates: dict[EventType, float]
    window: WindowSpec

    def __post_init__(self):
        for event_type, rate in self.rates.items():
            if rate < 0:
                raise ValueError(f"事件类型 {event_type} 的速率不能为负: {rate}")

    def rate(self, event_type: EventType) -> float:
        try:
            return self.rates[event_type]
        except KeyError:
            raise UnknownEventTypeError(f"速率表中没有事件类型 {event_type}") from None

    def scaled(self, factor: float) -> "RateTable":
        return RateTable(
            {event_type: rate * factor for event_type, rate in self.rates.items()},
            self.window,
        )

    def with_overrides(self, overrides: dict[EventType, float]) -> "RateTable":
        merged = dict(self.rates)
        merged.update(overrides)
        return RateTable(merged, self.window)


@dataclass(frozen=True, order=True)
class SharingCandidate:
    """共享候选 (p, Q_p)，规范顺序为（模式字典序, 查询集字典序）"""

    pattern: SequencePattern
    queries: tuple[str, ...]
    bvalue: float = field(default=0.0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "queries", tuple(sorted(set(self.queries))))
        if len(self.pattern) <= 1:
            raise InvalidCandidateError(f"共享模式长度必须 > 1: {self.pattern}")
        if len(self.queries) <= 1:
            raise InvalidCandidateError(
                f"共享候选 {self.pattern} 至少需要两个查询，当前 {list(self.queries)}"
            )

    def __hash__(self) -> int:
        return hash((self.pattern, self.queries))

    @property
    def key(self) -> tuple[SequencePattern, tuple[str, ...]]:
        return self.pattern, self.queries

    def with_bvalue(self, bvalue: float) -> "SharingCandidate":
        return replace(self, bvalue=bvalue)

    def with_queries(self, queries: Iterable[str]) -> "SharingCandidate":
        return replace(self, queries=tuple(queries))

    @property
    def label(self) -> str:
        return f"{self.pattern}|{','.join(self.queries)}"

    def __str__(self) -> str:
        return f"{self.label}|{self.bvalue:g}"


@dataclass(frozen=True)
class SharingPlan:
    """共享计划：互不冲突的候选集合，得分为 BValue 之和"""

    candidates: tuple[SharingCandidate, ...] = ()
    score: float = 0.0
    fallback: bool = False
    strategy: str = ""

    @classmethod
    def of(
        cls,
        candidates: Iterable[SharingCandidate],
        fallback: bool = False,
        strategy: str = "",
    ) -> "SharingPlan":
        ordered = tuple(sorted(candidates))
        return cls(
            ordered,
            sum(candidate.bvalue for candidate in ordered),
            fallback,
            strategy,
        )

    def __len__(self) -> int:
        return len(self.candidates)

    def __iter__(self) -> Iterator[SharingCandidate]:
        return iter(self.candidates)

    def __contains__(self, candidate: SharingCandidate) -> bool:
        return candidate in self.candidates

    @property
    def is_empty(self) -> bool:
        return not self.candidates

    def candidates_for(self, query_id: str) -> list[SharingCandidate]:
        return [c for c in self.candidates if query_id in c.queries]


@dataclass(frozen=True)
class Stream:
    """按时间非降序排列的事件流"""

    events: tuple[Event, ...] = ()
    duration: int = field(default=0, compare=False)

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for index in range(1, len(events)):
            if events[index].time < events[index - 1].time:
                raise StreamOrderError(
                    f"事件 {events[index]} 早于前一个事件 {events[index - 1]}"
                )
        if self.duration == 0 and events:
            object.__setattr__(
                self, "duration", events[-1].time - events[0].time + 1
            )

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    @property
    def last_time(self) -> int | None:
        return self.events[-1].time if self.events else None


@dataclass
class WindowResults:
    """每个查询、每个分组、每个窗口的最终计数"""

    window: WindowSpec
    query_ids: list[str] = field(default_factory=list)
    groups: set[str | None] = field(default_factory=set)
    windows: set[int] = field(default_factory=set)
    counts: dict[tuple[str, str | None, int], int] = field(default_factory=dict)
    finalized: set[int] = field(default_factory=set)

    def add(self, query_id: str, group: str | None, k: int, delta: int):
        if k in self.finalized:
            raise RuntimeError(f"窗口 {k} 已经封存，不能再更新")
        if delta:
            key = (query_id, group, k)
            self.counts[key] = self.counts.get(key, 0) + delta

    def get(self, query_id: str, group: str | None, k: int) -> int:
        return self.counts.get((query_id, group, k), 0)

    def finalize(self, k: int):
        self.finalized.add(k)
        self.windows.add(k)

    def total(self) -> int:
        return sum(self.counts.values())

    def nonzero(self) -> dict[tuple[str, str | None, int], int]:
        return {key: value for key, value in self.counts.items() if value}

    def rows(self) -> Iterator[tuple[str, str, int, int]]:
        """按（查询顺序, 分组, 窗口）输出 (query, group, window_start, count)"""
        ordered_groups = sorted(self.groups, key=lambda g: "" if g is None else g)
        for query_id in self.query_ids:
            for group in ordered_groups:
                for k in sorted(self.windows):
                    yield (
                        query_id,
                        "" if group is None else group,
                        self.window.start_of(k),
                        self.get(query_id, group, k),
                    )

    def __eq__(self, other) -> bool:
        if not isinstance(other, WindowResults):
            return NotImplemented
        return self.nonzero() == other.nonzero()


@dataclass
class ExecutionCounters:
    """执行器确定性操作计数，用于基准对比"""

    count_updates: int = 0
    live_entries_peak: int = 0
    combinations: int = 0
    # {(所属者, 事件类型): 更新次数}，所属者为查询 id 或共享候选标签
    updates_by_owner_type: dict[tuple[str, EventType], int] = field(
        default_factory=dict
    )

    def record_updates(self, owner: str, event_type: EventType, amount: int):
        if amount:
            self.count_updates += amount
            key = (owner, event_type)
            self.updates_by_owner_type[key] = (
                self.updates_by_owner_type.get(key, 0) + amount
            )

    def updates_for_types(self, types: Iterable[EventType]) -> int:
        """由给定事件类型触发的更新次数（跨所有所属者）"""
        wanted = set(types)
        return sum(
            amount
            for (_, event_type), amount in self.updates_by_owner_type.items()
            if event_type in wanted
        )

    def as_dict(self) -> dict[str, int]:
        return {
            "count_updates": self.count_updates,
            "live_entries_peak": self.live_entries_peak,
            "combinations": self.combinations,
        }


@dataclass
class OptimizerStats:
    """优化器剪枝与搜索空间统计"""

    strategy: str = ""
    vertices: int = 0
    edges: int = 0
    expanded_vertices: int = 0
    expanded_edges: int = 0
    guaranteed_weight: float = 0.0
    pruned: int = 0
    conflict_free: int = 0
    reduced_vertices: int = 0
    reduced_edges: int = 0
    lattice_size: int = 0
    lattice_eliminated: int = 0
    eliminated_pct: float = 0.0
    valid_plans: int = 0
    invalid_plans: int = 0
    valid_pct: float = 0.0
    invalid_pct: float = 0.0
    greedy_score: float = 0.0
    elapsed_ms: float = 0.0
    fallback: bool = False


@dataclass
class BenchRow:
    """基准测试中单次试验的一行结果"""

    approach: str
    queries: int
    pattern_len: int
    events_per_window: float
    trial: int
    wall_latency_ms: float
    throughput_eps: float
    count_updates: int
    shared_pattern_updates: int
    live_entries_peak: int
    combinations: int
    plan_score: float
    pruned: int = 0


@dataclass
class SharableSet:
    """可共享模式集合：模式 -> 包含该模式的查询 id 集合"""

    entries: dict[SequencePattern, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = dict(sorted(self.entries.items()))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[SequencePattern]:
        return iter(self.entries)

    def __contains__(self, pattern: SequencePattern) -> bool:
        return pattern in self.entries

    def queries_of(self, pattern: SequencePattern) -> frozenset[str]:
        return self.entries.get(pattern, frozenset())

    def items(self):
        return self.entries.items()

    def candidates(self) -> list[SharingCandidate]:
        """按规范顺序生成尚未计算 BValue 的共享候选"""
        return sorted(
            SharingCandidate(pattern, tuple(queries))
            for pattern, queries in self.entries.items()
        )


@dataclass(frozen=True)
class GeneratorConfig:
    """合成事件流生成参数"""

    type_alphabet: tuple[EventType, ...]
    rate: float
    duration: int
    groups: int = 0
    seed: int = 0
    type_weights: tuple[float, ...] | None = None
    arrival: str = "uniform"  # uniform / poisson
    type_draw: str = "balanced"  # balanced / multinomial

    def __post_init__(self):
        object.__setattr__(self, "type_alphabet", tuple(self.type_alphabet))
        if self.type_weights is not None:
            object.__setattr__(self, "type_weights", tuple(self.type_weights))
        if not self.type_alphabet:
            raise ConfigError("事件类型字母表不能为空")
        if self.rate <= 0:
            raise ConfigError(f"事件速率必须为正: {self.rate}")
        if self.duration <= 0:
            raise ConfigError(f"时长必须为正: {self.duration}")
        if self.groups < 0:
            raise ConfigError(f"分组数不能为负: {self.groups}")
        if self.type_weights is not None:
            if len(self.type_weights) != len(self.type_alphabet):
                raise ConfigError("type_weights 的长度必须与字母表一致")
            if any(w < 0 for w in self.type_weights) or sum(self.type_weights) <= 0:
                raise ConfigError("type_weights 必须非负且总和为正")
        if self.arrival not in ("uniform", "poisson"):
            raise ConfigError(f"未知的到达方式: {self.arrival}")
        if self.type_draw not in ("balanced", "multinomial"):
            raise ConfigError(f"未知的类型分配方式: {self.type_draw}")

    def probabilities(self) -> list[float]:
        weights = self.type_weights or (1.0,) * len(self.type_alphabet)
        total = sum(weights)
        return [w / total for w in weights]
