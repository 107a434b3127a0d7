"""
冲突消解模块
把每个候选展开为一组查询子集选项，通过放弃部分查询来消除与邻居的共享冲突
"""

from collections import deque
from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from ..core.log import logger
from ..models.data_models import SequencePattern, SharingCandidate
from ..models.exceptions import NotInConflictError
from .sharon_graph import SharonGraph, conflict_queries, plan_conflicts

# (选项, 原候选) -> 选项的 BValue
Reweigh = Callable[[SharingCandidate, SharingCandidate], float]


def proportional_reweigh(option: SharingCandidate, original: SharingCandidate) -> float:
    """按保留的查询比例缩放原候选的 BValue，用于没有速率信息的注入图"""
    return original.bvalue * len(option.queries) / len(original.queries)


def option_bound(degree: int, query_count: int) -> int:
    """单个候选可展开出的选项数量上界"""
    return sum(comb(degree, i) for i in range(degree + 1)) * sum(
        comb(query_count, j) for j in range(query_count)
    )


def _nonempty_subsets(items: set[str]):
    ordered = sorted(items)
    for size in range(1, len(ordered) + 1):
        for subset in combinations(ordered, size):
            yield frozenset(subset)


@dataclass
class OptionSet:
    """同一模式下的候选选项集合，原候选总在其中"""

    pattern: SequencePattern
    options: list[SharingCandidate] = field(default_factory=list)
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.options)

    def __iter__(self):
        return iter(self.options)

    def __contains__(self, candidate: SharingCandidate) -> bool:
        return candidate in self.options

    def query_sets(self) -> set[frozenset[str]]:
        return {frozenset(option.queries) for option in self.options}


class ConflictResolver:
    """候选展开器"""

    def __init__(
        self,
        reweigh: Reweigh | None = None,
        max_options: int = 64,
        max_generated: int = 512,
    ):
        self.reweigh = reweigh or proportional_reweigh
        self.max_options = max_options
        self.max_generated = max_generated

    def expand_candidate(self, graph: SharonGraph, candidate: SharingCandidate) -> OptionSet:
        """广度优先地为候选生成消解冲突的查询子集选项"""
        neighbors = graph.neighbors(candidate)
        option_set = OptionSet(candidate.pattern, [candidate])
        if not neighbors:
            return option_set

        seen = {frozenset(candidate.queries)}
        queue = deque([frozenset(candidate.queries)])
        generated: list[frozenset[str]] = []
        while queue:
            queries = queue.popleft()
            for neighbor in neighbors:
                shared = set(queries) & set(neighbor.queries)
                if not shared:
                    continue
                for removed in _nonempty_subsets(shared):
                    # 剩余的冲突查询由邻居放弃，邻居必须保留至少两个查询
                    kept_by_neighbor = len(neighbor.queries) - len(shared - removed)
                    if removed != shared and kept_by_neighbor <= 1:
                        continue
                    reduced = queries - removed
                    if len(reduced) <= 1 or reduced in seen:
                        continue
                    seen.add(reduced)
                    generated.append(reduced)
                    queue.append(reduced)
                    if len(generated) >= self.max_generated:
                        logger.warning(
                            f"候选 {candidate.label} 的选项生成达到上限 {self.max_generated}，停止展开"
                        )
                        option_set.truncated = True
                        queue.clear()
                        break
                if option_set.truncated:
                    break

        options = []
        for queries in generated:
            option = candidate.with_queries(queries)
            weight = self.reweigh(option, candidate)
            if weight > 0:
                options.append(option.with_bvalue(weight))

        options.sort(key=lambda option: (-option.bvalue, option))
        if len(options) + 1 > self.max_options:
            logger.warning(
                f"候选 {candidate.label} 共 {len(options) + 1} 个选项，按 BValue 保留前 {self.max_options} 个"
            )
            options = options[: self.max_options - 1]
            option_set.truncated = True

        option_set.options = [candidate, *sorted(options)]
        logger.debug(
            f"候选 {candidate.label} 展开为 {len(option_set)} 个选项"
            f"（上界 {option_bound(len(neighbors), len(candidate.queries))}）"
        )
        return option_set

    def expand_graph(self, graph: SharonGraph) -> SharonGraph:
        """用全部选项替换原顶点，并按冲突关系重新连边（同模式的选项两两冲突）"""
        if not graph.edge_count:
            return graph

        vertices: dict[tuple, SharingCandidate] = {}
        for candidate in graph:
            for option in self.expand_candidate(graph, candidate):
                vertices.setdefault(option.key, option)

        ordered = sorted(vertices.values())
        edges = [
            (first, second)
            for i, first in enumerate(ordered)
            for second in ordered[i + 1 :]
            if plan_conflicts(first, second)
        ]
        expanded = SharonGraph(ordered, edges)
        logger.info(
            f"冲突消解: 顶点 {len(graph)} -> {len(expanded)}，边 {graph.edge_count} -> {expanded.edge_count}"
        )
        return expanded

    def resolve_pair(
        self, first: SharingCandidate, second: SharingCandidate
    ) -> list[tuple[SharingCandidate, SharingCandidate]]:
        """列出通过划分冲突查询来消解一对冲突的全部选项对"""
        shared = conflict_queries(first, second)
        if not shared:
            raise NotInConflictError(f"{first.label} 与 {second.label} 之间没有共享冲突")

        pairs = []
        ordered = sorted(shared)
        for size in range(len(ordered) + 1):
            for removed in combinations(ordered, size):
                from_first = set(removed)
                from_second = shared - from_first
                kept_first = set(first.queries) - from_first
                kept_second = set(second.queries) - from_second
                if len(kept_first) <= 1 or len(kept_second) <= 1:
                    continue
                option_first = first.with_queries(kept_first)
                option_second = second.with_queries(kept_second)
                pairs.append(
                    (
                        option_first.with_bvalue(self.reweigh(option_first, first)),
                        option_second.with_bvalue(self.reweigh(option_second, second)),
                    )
                )
        return pairs


def expand_candidate(
    graph: SharonGraph, candidate: SharingCandidate, reweigh: Reweigh | None = None
) -> OptionSet:
    return ConflictResolver(reweigh).expand_candidate(graph, candidate)


def expand_graph(graph: SharonGraph, reweigh: Reweigh | None = None) -> SharonGraph:
    return ConflictResolver(reweigh).expand_graph(graph)


def resolve_pair(
    first: SharingCandidate, second: SharingCandidate, reweigh: Reweigh | None = None
) -> list[tuple[SharingCandidate, SharingCandidate]]:
    return ConflictResolver(reweigh).resolve_pair(first, second)
