"""
共享冲突图模块
顶点为有收益的共享候选（权重为 BValue），边表示两个候选存在共享冲突
"""

from collections.abc import Iterable

import networkx as nx

from ..core.log import logger
from ..models.data_models import SharingCandidate
from ..models.exceptions import VertexNotFoundError


def conflicts(first: SharingCandidate, second: SharingCandidate) -> bool:
    """判断两个候选是否存在共享冲突

    两者必须有共同的查询。同一查询中事件类型不重复，所以只要两个模式有共同的
    事件类型，它们在该查询中的出现位置就一定重叠；反之位置重叠必然共享该位置的类型。
    """
    if first.key == second.key:
        return False
    if set(first.queries).isdisjoint(second.queries):
        return False
    return first.pattern.shares_type_with(second.pattern)


def plan_conflicts(first: SharingCandidate, second: SharingCandidate) -> bool:
    """计划内的冲突：共享冲突，或同一模式的两个不同选项（每个模式只维护一份计数）"""
    if first.key == second.key:
        return False
    return first.pattern == second.pattern or conflicts(first, second)


def conflict_queries(first: SharingCandidate, second: SharingCandidate) -> set[str]:
    """引起冲突的查询集合（两个候选查询集的交集）"""
    if not conflicts(first, second):
        return set()
    return set(first.queries) & set(second.queries)


class SharonGraph:
    """带权冲突图

    顶点按规范顺序（模式字典序, 查询集字典序）插入，下标即规范序号。
    图在构建后视为不可变，约简等操作都会返回新图。
    """

    def __init__(
        self,
        vertices: Iterable[SharingCandidate] = (),
        edges: Iterable[tuple[SharingCandidate, SharingCandidate]] = (),
    ):
        self.graph = nx.Graph()
        for candidate in sorted(vertices):
            self.graph.add_node(candidate, weight=candidate.bvalue)
        for first, second in edges:
            if first == second:
                continue
            if first not in self.graph or second not in self.graph:
                raise VertexNotFoundError(f"边 {first.label} - {second.label} 引用了不存在的顶点")
            self.graph.add_edge(first, second)
        self.vertices: list[SharingCandidate] = list(self.graph.nodes)
        self._index = {candidate: i for i, candidate in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, candidate: SharingCandidate) -> bool:
        return candidate in self._index

    def __iter__(self):
        return iter(self.vertices)

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def index_of(self, candidate: SharingCandidate) -> int:
        self._require(candidate)
        return self._index[candidate]

    def _require(self, candidate: SharingCandidate):
        if candidate not in self._index:
            raise VertexNotFoundError(f"顶点 {candidate.label} 不在冲突图中")

    def weight(self, candidate: SharingCandidate) -> float:
        self._require(candidate)
        return self.graph.nodes[candidate]["weight"]

    def total_weight(self, candidates: Iterable[SharingCandidate] | None = None) -> float:
        if candidates is None:
            candidates = self.vertices
        return sum(self.weight(candidate) for candidate in candidates)

    def degree(self, candidate: SharingCandidate) -> int:
        self._require(candidate)
        return self.graph.degree(candidate)

    def neighbors(self, candidate: SharingCandidate) -> list[SharingCandidate]:
        """邻居按规范顺序返回"""
        self._require(candidate)
        return sorted(self.graph.neighbors(candidate), key=self._index.__getitem__)

    def has_edge(self, first: SharingCandidate, second: SharingCandidate) -> bool:
        return self.graph.has_edge(first, second)

    def edges(self) -> list[tuple[SharingCandidate, SharingCandidate]]:
        """边按下标对 (i, j), i < j 排序"""
        pairs = []
        for first, second in self.graph.edges:
            if self._index[first] > self._index[second]:
                first, second = second, first
            pairs.append((first, second))
        return sorted(pairs, key=lambda pair: (self._index[pair[0]], self._index[pair[1]]))

    def index_edges(self) -> list[tuple[int, int]]:
        return [(self._index[a], self._index[b]) for a, b in self.edges()]

    def isolated(self) -> list[SharingCandidate]:
        return [c for c in self.vertices if self.graph.degree(c) == 0]

    def is_independent(self, candidates: Iterable[SharingCandidate]) -> bool:
        chosen = list(candidates)
        for i, first in enumerate(chosen):
            for second in chosen[i + 1 :]:
                if self.graph.has_edge(first, second):
                    return False
        return True

    def subgraph(self, candidates: Iterable[SharingCandidate]) -> "SharonGraph":
        keep = set(candidates)
        return SharonGraph(
            keep,
            [(a, b) for a, b in self.graph.edges if a in keep and b in keep],
        )

    def without(self, candidates: Iterable[SharingCandidate]) -> "SharonGraph":
        drop = set(candidates)
        return self.subgraph(c for c in self.vertices if c not in drop)

    def score_max(self, candidate: SharingCandidate, credit: float = 0.0) -> float:
        """包含该顶点的任一共享计划的得分上界

        为所有不与其相邻的顶点（含自身）权重之和，再加上外部给定的无冲突候选得分。
        """
        self._require(candidate)
        adjacent = set(self.graph.neighbors(candidate))
        return (
            sum(
                self.graph.nodes[other]["weight"]
                for other in self.vertices
                if other not in adjacent
            )
            + credit
        )

    def __repr__(self) -> str:
        return f"SharonGraph(vertices={len(self)}, edges={self.edge_count})"


def score_max(graph: SharonGraph, candidate: SharingCandidate, credit: float = 0.0) -> float:
    return graph.score_max(candidate, credit)


def build_graph(candidates: Iterable[SharingCandidate]) -> SharonGraph:
    """构建冲突图：只保留 BValue > 0 的候选，所有冲突的候选对以及同模式的候选对之间连边"""
    vertices: dict[tuple, SharingCandidate] = {}
    dropped = 0
    for candidate in candidates:
        if candidate.bvalue <= 0:
            dropped += 1
            continue
        if candidate.key in vertices:
            logger.warning(f"重复的共享候选 {candidate.label}，保留首次出现的版本")
            continue
        vertices[candidate.key] = candidate

    ordered = sorted(vertices.values())
    edges = [
        (first, second)
        for i, first in enumerate(ordered)
        for second in ordered[i + 1 :]
        if plan_conflicts(first, second)
    ]
    graph = SharonGraph(ordered, edges)
    logger.info(
        f"冲突图构建完成: {len(graph)} 个顶点，{graph.edge_count} 条边，剔除 {dropped} 个无收益候选"
    )
    return graph
