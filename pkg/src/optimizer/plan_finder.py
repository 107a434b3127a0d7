"""
计划搜索模块
包含 GWMIN 贪心算法、基于保证权重的冲突图约简、逐层的有效计划格搜索以及穷举基线
"""

import time
from dataclasses import dataclass, field
from itertools import groupby

from ..core.log import logger
from ..models.data_models import SharingCandidate, SharingPlan
from ..models.exceptions import PlanSearchTimeout, SizeGuardError
from .sharon_graph import SharonGraph

# 计划在搜索过程中表示为规范序号的升序元组
IndexPlan = tuple[int, ...]


def guaranteed_weight(graph: SharonGraph) -> float:
    """GWMIN 结果权重的下界：Σ weight(v) / (degree(v) + 1)"""
    return sum(graph.weight(v) / (graph.degree(v) + 1) for v in graph)


def gwmin(graph: SharonGraph) -> SharingPlan:
    """GWMIN 贪心最大权独立集

    每轮选取 weight / (当前度数 + 1) 最大的顶点（平局取权重大者，再取规范序靠前者），
    然后删除它及其邻居。
    """
    remaining = graph.graph.copy()
    order = {candidate: i for i, candidate in enumerate(graph.vertices)}
    chosen = []
    while remaining:
        best = max(
            remaining.nodes,
            key=lambda v: (
                remaining.nodes[v]["weight"] / (remaining.degree(v) + 1),
                remaining.nodes[v]["weight"],
                -order[v],
            ),
        )
        chosen.append(best)
        remaining.remove_nodes_from(set(remaining.neighbors(best)) | {best})
    return SharingPlan.of(chosen, strategy="greedy")


@dataclass
class ReductionResult:
    """约简结果：约简后的图、无冲突候选 F 以及被剪枝的候选"""

    reduced: SharonGraph
    conflict_free: list[SharingCandidate] = field(default_factory=list)
    pruned: list[SharingCandidate] = field(default_factory=list)

    @property
    def credit(self) -> float:
        return sum(candidate.bvalue for candidate in self.conflict_free)


def reduce_graph(graph: SharonGraph, min_weight: float | None = None) -> ReductionResult:
    """迭代约简冲突图直到不动点

    度为 0 的顶点移入 F；score_max(v) 加上 F 的总权重仍小于 min_weight 的顶点被剪枝。
    min_weight 在整个过程中固定为输入图的保证权重。
    """
    if min_weight is None:
        min_weight = guaranteed_weight(graph)

    current = graph
    conflict_free: list[SharingCandidate] = []
    pruned: list[SharingCandidate] = []
    while True:
        isolated = current.isolated()
        if isolated:
            conflict_free.extend(isolated)
            current = current.without(isolated)

        credit = sum(candidate.bvalue for candidate in conflict_free)
        ridden = [v for v in current if current.score_max(v, credit) < min_weight]
        if ridden:
            pruned.extend(ridden)
            current = current.without(ridden)

        if not isolated and not ridden:
            break

    logger.info(
        f"冲突图约简: 无冲突 {len(conflict_free)} 个，剪枝 {len(pruned)} 个，"
        f"剩余 {len(current)} 个顶点 {current.edge_count} 条边"
    )
    return ReductionResult(current, sorted(conflict_free), sorted(pruned))


def _join_level(graph: SharonGraph, parents: list[IndexPlan]) -> list[IndexPlan]:
    """前 s-1 个候选相同的父计划两两合并，只需检查最后两个候选之间是否有边"""
    vertices = graph.vertices
    children = []
    for _, siblings in groupby(sorted(parents), key=lambda plan: plan[:-1]):
        siblings = list(siblings)
        for i, left in enumerate(siblings):
            for right in siblings[i + 1 :]:
                if not graph.has_edge(vertices[left[-1]], vertices[right[-1]]):
                    children.append(left + (right[-1],))
    return children


def next_level(
    graph: SharonGraph, parents: list[tuple[SharingCandidate, ...]], size: int | None = None
) -> list[tuple[SharingCandidate, ...]]:
    """由大小为 s 的全部有效计划生成大小为 s+1 的全部有效计划"""
    if not parents:
        return []
    index_parents = [tuple(graph.index_of(c) for c in plan) for plan in parents]
    if size is not None and any(len(plan) != size for plan in index_parents):
        raise ValueError(f"父计划的大小必须都为 {size}")
    return [
        tuple(graph.vertices[i] for i in plan) for plan in _join_level(graph, index_parents)
    ]


@dataclass
class SearchOutcome:
    plan: SharingPlan
    visited: int = 0
    levels: int = 0


class PlanFinder:
    """逐层遍历有效计划格，只保留当前层和目前最优的计划"""

    def __init__(self, time_limit: float | None = None):
        self.time_limit = time_limit
        self.visited = 0

    def _check_deadline(self, deadline: float | None, level: int):
        if deadline is not None and time.monotonic() >= deadline:
            raise PlanSearchTimeout(f"计划搜索在第 {level} 层超出时间限制 {self.time_limit}s")

    def search(
        self, graph: SharonGraph, conflict_free: list[SharingCandidate] = ()
    ) -> SearchOutcome:
        deadline = None if self.time_limit is None else time.monotonic() + self.time_limit
        self._check_deadline(deadline, 0)

        weights = [graph.weight(v) for v in graph.vertices]
        level: list[IndexPlan] = [(i,) for i in range(len(weights))]
        best: IndexPlan = ()
        best_score = 0.0
        self.visited = 0
        depth = 0

        while level:
            depth += 1
            self.visited += len(level)
            for plan in level:
                score = sum(weights[i] for i in plan)
                # 按层、按规范序遍历，严格大于才替换，即平局取候选更少、规范序更靠前者
                if score > best_score:
                    best, best_score = plan, score
            logger.debug(f"第 {depth} 层: {len(level)} 个有效计划，当前最优得分 {best_score:g}")
            self._check_deadline(deadline, depth)
            level = _join_level(graph, level)

        chosen = [graph.vertices[i] for i in best] + list(conflict_free)
        plan = SharingPlan.of(chosen, strategy="optimal")
        logger.info(f"计划搜索完成: 访问 {self.visited} 个有效计划，最优得分 {plan.score:g}")
        return SearchOutcome(plan, self.visited, depth)


def find_optimal_plan(
    graph: SharonGraph,
    conflict_free: list[SharingCandidate] = (),
    time_limit: float | None = None,
) -> SharingPlan:
    return PlanFinder(time_limit).search(graph, conflict_free).plan


def exhaustive_optimal(graph: SharonGraph, max_vertices: int = 25) -> SharingPlan:
    """穷举全部有效子集求最优计划，仅用于小图校验"""
    if len(graph) > max_vertices:
        raise SizeGuardError(f"穷举搜索最多支持 {max_vertices} 个顶点，当前 {len(graph)} 个")

    vertices = graph.vertices
    weights = [graph.weight(v) for v in vertices]
    neighbor_masks = [0] * len(vertices)
    for i, j in graph.index_edges():
        neighbor_masks[i] |= 1 << j
        neighbor_masks[j] |= 1 << i

    # (−得分, 候选数, 序号元组) 最小者为最优
    best_key = (0.0, 0, ())

    def visit(start: int, chosen: list[int], blocked: int, score: float):
        nonlocal best_key
        key = (-score, len(chosen), tuple(chosen))
        if chosen and key < best_key:
            best_key = key
        for i in range(start, len(vertices)):
            if blocked >> i & 1:
                continue
            chosen.append(i)
            visit(i + 1, chosen, blocked | neighbor_masks[i], score + weights[i])
            chosen.pop()

    visit(0, [], 0, 0.0)
    return SharingPlan.of([vertices[i] for i in best_key[2]], strategy="exhaustive")


def lattice_statistics(original_vertices: int, reduced_vertices: int, visited: int) -> dict:
    """计划格的规模统计：总规模、约简排除的计划数以及有效/无效计划数"""
    total = 2**original_vertices - 1
    eliminated = 2**original_vertices - 2**reduced_vertices
    invalid = max(0, 2**reduced_vertices - visited - 1)

    def pct(count: int) -> float:
        return round(100.0 * count / total, 2) if total else 0.0

    return {
        "lattice_size": total,
        "lattice_eliminated": eliminated,
        "eliminated_pct": pct(eliminated),
        "valid_plans": visited,
        "valid_pct": pct(visited),
        "invalid_plans": invalid,
        "invalid_pct": pct(invalid),
    }
