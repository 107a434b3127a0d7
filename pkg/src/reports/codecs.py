"""
编解码模块
共享计划 JSON、冲突图导出文本与结果 CSV 的读写
"""

import csv
import io
import json
from pathlib import Path

from ..core.log import logger
from ..models.data_models import SequencePattern, SharingCandidate, SharingPlan, WindowResults
from ..models.exceptions import (
    GraphFormatError,
    InvalidCandidateError,
    InvalidPlanError,
    VertexNotFoundError,
)
from ..optimizer.sharon_graph import SharonGraph

RESULTS_HEADER = ["query", "group", "window_start", "count"]


def encode_plan(plan: SharingPlan) -> dict:
    return {
        "score": plan.score,
        "fallback": plan.fallback,
        "strategy": plan.strategy,
        "candidates": [
            {
                "pattern": list(candidate.pattern),
                "queries": list(candidate.queries),
                "bvalue": candidate.bvalue,
            }
            for candidate in plan
        ],
    }


def decode_plan(data: dict) -> SharingPlan:
    """从 JSON 对象还原共享计划，得分按候选 BValue 重新求和"""
    if not isinstance(data, dict) or not isinstance(data.get("candidates", []), list):
        raise InvalidPlanError("计划 JSON 必须是包含 candidates 列表的对象")
    candidates = []
    for index, item in enumerate(data.get("candidates", [])):
        try:
            candidates.append(
                SharingCandidate(
                    SequencePattern(tuple(str(t) for t in item["pattern"])),
                    tuple(str(q) for q in item["queries"]),
                    float(item.get("bvalue", 0.0)),
                )
            )
        except (KeyError, TypeError, ValueError, InvalidCandidateError) as e:
            raise InvalidPlanError(f"计划中第 {index + 1} 个候选无效: {e}") from e
    return SharingPlan.of(
        candidates,
        fallback=bool(data.get("fallback", False)),
        strategy=str(data.get("strategy", "")),
    )


def dumps_plan(plan: SharingPlan) -> str:
    return json.dumps(encode_plan(plan), ensure_ascii=False, indent=2) + "\n"


def write_plan(plan: SharingPlan, path: str | Path):
    Path(path).write_text(dumps_plan(plan), encoding="utf-8")
    logger.info(f"共享计划已写入 {path}")


def read_plan(path: str | Path) -> SharingPlan:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except UnicodeDecodeError as e:
        raise InvalidPlanError(f"计划文件 {path} 不是合法的 UTF-8 编码: {e.reason}") from e
    except json.JSONDecodeError as e:
        raise InvalidPlanError(f"计划文件 {path} 不是合法的 JSON: {e}") from e
    return decode_plan(data)


def _parse_pattern(text: str) -> SequencePattern:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return SequencePattern(tuple(t.strip() for t in text.split(",") if t.strip()))


def parse_graph_dump(text: str) -> SharonGraph:
    """解析冲突图导出文本

    每行为 `vertex <pattern>|<q,...>|<bvalue>` 或 `edge <i> <j>`，下标按 vertex 行出现顺序从 0 开始。
    BValue 不为正的顶点会被丢弃，连到它们的边一并忽略。
    同一模式的不同查询集之间总是补上边。
    """
    vertices: list[SharingCandidate] = []
    raw_edges: list[tuple[int, int, int]] = []
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        if keyword == "vertex":
            parts = rest.split("|")
            if len(parts) != 3:
                raise GraphFormatError("vertex 行格式应为 <pattern>|<q,...>|<bvalue>", line_no)
            try:
                candidate = SharingCandidate(
                    _parse_pattern(parts[0]),
                    tuple(q.strip() for q in parts[1].split(",") if q.strip()),
                    float(parts[2]),
                )
            except (ValueError, InvalidCandidateError) as e:
                raise GraphFormatError(str(e), line_no) from e
            vertices.append(candidate)
        elif keyword == "edge":
            ends = rest.split()
            if len(ends) != 2 or not all(end.isdigit() for end in ends):
                raise GraphFormatError("edge 行格式应为 edge <i> <j>", line_no)
            raw_edges.append((int(ends[0]), int(ends[1]), line_no))
        else:
            raise GraphFormatError(f"未知的行类型 {keyword!r}", line_no)

    edges = []
    for i, j, line_no in raw_edges:
        if i >= len(vertices) or j >= len(vertices):
            raise VertexNotFoundError(f"第 {line_no} 行的边引用了不存在的顶点 {max(i, j)}")
        first, second = vertices[i], vertices[j]
        if first.bvalue > 0 and second.bvalue > 0:
            edges.append((first, second))

    kept = [v for v in vertices if v.bvalue > 0]
    if len(kept) < len(vertices):
        logger.warning(f"冲突图导出中有 {len(vertices) - len(kept)} 个顶点 BValue 不为正，已丢弃")
    edges += [
        (first, second)
        for i, first in enumerate(kept)
        for second in kept[i + 1 :]
        if first.pattern == second.pattern and first.key != second.key
    ]
    graph = SharonGraph(kept, edges)
    logger.info(f"已载入冲突图: {len(graph)} 个顶点，{graph.edge_count} 条边")
    return graph


def read_graph_dump(path: str | Path) -> SharonGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(f"冲突图文件 {path} 不是合法的 UTF-8 编码: {e.reason}") from e
    return parse_graph_dump(text)


def format_graph_dump(graph: SharonGraph) -> str:
    lines = [
        f"vertex {candidate.pattern}|{','.join(candidate.queries)}|{candidate.bvalue!r}"
        for candidate in graph
    ]
    lines += [f"edge {i} {j}" for i, j in graph.index_edges()]
    return "\n".join(lines) + "\n"


def format_results(results: WindowResults) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RESULTS_HEADER)
    writer.writerows(results.rows())
    return buffer.getvalue()


def write_results(results: WindowResults, path: str | Path):
    Path(path).write_text(format_results(results), encoding="utf-8")
    logger.info(f"结果已写入 {path}")
