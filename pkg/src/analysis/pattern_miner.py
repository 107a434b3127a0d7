"""
可共享模式挖掘模块
逐层挖掘工作负载中出现在至少两个查询里的连续子模式（长度 > 1）
"""

from collections import defaultdict

from ..core.log import logger
from ..models.data_models import SequencePattern, SharableSet, Workload


def _count_level(
    workload: Workload, length: int, frequent: set[SequencePattern] | None
) -> dict[SequencePattern, set[str]]:
    """统计长度为 length 的连续子模式出现在哪些查询中

    frequent 为上一层的可共享模式；长度为 length 的模式只有当其两个长度为
    length-1 的连续子模式都可共享时才可能可共享。
    """
    found: dict[SequencePattern, set[str]] = defaultdict(set)
    for query in workload:
        pattern = query.pattern
        for start in range(len(pattern) - length + 1):
            sub = pattern[start : start + length]
            if frequent is not None and (
                sub[:-1] not in frequent or sub[1:] not in frequent
            ):
                continue
            found[sub].add(query.id)
    return found


def mine_sharable(workload: Workload) -> SharableSet:
    """挖掘所有可共享模式

    Args:
        workload: 已校验的工作负载

    Returns:
        SharableSet，按模式字典序排列
    """
    entries: dict[SequencePattern, frozenset[str]] = {}
    frequent: set[SequencePattern] | None = None
    length = 2
    max_length = max(len(query.pattern) for query in workload)

    while length <= max_length:
        level = {
            pattern: frozenset(queries)
            for pattern, queries in _count_level(workload, length, frequent).items()
            if len(queries) > 1
        }
        if not level:
            break
        logger.debug(f"长度 {length} 的可共享模式: {len(level)} 个")
        entries.update(level)
        frequent = set(level)
        length += 1

    result = SharableSet(entries)
    logger.info(f"共挖掘到 {len(result)} 个可共享模式")
    return result


def mine_brute_force(workload: Workload) -> SharableSet:
    """枚举全部连续子串后取交集，仅用于校验"""
    occurrences: dict[SequencePattern, set[str]] = defaultdict(set)
    for query in workload:
        pattern = query.pattern
        for start in range(len(pattern)):
            for end in range(start + 2, len(pattern) + 1):
                occurrences[pattern[start:end]].add(query.id)
    return SharableSet(
        {
            pattern: frozenset(queries)
            for pattern, queries in occurrences.items()
            if len(queries) > 1
        }
    )
