"""
暴力校验模块
对每个查询、分组与窗口直接按定义统计时间严格递增的匹配子序列数，用作测试基准
"""

from collections import Counter, defaultdict
from itertools import groupby

from ..models.data_models import Stream, WindowResults, Workload
from ..models.exceptions import SizeGuardError


def brute_force_oracle(
    workload: Workload, stream: Stream, max_events: int = 1000
) -> WindowResults:
    if len(stream) > max_events:
        raise SizeGuardError(f"暴力校验最多支持 {max_events} 个事件，当前 {len(stream)} 个")

    window = workload.window
    results = WindowResults(window, workload.query_ids)
    if not len(stream):
        return results

    partitions = defaultdict(list)
    for event in stream:
        group = event.group if workload.group_by is not None else None
        partitions[group].append(event)
    results.groups.update(partitions)

    last_window = window.last_window(stream.last_time)
    for k in range(last_window + 1):
        lo, hi = window.start_of(k), window.end_of(k)
        for group, events in partitions.items():
            inside = [event for event in events if lo <= event.time < hi]
            for query in workload:
                total = _count_matches(query.pattern.types, inside)
                if total:
                    results.add(query.id, group, k, total)
        results.finalize(k)
    return results


def _count_matches(pattern: tuple[str, ...], events) -> int:
    """matched[j] 为以目前事件结尾、匹配 pattern[0..j] 的子序列数"""
    position = {event_type: j for j, event_type in enumerate(pattern)}
    matched = [0] * len(pattern)
    for _, batch in groupby(events, key=lambda event: event.time):
        arrivals = Counter(event.type for event in batch)
        # 同一时间戳的事件互相不能接续，从后往前更新
        for j in sorted((position[t] for t in arrivals if t in position), reverse=True):
            n = arrivals[pattern[j]]
            matched[j] += n if j == 0 else n * matched[j - 1]
    return matched[-1]
