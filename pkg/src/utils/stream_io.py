"""
事件流读写模块
读取/写出 `time,type[,group]` 格式的事件 CSV，生成合成事件流，读写速率覆盖文件
"""

import csv
import io
from pathlib import Path

import numpy as np

from ..core.log import logger
from ..models.data_models import Event, EventType, GeneratorConfig, Stream
from ..models.exceptions import StreamFormatError, StreamOrderError

STREAM_HEADER = ["time", "type", "group"]
RATES_HEADER = ["type", "events_per_window"]


def _is_header(row: list[str], first: str) -> bool:
    return bool(row) and row[0].strip().lower() == first


def parse_stream(lines, source: str = "<stream>") -> Stream:
    """解析事件 CSV 文本行；首行可以是表头"""
    events: list[Event] = []
    reader = csv.reader(lines)
    for line_no, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if line_no == 1 and _is_header(row, "time"):
            continue
        if len(row) not in (2, 3):
            raise StreamFormatError(f"应为 2 或 3 列，实际 {len(row)} 列", line_no)

        raw_time, event_type = row[0].strip(), row[1].strip()
        try:
            time = int(raw_time)
        except ValueError:
            raise StreamFormatError(f"时间戳不是整数: {raw_time!r}", line_no) from None
        if time < 0:
            raise StreamFormatError(f"时间戳不能为负: {time}", line_no)
        if not event_type:
            raise StreamFormatError("事件类型为空", line_no)
        group = row[2].strip() if len(row) == 3 and row[2].strip() else None

        if events and time < events[-1].time:
            raise StreamOrderError(f"时间戳 {time} 早于上一事件的 {events[-1].time}", line_no)
        events.append(Event(time, event_type, group))

    stream = Stream(tuple(events))
    logger.debug(f"{source}: 读取 {len(stream)} 个事件")
    return stream


def read_stream(path: str | Path) -> Stream:
    try:
        with open(path, encoding="utf-8", newline="") as f:
            return parse_stream(f, str(path))
    except UnicodeDecodeError as e:
        raise StreamFormatError(f"事件流文件 {path} 不是合法的 UTF-8 编码: {e.reason}") from e


def format_stream(stream: Stream) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(STREAM_HEADER)
    for event in stream:
        writer.writerow([event.time, event.type, event.group or ""])
    return buffer.getvalue()


def write_stream(stream: Stream, path: str | Path):
    Path(path).write_text(format_stream(stream), encoding="utf-8")
    logger.info(f"已写出 {len(stream)} 个事件到 {path}")


def _balanced_counts(total: int, probabilities: list[float]) -> list[int]:
    """最大余数法把 total 个事件按比例分配给各类型"""
    exact = [total * p for p in probabilities]
    counts = [int(x) for x in exact]
    remainders = sorted(
        range(len(exact)), key=lambda i: (-(exact[i] - counts[i]), i)
    )
    for i in remainders[: total - sum(counts)]:
        counts[i] += 1
    return counts


def generate_stream(config: GeneratorConfig) -> Stream:
    """按配置生成确定性的合成事件流

    默认等间隔到达：第 i 个事件的时间为 floor(i / rate)；poisson 模式下到达间隔服从指数分布。
    """
    rng = np.random.default_rng(config.seed)
    probabilities = config.probabilities()

    if config.arrival == "uniform":
        total = int(round(config.rate * config.duration))
        times = np.floor(np.arange(total) / config.rate).astype(np.int64)
    else:
        expected = config.rate * config.duration
        gaps = rng.exponential(1.0 / config.rate, size=int(expected * 1.5) + 16)
        arrivals = np.cumsum(gaps)
        while arrivals[-1] < config.duration:
            more = rng.exponential(1.0 / config.rate, size=len(gaps))
            arrivals = np.concatenate([arrivals, arrivals[-1] + np.cumsum(more)])
        times = np.floor(arrivals[arrivals < config.duration]).astype(np.int64)
        total = len(times)

    if config.type_draw == "balanced":
        counts = _balanced_counts(total, probabilities)
        type_indices = rng.permutation(np.repeat(np.arange(len(counts)), counts))
    else:
        type_indices = rng.choice(len(probabilities), size=total, p=probabilities)

    if config.groups:
        group_indices = rng.integers(0, config.groups, size=total)
        groups = [f"g{int(g)}" for g in group_indices]
    else:
        groups = [None] * total

    events = tuple(
        Event(int(time), config.type_alphabet[int(t)], group)
        for time, t, group in zip(times, type_indices, groups)
    )
    logger.info(
        f"生成事件流: {len(events)} 个事件，{len(config.type_alphabet)} 种类型，"
        f"{config.groups} 个分组，时长 {config.duration}s"
    )
    return Stream(events, config.duration)


def read_rates(path: str | Path) -> dict[EventType, float]:
    """读取速率覆盖文件 `type,events_per_window`，首行可以是表头"""
    rates: dict[EventType, float] = {}
    try:
        with open(path, encoding="utf-8", newline="") as f:
            rows = list(csv.reader(f))
    except UnicodeDecodeError as e:
        raise StreamFormatError(f"速率文件 {path} 不是合法的 UTF-8 编码: {e.reason}") from e
    for line_no, row in enumerate(rows, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if line_no == 1 and _is_header(row, "type"):
            continue
        if len(row) != 2:
            raise StreamFormatError(f"速率文件应为 2 列，实际 {len(row)} 列", line_no)
        event_type = row[0].strip()
        try:
            rate = float(row[1])
        except ValueError:
            raise StreamFormatError(f"速率不是数字: {row[1]!r}", line_no) from None
        if not event_type or rate < 0:
            raise StreamFormatError(f"非法的速率行: {row}", line_no)
        rates[event_type] = rate
    return rates


def write_rates(rates: dict[EventType, float], path: str | Path):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(RATES_HEADER)
        for event_type, rate in sorted(rates.items()):
            writer.writerow([event_type, rate])
