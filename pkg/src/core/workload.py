"""
工作负载模块
负责解析查询 DSL，并提供模式分解、窗口计算与匹配检查等基础操作

DSL 每行一个查询:
    <id>: PATTERN SEQ(<Type>{,<Type>}*) [GROUPBY <attr>] WITHIN <int> SLIDE <int>
空行与 # 注释会被忽略，关键字不区分大小写。
"""

import re
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..models.data_models import (
    Event,
    PatternSplit,
    Query,
    SequencePattern,
    WindowSpec,
    Workload,
)
from ..models.exceptions import (
    NotASubpatternError,
    WorkloadError,
    WorkloadSyntaxError,
)
from .log import logger

KEYWORDS = {"PATTERN", "SEQ", "GROUPBY", "WITHIN", "SLIDE"}

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)"
    r"|(?P<int>\d+)(?![A-Za-z_])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_.\-]*)"
    r"|(?P<punct>[:(),])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # int / ident / keyword / punct / end
    text: str
    column: int


def _tokenize(line: str, line_no: int) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(line):
        if line[pos] == "#":
            break
        match = _TOKEN_RE.match(line, pos)
        if not match:
            raise WorkloadSyntaxError(f"无法识别的字符 {line[pos]!r}", line_no, pos + 1)
        kind = match.lastgroup
        text = match.group(kind)
        if kind == "ident" and text.upper() in KEYWORDS:
            tokens.append(_Token("keyword", text.upper(), pos + 1))
        elif kind != "ws":
            tokens.append(_Token(kind, text, pos + 1))
        pos = match.end()
    tokens.append(_Token("end", "", len(line.rstrip()) + 1))
    return tokens


class _LineParser:
    """单行查询的递归下降解析器"""

    def __init__(self, tokens: list[_Token], line_no: int):
        self.tokens = tokens
        self.line_no = line_no
        self.index = 0

    def _peek(self) -> _Token:
        return self.tokens[self.index]

    def _fail(self, message: str, token: _Token | None = None):
        token = token or self._peek()
        found = token.text or "行尾"
        raise WorkloadSyntaxError(f"{message}，实际为 {found!r}", self.line_no, token.column)

    def _expect(self, kind: str, text: str | None = None) -> _Token:
        token = self._peek()
        if token.kind != kind or (text is not None and token.text != text):
            self._fail(f"期望 {text or kind}")
        self.index += 1
        return token

    def _accept_keyword(self, keyword: str) -> bool:
        token = self._peek()
        if token.kind == "keyword" and token.text == keyword:
            self.index += 1
            return True
        return False

    def parse(self) -> tuple[str, list[str], str | None, int, int]:
        query_id = self._expect("ident").text
        self._expect("punct", ":")
        self._expect("keyword", "PATTERN")
        self._expect("keyword", "SEQ")
        self._expect("punct", "(")

        types = [self._expect("ident").text]
        while self._peek().kind == "punct" and self._peek().text == ",":
            self.index += 1
            types.append(self._expect("ident").text)
        self._expect("punct", ")")

        group_by = None
        if self._accept_keyword("GROUPBY"):
            group_by = self._expect("ident").text

        self._expect("keyword", "WITHIN")
        within = int(self._expect("int").text)
        self._expect("keyword", "SLIDE")
        slide = int(self._expect("int").text)
        self._expect("end")
        return query_id, types, group_by, within, slide


def parse_workload(text: str, allow_empty: bool = False) -> Workload | None:
    """解析工作负载 DSL 文本

    Args:
        text: DSL 文档
        allow_empty: 为 True 时没有任何查询返回 None，否则抛出 WorkloadError

    Returns:
        校验通过的 Workload
    """
    queries: list[Query] = []
    first_line: dict[str, int] = {}
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw_line, line_no)
        if tokens[0].kind == "end":
            continue

        query_id, types, group_by, within, slide = _LineParser(
            tokens, line_no
        ).parse()

        if query_id in first_line:
            raise WorkloadSyntaxError(
                f"查询 id {query_id} 已在第 {first_line[query_id]} 行定义", line_no, 1
            )
        first_line[query_id] = line_no

        try:
            window = WindowSpec(within, slide)
            queries.append(Query(query_id, SequencePattern(tuple(types)), window, group_by))
        except WorkloadError as e:
            raise type(e)(f"第 {line_no} 行: {e}") from None

        logger.debug(f"解析查询 {query_id}: SEQ{tuple(types)} WITHIN {within} SLIDE {slide}")

    if not queries:
        if allow_empty:
            return None
        raise WorkloadError("工作负载中没有任何查询")

    workload = Workload(tuple(queries))
    logger.info(f"工作负载解析完成，共 {len(workload)} 个查询，{len(workload.type_alphabet)} 种事件类型")
    return workload


def load_workload(path: str) -> Workload:
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except UnicodeDecodeError as e:
        raise WorkloadError(f"工作负载文件 {path} 不是合法的 UTF-8 编码: {e.reason}") from e
    return parse_workload(text)


def format_query(query: Query) -> str:
    """把查询格式化回 DSL 文本"""
    parts = [f"{query.id}: PATTERN SEQ({','.join(query.pattern)})"]
    if query.group_by:
        parts.append(f"GROUPBY {query.group_by}")
    parts.append(f"WITHIN {query.window.within} SLIDE {query.window.slide}")
    return " ".join(parts)


def format_workload(workload: Workload) -> str:
    return "\n".join(format_query(query) for query in workload) + "\n"


def decompose(query: Query, shared: SequencePattern) -> PatternSplit:
    """求共享模式在查询中的前缀与后缀"""
    start = query.pattern.index_of(shared)
    if start is None:
        raise NotASubpatternError(f"{shared} 不是查询 {query.id} 的模式 {query.pattern} 的连续子模式")
    end = start + len(shared)
    return PatternSplit(query.pattern[:start], shared, query.pattern[end:])


def windows_of(time: int, window: WindowSpec) -> set[int]:
    """返回包含时间点 time 的全部窗口下标"""
    return set(window.windows_of(time))


def matches(
    pattern: SequencePattern, events: Sequence[Event], grouped: bool = False
) -> bool:
    """判断事件序列是否匹配模式：类型逐位对齐、时间严格递增，分组时要求同组"""
    if len(events) != len(pattern):
        return False
    for index, (event, event_type) in enumerate(zip(events, pattern)):
        if event.type != event_type:
            return False
        if index and events[index - 1].time >= event.time:
            return False
    if grouped and len({event.group for event in events}) > 1:
        return False
    return True


def generate_shared_workload(
    queries: int,
    pattern_len: int,
    shared_len: int | None = None,
    within: int = 10,
    slide: int = 5,
    group_by: str | None = None,
    seed: int = 0,
    random_placement: bool = False,
) -> Workload:
    """生成 k 个共享同一中间模式的相似查询

    每个查询形如 (私有前缀, 共享中间模式, 私有后缀)，私有类型互不相同，
    因此可共享模式只有共享部分及其长度大于 1 的子模式。
    """
    if queries < 1 or pattern_len < 1:
        raise WorkloadError("查询数与模式长度必须为正")
    if shared_len is None:
        shared_len = max(2, pattern_len - 2) if pattern_len >= 2 else 1
    if shared_len > pattern_len:
        raise WorkloadError(f"共享模式长度 {shared_len} 超过查询模式长度 {pattern_len}")

    rng = np.random.default_rng(seed)
    shared = [f"S{i}" for i in range(shared_len)]
    private_len = pattern_len - shared_len
    window = WindowSpec(within, slide)

    result = []
    for index in range(queries):
        # 默认把私有类型平均分到两侧，保持共享模式居中
        if random_placement:
            prefix_len = int(rng.integers(0, private_len + 1))
        else:
            prefix_len = private_len // 2
        suffix_len = private_len - prefix_len
        prefix = [f"P{index}_{i}" for i in range(prefix_len)]
        suffix = [f"X{index}_{i}" for i in range(suffix_len)]
        pattern = SequencePattern(tuple(prefix + shared + suffix))
        result.append(Query(f"q{index + 1}", pattern, window, group_by))

    return Workload(tuple(result))
