"""
片段链模块
把查询模式切分为共享片段与私有片段交替组成的链
"""

from dataclasses import dataclass

from ..models.data_models import Query, SequencePattern, SharingCandidate, SharingPlan
from ..models.exceptions import InvalidPlanError


@dataclass(frozen=True)
class Segment:
    """链中的一个片段，shared 为空表示查询私有"""

    pattern: SequencePattern
    start: int
    shared: SharingCandidate | None = None

    @property
    def is_shared(self) -> bool:
        return self.shared is not None


@dataclass(frozen=True)
class SegmentChain:
    query: Query
    segments: tuple[Segment, ...]

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def concat(self) -> SequencePattern:
        pattern = SequencePattern()
        for segment in self.segments:
            pattern = pattern + segment.pattern
        return pattern


def build_chain(query: Query, candidates: list[SharingCandidate]) -> SegmentChain:
    """按出现位置排列共享片段，空隙用私有片段填充"""
    occurrences = []
    for candidate in candidates:
        start = query.pattern.index_of(candidate.pattern)
        if start is None:
            raise InvalidPlanError(
                f"计划中的候选 {candidate.label} 的模式不在查询 {query.id} 的模式 {query.pattern} 中"
            )
        occurrences.append((start, candidate))
    occurrences.sort(key=lambda item: item[0])

    segments = []
    position = 0
    for start, candidate in occurrences:
        if start < position:
            raise InvalidPlanError(f"查询 {query.id} 中的共享片段 {candidate.label} 与前一片段重叠")
        if start > position:
            segments.append(Segment(query.pattern[position:start], position))
        segments.append(Segment(candidate.pattern, start, candidate))
        position = start + len(candidate.pattern)
    if position < len(query.pattern):
        segments.append(Segment(query.pattern[position:], position))

    return SegmentChain(query, tuple(segments))


def build_chains(queries: list[Query], plan: SharingPlan) -> dict[str, SegmentChain]:
    return {query.id: build_chain(query, plan.candidates_for(query.id)) for query in queries}
