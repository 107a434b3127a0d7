"""
数据模型模块
"""

from .data_models import (
    BenchRow,
    Event,
    EventType,
    ExecutionCounters,
    GeneratorConfig,
    OptimizerStats,
    PatternSplit,
    Query,
    RateTable,
    SequencePattern,
    SharableSet,
    SharingCandidate,
    SharingPlan,
    Stream,
    WindowResults,
    WindowSpec,
    Workload,
)
from .exceptions import SharonError

__all__ = [
    "EventType",
    "Event",
    "SequencePattern",
    "WindowSpec",
    "Query",
    "Workload",
    "PatternSplit",
    "RateTable",
    "SharableSet",
    "SharingCandidate",
    "SharingPlan",
    "Stream",
    "WindowResults",
    "ExecutionCounters",
    "GeneratorConfig",
    "OptimizerStats",
    "BenchRow",
    "SharonError",
]
