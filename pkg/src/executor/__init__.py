"""
运行时执行模块
"""

from .chains import Segment, SegmentChain, build_chain
from .count_store import CountStore, StartEntry
from .oracle import brute_force_oracle
from .runtime import (
    Executor,
    combine_counts,
    instrumentation,
    run_non_shared,
    run_shared,
    validate_plan,
)

__all__ = [
    "CountStore",
    "StartEntry",
    "Segment",
    "SegmentChain",
    "build_chain",
    "Executor",
    "run_non_shared",
    "run_shared",
    "combine_counts",
    "instrumentation",
    "validate_plan",
    "brute_force_oracle",
]
