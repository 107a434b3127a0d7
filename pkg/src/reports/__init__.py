"""
报告生成模块
包含文本报告、基准表格以及计划/冲突图/结果文件的编解码
"""

from .codecs import (
    format_graph_dump,
    format_results,
    parse_graph_dump,
    read_graph_dump,
    read_plan,
    write_plan,
    write_results,
)
from .generators import ReportGenerator

__all__ = [
    "ReportGenerator",
    "read_plan",
    "write_plan",
    "parse_graph_dump",
    "read_graph_dump",
    "format_graph_dump",
    "format_results",
    "write_results",
]
