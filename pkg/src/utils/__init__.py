"""
工具函数模块
包含事件流读写、合成数据生成和共享执行流水线
"""

from .helpers import SharonPipeline
from .stream_io import (
    format_stream,
    generate_stream,
    read_rates,
    read_stream,
    write_rates,
    write_stream,
)

__all__ = [
    "SharonPipeline",
    "read_stream",
    "write_stream",
    "format_stream",
    "generate_stream",
    "read_rates",
    "write_rates",
]
