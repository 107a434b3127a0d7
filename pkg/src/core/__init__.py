"""
核心功能模块
"""

from .config import ConfigManager
from .log import logger, setup_logging
from .workload import decompose, matches, parse_workload, windows_of

__all__ = [
    "ConfigManager",
    "logger",
    "setup_logging",
    "parse_workload",
    "decompose",
    "windows_of",
    "matches",
]
