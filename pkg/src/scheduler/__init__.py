"""
调度模块
包含基准测试的配置扫描与试验调度
"""

from .bench_runner import BenchConfig, BenchRunner, load_bench_config

__all__ = ["BenchConfig", "BenchRunner", "load_bench_config"]
