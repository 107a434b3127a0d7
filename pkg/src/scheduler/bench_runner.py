"""
基准测试调度模块
按查询数、模式长度、每窗口事件数三个维度扫描配置，顺序或并发地执行各次试验
"""

import asyncio
import time
import tomllib
from dataclasses import dataclass, field
from itertools import product

from ..analysis.pattern_miner import mine_sharable
from ..core.config import ConfigManager
from ..core.log import logger
from ..core.workload import generate_shared_workload
from ..models.data_models import BenchRow, GeneratorConfig, SharingPlan
from ..models.exceptions import ConfigError
from ..utils.helpers import SharonPipeline
from ..utils.stream_io import generate_stream

EXECUTOR_APPROACHES = ("shared", "non-shared")
OPTIMIZER_APPROACHES = ("greedy", "optimal", "exhaustive")


@dataclass
class BenchConfig:
    """一次基准扫描的参数"""

    queries: list[int] = field(default_factory=lambda: [5, 10, 20])
    pattern_len: list[int] = field(default_factory=lambda: [5])
    events_per_window: list[float] = field(default_factory=lambda: [20.0])
    approaches: list[str] = field(default_factory=lambda: list(EXECUTOR_APPROACHES))
    mode: str = "executor"  # executor / optimizer
    shared_len: int | None = None
    within: int = 10
    slide: int = 5
    duration: int = 60
    groups: int = 0
    seed: int = 0

    def __post_init__(self):
        for name in ("queries", "pattern_len", "events_per_window", "approaches"):
            value = getattr(self, name)
            if not isinstance(value, list):
                setattr(self, name, [value])
        if self.duration <= 0:
            raise ConfigError(f"基准测试时长必须为正: {self.duration}")
        if self.mode not in ("executor", "optimizer"):
            raise ConfigError(f"未知的基准测试模式: {self.mode}")
        allowed = EXECUTOR_APPROACHES if self.mode == "executor" else OPTIMIZER_APPROACHES
        unknown = [a for a in self.approaches if a not in allowed]
        if unknown:
            raise ConfigError(f"{self.mode} 模式不支持的对比方式: {', '.join(unknown)}")
        if any(q < 1 for q in self.queries) or any(l < 1 for l in self.pattern_len):
            raise ConfigError("查询数与模式长度必须为正")
        if any(e <= 0 for e in self.events_per_window):
            raise ConfigError("每窗口事件数必须为正")

    def configurations(self) -> list[tuple[int, int, float]]:
        return list(product(self.queries, self.pattern_len, self.events_per_window))


def load_bench_config(path: str) -> tuple[BenchConfig, ConfigManager]:
    """读取基准配置文件：[bench] 表为扫描参数，[sharon] 表为引擎配置"""
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"基准配置 {path} 解析失败: {e}") from e
    try:
        bench = BenchConfig(**data.get("bench", {}))
    except TypeError as e:
        raise ConfigError(f"基准配置 {path} 中有未知的参数: {e}") from e
    return bench, ConfigManager(data.get("sharon", {}), path)


class BenchRunner:
    """基准测试执行器"""

    def __init__(self, bench_config: BenchConfig, config_manager: ConfigManager | None = None):
        self.bench_config = bench_config
        self.config_manager = config_manager or ConfigManager()

    def _trial_inputs(self, queries: int, pattern_len: int, events_per_window: float, trial: int):
        cfg = self.bench_config
        shared_len = cfg.shared_len
        if shared_len is not None:
            shared_len = min(shared_len, pattern_len)
        workload = generate_shared_workload(
            queries,
            pattern_len,
            shared_len,
            cfg.within,
            cfg.slide,
            "customer" if cfg.groups else None,
            cfg.seed,
        )
        stream = generate_stream(
            GeneratorConfig(
                tuple(sorted(workload.type_alphabet)),
                events_per_window / cfg.within,
                cfg.duration,
                cfg.groups,
                cfg.seed + trial,
            )
        )
        return workload, stream

    def run_trial(
        self, approach: str, queries: int, pattern_len: int, events_per_window: float, trial: int
    ) -> BenchRow:
        """执行单次试验，每次试验拥有独立的执行器实例"""
        workload, stream = self._trial_inputs(queries, pattern_len, events_per_window, trial)
        shared_types = {t for pattern in mine_sharable(workload) for t in pattern}

        if self.bench_config.mode == "optimizer":
            trial_config = ConfigManager({**self.config_manager.config, "strategy": approach})
            pipeline = SharonPipeline(trial_config)
            rates = pipeline.rates(workload, stream)
            graph, cost_model = pipeline.build_graph(workload, rates)
            plan, stats = pipeline.optimize(graph, cost_model)
            return BenchRow(
                approach, queries, pattern_len, events_per_window, trial,
                stats.elapsed_ms, 0.0, 0, 0, 0, 0, plan.score, stats.pruned,
            )

        pipeline = SharonPipeline(self.config_manager)
        plan = SharingPlan()
        if approach == "shared" and len(stream):
            plan, _, _ = pipeline.plan(workload, pipeline.rates(workload, stream))

        started = time.perf_counter()
        _, counters = pipeline.execute(workload, plan, stream)
        elapsed = time.perf_counter() - started
        return BenchRow(
            approach,
            queries,
            pattern_len,
            events_per_window,
            trial,
            elapsed * 1000,
            len(stream) / elapsed if elapsed > 0 else 0.0,
            counters.count_updates,
            counters.updates_for_types(shared_types),
            counters.live_entries_peak,
            counters.combinations,
            plan.score,
        )

    def _jobs(self) -> list[tuple[str, int, int, float, int]]:
        trials = self.config_manager.get_bench_trials()
        return [
            (approach, q, l, e, trial)
            for q, l, e in self.bench_config.configurations()
            for approach in self.bench_config.approaches
            for trial in range(trials)
        ]

    def run(self) -> list[BenchRow]:
        jobs = self._jobs()
        logger.info(f"开始基准测试: {len(jobs)} 次试验")
        if self.config_manager.get_parallel_trials():
            return asyncio.run(self.run_concurrent(jobs))
        return [self.run_trial(*job) for job in jobs]

    async def run_concurrent(self, jobs: list[tuple]) -> list[BenchRow]:
        """并发执行试验 - 用信号量限制同时运行的试验数"""
        max_concurrent = self.config_manager.get_max_concurrent_trials()
        logger.info(f"并发试验数限制: {max_concurrent}")
        sem = asyncio.Semaphore(max_concurrent)

        async def safe_run_trial(job):
            async with sem:
                return await asyncio.to_thread(self.run_trial, *job)

        tasks = [
            asyncio.create_task(safe_run_trial(job), name=f"trial_{'_'.join(map(str, job))}")
            for job in jobs
        ]
        # 单个试验失败不影响其他试验
        results = await asyncio.gather(*tasks, return_exceptions=True)

        rows = []
        error_count = 0
        for job, result in zip(jobs, results):
            if isinstance(result, Exception):
                logger.error(f"试验 {job} 异常: {result}")
                error_count += 1
            else:
                rows.append(result)
        logger.info(f"并发试验完成 - 成功: {len(rows)}, 失败: {error_count}, 总计: {len(jobs)}")
        if error_count:
            raise RuntimeError(f"{error_count} 次试验失败")
        return rows
