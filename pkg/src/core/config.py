"""
配置管理模块
负责读取 TOML 配置文件并提供带默认值与校验的访问器
"""

import tomllib
from pathlib import Path

from ..models.exceptions import ConfigError
from .log import logger

STRATEGIES = ("none", "greedy", "optimal", "exhaustive")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigManager:
    """配置管理器"""

    def __init__(self, config: dict | None = None, path: str | None = None):
        self.config = dict(config or {})
        self.path = path

    @classmethod
    def from_file(cls, path: str | None) -> "ConfigManager":
        """从 TOML 文件加载配置，path 为空时使用默认配置"""
        if not path:
            return cls()
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except (tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
            raise ConfigError(f"配置文件 {path} 解析失败: {e}") from e
        logger.info(f"已加载配置文件: {path}")
        # 允许把引擎配置放在 [sharon] 表中
        section = data.get("sharon", data)
        return cls(section, path)

    def _positive_int(self, key: str, default: int) -> int:
        value = self.config.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
            raise ConfigError(f"配置项 {key} 必须为正整数，当前值: {value!r}")
        return value

    def get_strategy(self) -> str:
        """获取计划搜索策略 (none/greedy/optimal/exhaustive)"""
        strategy = str(self.config.get("strategy", "optimal")).lower()
        if strategy not in STRATEGIES:
            raise ConfigError(f"未知的策略: {strategy}，可选值: {', '.join(STRATEGIES)}")
        return strategy

    def get_resolve_conflicts(self) -> bool:
        """获取是否在优化前展开冲突候选"""
        return bool(self.config.get("resolve_conflicts", False))

    def get_time_limit(self) -> float:
        """获取最优计划搜索的时间上限（秒）"""
        value = self.config.get("time_limit", 10.0)
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            raise ConfigError(f"time_limit 必须为非负数，当前值: {value!r}")
        return float(value)

    def get_max_options_per_candidate(self) -> int:
        return self._positive_int("max_options_per_candidate", 64)

    def get_max_generated_options(self) -> int:
        return self._positive_int("max_generated_options", 512)

    def get_exhaustive_max_vertices(self) -> int:
        return self._positive_int("exhaustive_max_vertices", 25)

    def get_oracle_max_events(self) -> int:
        return self._positive_int("oracle_max_events", 1000)

    def get_log_level(self) -> str:
        """获取日志级别"""
        level = str(self.config.get("log_level", "INFO")).upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"未知的日志级别: {level}")
        return level

    def get_parallel_trials(self) -> bool:
        """获取基准测试是否并发执行各次试验"""
        return bool(self.config.get("parallel_trials", False))

    def get_max_concurrent_trials(self) -> int:
        return self._positive_int("max_concurrent_trials", 4)

    def get_bench_trials(self) -> int:
        """获取每个配置重复试验的次数"""
        return self._positive_int("bench_trials", 3)

    def set_strategy(self, strategy: str):
        self.config["strategy"] = strategy
        self.get_strategy()

    def set_resolve_conflicts(self, enabled: bool):
        self.config["resolve_conflicts"] = enabled

    def set_time_limit(self, seconds: float):
        self.config["time_limit"] = seconds
        self.get_time_limit()

    def set_max_options_per_candidate(self, count: int):
        self.config["max_options_per_candidate"] = count
        self.get_max_options_per_candidate()

    def set_log_level(self, level: str):
        self.config["log_level"] = level
        self.get_log_level()

    def set_parallel_trials(self, enabled: bool):
        self.config["parallel_trials"] = enabled

    def set_max_concurrent_trials(self, count: int):
        self.config["max_concurrent_trials"] = count
        self.get_max_concurrent_trials()

    def set_bench_trials(self, count: int):
        self.config["bench_trials"] = count
        self.get_bench_trials()

    def save_config(self, path: str | None = None):
        """把当前配置写回 TOML 文件（仅支持标量值）"""
        target = path or self.path
        if not target:
            raise ConfigError("没有可写入的配置文件路径")
        lines = []
        for key, value in sorted(self.config.items()):
            if isinstance(value, bool):
                rendered = "true" if value else "false"
            elif isinstance(value, (int, float)):
                rendered = repr(value)
            elif isinstance(value, str):
                rendered = '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
            else:
                raise ConfigError(f"配置项 {key} 的值类型无法写入: {type(value).__name__}")
            lines.append(f"{key} = {rendered}")
        Path(target).write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info(f"配置已保存到 {target}")
