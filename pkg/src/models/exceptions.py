"""
异常定义
引擎内所有可预期的错误都继承自 SharonError，命令行入口据此区分退出码
"""


class SharonError(Exception):
    """引擎错误基类"""


class ConfigError(SharonError):
    """配置值非法"""


class WorkloadError(SharonError):
    """工作负载校验失败"""


class WorkloadSyntaxError(WorkloadError):
    """工作负载 DSL 语法错误，携带行列号（均从 1 开始）"""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"第 {line} 行第 {column} 列: {message}")


class DuplicateEventTypeError(WorkloadError):
    """同一模式中事件类型重复出现"""


class HeterogeneousWindowError(WorkloadError):
    """工作负载内查询的窗口或分组属性不一致"""


class DuplicateQueryError(WorkloadError):
    """查询 id 重复"""


class InvalidWindowError(WorkloadError):
    """窗口参数不满足 within >= slide >= 1"""


class NotASubpatternError(SharonError):
    """共享模式不是查询模式的连续子模式"""


class UnknownEventTypeError(SharonError):
    """速率表中缺少该事件类型"""


class QueryMissingPatternError(SharonError):
    """候选引用的查询不包含候选模式，或查询不存在"""


class InvalidCandidateError(SharonError):
    """共享候选不满足模式长度 > 1 且查询数 > 1"""


class StreamFormatError(SharonError):
    """事件流文件格式错误"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"第 {line} 行: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class StreamOrderError(SharonError):
    """事件时间戳乱序"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"第 {line} 行: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class EmptyStreamError(SharonError):
    """空事件流无法估计速率"""


class VertexNotFoundError(SharonError):
    """顶点不在冲突图中"""


class NotInConflictError(SharonError):
    """两个候选之间不存在共享冲突"""


class SizeGuardError(SharonError):
    """输入规模超出穷举/暴力算法的保护上限"""


class InvalidPlanError(SharonError):
    """共享计划包含冲突候选或引用了不存在的查询"""


class PlanSearchTimeout(SharonError):
    """最优计划搜索超出时间限制"""


class GraphFormatError(SharonError):
    """冲突图导出文件格式错误"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"第 {line} 行: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
