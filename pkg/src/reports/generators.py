"""
报告生成器模块
负责生成挖掘、优化、执行的文本报告以及基准测试表格
"""

from dataclasses import asdict

import pandas as pd

from ..models.data_models import (
    BenchRow,
    ExecutionCounters,
    OptimizerStats,
    SharableSet,
    SharingPlan,
)

BENCH_KEYS = ["approach", "queries", "pattern_len", "events_per_window"]
BENCH_METRICS = [
    "wall_latency_ms",
    "throughput_eps",
    "count_updates",
    "shared_pattern_updates",
    "live_entries_peak",
    "combinations",
    "plan_score",
    "pruned",
]


class ReportGenerator:
    """报告生成器"""

    def __init__(self, config_manager=None):
        self.config_manager = config_manager

    def generate_mine_report(self, sharable: SharableSet) -> str:
        """可共享模式列表，每行一个模式及其查询集"""
        if not len(sharable):
            return "可共享模式: 0 个\n"
        width = max(len(str(pattern)) for pattern in sharable)
        report = f"可共享模式: {len(sharable)} 个\n"
        for pattern, queries in sharable.items():
            report += f"{str(pattern):<{width}}  {','.join(sorted(queries))}\n"
        return report

    def generate_plan_report(
        self,
        plan: SharingPlan,
        stats: OptimizerStats,
        greedy_plan: SharingPlan | None = None,
    ) -> str:
        """优化结果报告：选中的候选、剪枝统计与贪心计划对比"""
        report = f"""
共享计划 ({stats.strategy})
• 候选数量: {len(plan)}
• 计划得分: {plan.score:g}
• GWMIN 回退: {"是" if plan.fallback else "否"}
• 冲突图: {stats.vertices} 个顶点, {stats.edges} 条边
"""
        if stats.expanded_vertices:
            report += f"• 冲突消解后: {stats.expanded_vertices} 个顶点, {stats.expanded_edges} 条边\n"
        report += f"• 保证权重: {stats.guaranteed_weight:.4f}\n"

        if stats.strategy == "optimal" and not stats.fallback:
            report += (
                f"• 约简: 无冲突 {stats.conflict_free} 个, 剪枝 {stats.pruned} 个, "
                f"剩余 {stats.reduced_vertices} 个顶点 {stats.reduced_edges} 条边\n"
                f"• 计划格: 共 {stats.lattice_size} 个计划, 约简排除 {stats.lattice_eliminated} 个"
                f" ({stats.eliminated_pct:.2f}%)\n"
                f"• 有效计划 {stats.valid_plans} 个 ({stats.valid_pct:.2f}%), "
                f"无效计划 {stats.invalid_plans} 个 ({stats.invalid_pct:.2f}%)\n"
            )
        report += f"• 搜索耗时: {stats.elapsed_ms:.2f}ms\n\n候选\n"
        for i, candidate in enumerate(plan, 1):
            report += f"{i}. {candidate.pattern} 查询 {','.join(candidate.queries)} BValue {candidate.bvalue:g}\n"

        if greedy_plan is not None:
            report += f"\nGWMIN 计划得分: {greedy_plan.score:g}"
            if greedy_plan.score > 0:
                gain = (plan.score - greedy_plan.score) / greedy_plan.score * 100
                report += f"，选中计划提升 {gain:+.1f}%"
            report += "\n"
        return report

    def generate_run_summary(self, counters: ExecutionCounters) -> str:
        return (
            f"计数更新: {counters.count_updates}\n"
            f"峰值 START 项: {counters.live_entries_peak}\n"
            f"计数合并: {counters.combinations}\n"
        )

    def bench_frame(self, rows: list[BenchRow]) -> pd.DataFrame:
        frame = pd.DataFrame([asdict(row) for row in rows])
        if frame.empty:
            return pd.DataFrame(columns=[*BENCH_KEYS, "trial", *BENCH_METRICS])
        return frame.sort_values([*BENCH_KEYS, "trial"], kind="stable").reset_index(drop=True)

    def bench_averages(self, rows: list[BenchRow]) -> pd.DataFrame:
        """按配置对多次试验取平均"""
        frame = self.bench_frame(rows)
        if frame.empty:
            return pd.DataFrame(columns=[*BENCH_KEYS, "trials", *BENCH_METRICS])
        grouped = frame.groupby(BENCH_KEYS, sort=True)
        averages = grouped[BENCH_METRICS].mean()
        averages.insert(0, "trials", grouped["trial"].count())
        return averages.reset_index()

    def generate_bench_csv(self, rows: list[BenchRow], path: str):
        self.bench_frame(rows).to_csv(path, index=False)

    def generate_bench_report(self, rows: list[BenchRow]) -> str:
        averages = self.bench_averages(rows)
        if averages.empty:
            return "基准测试没有产生任何结果\n"
        return "基准测试平均结果\n" + averages.to_string(index=False, float_format=lambda x: f"{x:.2f}") + "\n"
