from src.analysis.pattern_miner import mine_sharable
from src.core.config import ConfigManager
from src.core.workload import parse_workload
from src.models.data_models import BenchRow, ExecutionCounters
from src.optimizer.optimizer import Optimizer
from src.optimizer.plan_finder import gwmin
from src.reports.generators import BENCH_METRICS, ReportGenerator


def bench_row(approach, queries, trial, updates, latency=1.0):
    return BenchRow(
        approach=approach,
        queries=queries,
        pattern_len=5,
        events_per_window=20.0,
        trial=trial,
        wall_latency_ms=latency,
        throughput_eps=1000.0,
        count_updates=updates,
        shared_pattern_updates=updates // 2,
        live_entries_peak=3,
        combinations=0,
        plan_score=0.0,
    )


def test_mine_report(traffic_workload):
    report = ReportGenerator().generate_mine_report(mine_sharable(traffic_workload))
    lines = report.splitlines()
    assert lines[0] == "可共享模式: 5 个"
    assert any(line.startswith("(OakSt,MainSt)") and line.endswith("q1,q2,q3,q4") for line in lines)


def test_mine_report_empty():
    workload = parse_workload("q: PATTERN SEQ(A,B) WITHIN 10 SLIDE 5")
    assert ReportGenerator().generate_mine_report(mine_sharable(workload)) == "可共享模式: 0 个\n"


def test_plan_report(traffic_graph):
    plan, stats = Optimizer(ConfigManager()).optimize(traffic_graph)
    report = ReportGenerator().generate_plan_report(plan, stats, gwmin(traffic_graph))
    assert "共享计划 (optimal)" in report
    assert "计划得分: 50" in report
    assert "75.59%" in report
    assert "7.87%" in report
    assert "16.54%" in report
    assert "GWMIN 计划得分: 43，选中计划提升 +16.3%" in report
    assert "1. (ElmSt,ParkAve) 查询 q6,q7 BValue 18" in report


def test_plan_report_greedy_omits_lattice(traffic_graph):
    plan, stats = Optimizer(ConfigManager({"strategy": "greedy"})).optimize(traffic_graph)
    report = ReportGenerator().generate_plan_report(plan, stats)
    assert "计划格" not in report
    assert "GWMIN 计划得分" not in report


def test_run_summary():
    counters = ExecutionCounters(count_updates=12, live_entries_peak=4, combinations=2)
    assert ReportGenerator().generate_run_summary(counters) == (
        "计数更新: 12\n峰值 START 项: 4\n计数合并: 2\n"
    )


def test_bench_frame_sorted():
    rows = [
        bench_row("shared", 10, 1, 5),
        bench_row("non-shared", 5, 0, 9),
        bench_row("shared", 10, 0, 7),
    ]
    frame = ReportGenerator().bench_frame(rows)
    assert list(frame["approach"]) == ["non-shared", "shared", "shared"]
    assert list(frame["trial"]) == [0, 0, 1]
    assert set(BENCH_METRICS) <= set(frame.columns)


def test_bench_averages():
    rows = [
        bench_row("shared", 10, 0, 6, latency=2.0),
        bench_row("shared", 10, 1, 10, latency=4.0),
        bench_row("non-shared", 10, 0, 20),
    ]
    averages = ReportGenerator().bench_averages(rows)
    shared = averages[averages["approach"] == "shared"].iloc[0]
    assert shared["trials"] == 2
    assert shared["count_updates"] == 8
    assert shared["wall_latency_ms"] == 3.0
    assert len(averages) == 2


def test_bench_empty():
    generator = ReportGenerator()
    assert generator.bench_frame([]).empty
    assert generator.bench_averages([]).empty
    assert generator.generate_bench_report([]) == "基准测试没有产生任何结果\n"


def test_bench_csv(tmp_path):
    path = tmp_path / "bench.csv"
    ReportGenerator().generate_bench_csv([bench_row("shared", 5, 0, 3)], str(path))
    header = path.read_text(encoding="utf-8").splitlines()[0].split(",")
    assert header[:5] == ["approach", "queries", "pattern_len", "events_per_window", "trial"]
    assert header[-1] == "pruned"
