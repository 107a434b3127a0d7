"""
共享事件序列聚合引擎 - 命令行入口
在多个事件序列 COUNT(*) 查询之间共享公共子模式的在线聚合

子命令:
    mine      列出工作负载中的可共享模式
    optimize  计算共享计划 (JSON)
    run       按共享计划或不共享地执行工作负载，输出窗口计数 CSV
    bench     按配置文件扫描基准测试
    generate  生成合成事件流或相似查询工作负载
"""

import argparse
import sys

from src.core.config import ConfigManager
from src.core.log import logger, setup_logging
from src.core.workload import format_workload, generate_shared_workload, load_workload
from src.executor.oracle import brute_force_oracle
from src.models.data_models import GeneratorConfig, SharingPlan
from src.models.exceptions import SharonError
from src.optimizer.plan_finder import gwmin
from src.reports.codecs import (
    dumps_plan,
    format_results,
    read_graph_dump,
    read_plan,
    write_plan,
    write_results,
)
from src.reports.generators import ReportGenerator
from src.scheduler.bench_runner import BenchRunner, load_bench_config
from src.utils.helpers import SharonPipeline
from src.utils.stream_io import (
    format_stream,
    generate_stream,
    read_rates,
    read_stream,
    write_stream,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2


class SharonCLI:
    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.pipeline = SharonPipeline(config_manager)
        self.report_generator = ReportGenerator(config_manager)

    def cmd_mine(self, args) -> int:
        """列出可共享模式"""
        workload = load_workload(args.workload)
        print(self.report_generator.generate_mine_report(self.pipeline.mine(workload)), end="")
        return EXIT_OK

    def cmd_optimize(self, args) -> int:
        """计算共享计划并输出剪枝统计"""
        if args.strategy:
            self.config_manager.set_strategy(args.strategy)
        if args.resolve_conflicts:
            self.config_manager.set_resolve_conflicts(True)
        if args.time_limit is not None:
            self.config_manager.set_time_limit(args.time_limit)
        if args.max_options is not None:
            self.config_manager.set_max_options_per_candidate(args.max_options)

        if args.graph:
            graph = read_graph_dump(args.graph)
            plan, stats = self.pipeline.optimize(graph)
        else:
            if not args.workload:
                raise SharonError("需要工作负载文件或 --graph 冲突图导出")
            workload = load_workload(args.workload)
            stream = read_stream(args.stream) if args.stream else None
            overrides = read_rates(args.rates) if args.rates else None
            rates = self.pipeline.rates(workload, stream, overrides)
            plan, stats, graph = self.pipeline.plan(workload, rates)

        greedy_plan = gwmin(graph) if args.compare_greedy else None
        report = self.report_generator.generate_plan_report(plan, stats, greedy_plan)
        if args.output:
            write_plan(plan, args.output)
            print(report, end="")
        else:
            print(dumps_plan(plan), end="")
            print(report, end="", file=sys.stderr)
        return EXIT_OK

    def cmd_run(self, args) -> int:
        """执行工作负载并输出窗口计数"""
        workload = load_workload(args.workload)
        stream = read_stream(args.stream)
        if args.no_share:
            plan = SharingPlan()
        elif args.plan:
            plan = read_plan(args.plan)
        else:
            plan = None

        if plan is None:
            results, counters, plan = self.pipeline.run(workload, stream)
        else:
            results, counters = self.pipeline.execute(workload, plan, stream)

        if args.check:
            expected = brute_force_oracle(
                workload, stream, self.config_manager.get_oracle_max_events()
            )
            if expected != results:
                logger.error("执行结果与暴力校验不一致")
                return EXIT_INTERNAL
            logger.info("执行结果与暴力校验一致")

        if args.output:
            write_results(results, args.output)
        else:
            print(format_results(results), end="")
        print(self.report_generator.generate_run_summary(counters), end="", file=sys.stderr)
        return EXIT_OK

    def cmd_bench(self, args) -> int:
        """运行基准测试扫描"""
        bench_config, bench_engine_config = load_bench_config(args.config_file)
        # 基准配置中的 [sharon] 表覆盖全局配置
        merged = ConfigManager({**self.config_manager.config, **bench_engine_config.config})
        if args.parallel_trials:
            merged.set_parallel_trials(True)
        if args.trials is not None:
            merged.set_bench_trials(args.trials)

        rows = BenchRunner(bench_config, merged).run()
        if args.output:
            self.report_generator.generate_bench_csv(rows, args.output)
            logger.info(f"基准结果已写入 {args.output}")
        else:
            print(self.report_generator.bench_frame(rows).to_csv(index=False), end="")
        if args.averages:
            self.report_generator.bench_averages(rows).to_csv(args.averages, index=False)
            logger.info(f"平均结果已写入 {args.averages}")
        print(self.report_generator.generate_bench_report(rows), end="", file=sys.stderr)
        return EXIT_OK

    def cmd_generate(self, args) -> int:
        """生成合成事件流或工作负载"""
        if args.kind == "workload":
            workload = generate_shared_workload(
                args.queries,
                args.pattern_len,
                args.shared_len,
                args.within,
                args.slide,
                args.group_by,
                args.seed,
                args.random_placement,
            )
            text = format_workload(workload)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as f:
                    f.write(text)
            else:
                print(text, end="")
            return EXIT_OK

        if args.workload:
            alphabet = tuple(sorted(load_workload(args.workload).type_alphabet))
        elif args.types:
            alphabet = tuple(t.strip() for t in args.types.split(",") if t.strip())
        else:
            raise SharonError("需要 --types 或 --workload 指定事件类型")
        weights = tuple(float(w) for w in args.weights.split(",")) if args.weights else None
        stream = generate_stream(
            GeneratorConfig(
                alphabet,
                args.rate,
                args.duration,
                args.groups,
                args.seed,
                weights,
                "poisson" if args.poisson else "uniform",
                "multinomial" if args.multinomial else "balanced",
            )
        )
        if args.output:
            write_stream(stream, args.output)
        else:
            print(format_stream(stream), end="")
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sharon", description="共享事件序列聚合引擎")
    parser.add_argument("--config", help="TOML 配置文件")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    parser.add_argument("--log-level", help="日志级别，覆盖配置文件中的 log_level")
    sub = parser.add_subparsers(dest="command", required=True)

    mine = sub.add_parser("mine", help="列出可共享模式")
    mine.add_argument("workload")

    opt = sub.add_parser("optimize", help="计算共享计划")
    opt.add_argument("workload", nargs="?")
    opt.add_argument("--graph", help="注入的冲突图导出文件（带 BValue）")
    opt.add_argument("--stream", help="用于估计速率的事件流 CSV")
    opt.add_argument("--rates", help="速率覆盖文件 type,events_per_window")
    opt.add_argument("--strategy", choices=["none", "greedy", "optimal", "exhaustive"])
    opt.add_argument("--resolve-conflicts", action="store_true")
    opt.add_argument("--max-options", type=int, help="冲突展开时每个候选最多保留的选项数")
    opt.add_argument("--time-limit", type=float)
    opt.add_argument("--compare-greedy", action="store_true", help="同时给出 GWMIN 计划得分")
    opt.add_argument("-o", "--output", help="计划 JSON 输出路径")

    run = sub.add_parser("run", help="执行工作负载")
    run.add_argument("workload")
    run.add_argument("stream")
    share = run.add_mutually_exclusive_group()
    share.add_argument("--plan", help="共享计划 JSON")
    share.add_argument("--no-share", action="store_true", help="不共享，各查询独立执行")
    run.add_argument("--check", action="store_true", help="与暴力校验结果对比")
    run.add_argument("-o", "--output", help="结果 CSV 输出路径")

    bench = sub.add_parser("bench", help="运行基准测试")
    bench.add_argument("config_file")
    bench.add_argument("--parallel-trials", action="store_true")
    bench.add_argument("--trials", type=int)
    bench.add_argument("--averages", help="平均结果 CSV 输出路径")
    bench.add_argument("-o", "--output", help="逐次试验结果 CSV 输出路径")

    gen = sub.add_parser("generate", help="生成合成数据")
    gen.add_argument("kind", choices=["stream", "workload"])
    gen.add_argument("--types", help="逗号分隔的事件类型")
    gen.add_argument("--workload", help="从工作负载文件取事件类型")
    gen.add_argument("--weights", help="逗号分隔的类型权重")
    gen.add_argument("--rate", type=float, default=1.0, help="每秒事件数")
    gen.add_argument("--duration", type=int, default=60)
    gen.add_argument("--groups", type=int, default=0)
    gen.add_argument("--poisson", action="store_true")
    gen.add_argument("--multinomial", action="store_true")
    gen.add_argument("--queries", type=int, default=5)
    gen.add_argument("--pattern-len", type=int, default=5)
    gen.add_argument("--shared-len", type=int)
    gen.add_argument("--within", type=int, default=10)
    gen.add_argument("--slide", type=int, default=5)
    gen.add_argument("--group-by")
    gen.add_argument("--random-placement", action="store_true")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config_manager = ConfigManager.from_file(args.config)
        if args.log_level:
            config_manager.set_log_level(args.log_level)
        setup_logging(config_manager.get_log_level(), args.verbose)
        cli = SharonCLI(config_manager)
        handler = getattr(cli, f"cmd_{args.command}")
        return handler(args)
    except (SharonError, OSError) as e:
        logger.error(f"{args.command} 失败: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        logger.error(f"{args.command} 出现内部错误: {e}", exc_info=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
