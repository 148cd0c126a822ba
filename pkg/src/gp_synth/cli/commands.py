"""命令行接口。

提供 gp-synth 的子命令：synth、validate、gen、translate、list。

退出码：
    0  成功
    1  输入错误
    2  未找到解（超时、内存上限或搜索空间耗尽）
    3  验证时某个实例失败
"""

import argparse
import logging
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional

import psutil
import yaml

from gp_synth import __version__
from gp_synth.cli.report import RunReport
from gp_synth.config.settings import RunSettings, apply_overrides, load_settings
from gp_synth.core.errors import DomainDefinitionError, GpSynthError
from gp_synth.domains import (
    BenchmarkSpec,
    benchmark_loader,
    builtin_domain,
    corpus_program,
    generate_instances,
)
from gp_synth.domains.generators import GOAL_STYLES
from gp_synth.domains.loader import INSTANCE_SETS
from gp_synth.engine import ExecutionConfig, Interpreter, SearchLimits, Solved, bfgp
from gp_synth.model import (
    Domain,
    ExtendedDomain,
    Instance,
    PointerDecl,
    build_extended_domain,
    dump_domain,
    dump_instance,
    load_domain,
    load_instance,
    name_pointers,
)
from gp_synth.pddl import parse_pddl, translate
from gp_synth.program import PlanningProgram, parse_program, print_program

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_SOLUTION = 2
EXIT_VALIDATION_FAILED = 3

DOMAIN_FILE = "domain.gpd"
INSTANCE_SUFFIX = ".gpi"

INPUT_ERRORS = (GpSynthError, OSError, yaml.YAMLError, ValueError)


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误以退出码 1 结束，避免与“未找到解”的 2 混淆。"""

    def error(self, message: str) -> Any:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"❌ {message}\n")


@dataclass
class ProblemSource:
    """--domain 指向的问题来源：内置基准或目录。

    Attributes:
        name: 领域名
        domain: 领域
        spec: 内置或 YAML 基准配置；目录来源为 None
        instances: 目录中的实例
    """

    name: str
    domain: Domain
    spec: Optional[BenchmarkSpec] = None
    instances: list[Instance] = field(default_factory=list)

    @property
    def builtin(self) -> bool:
        return self.spec is not None


def load_source(value: str) -> ProblemSource:
    """解析 --domain：已存在的目录读取 domain.gpd 与 *.gpi，否则按内置基准名查找。

    Raises:
        UnknownDomainError: 不是目录也不是内置基准
        DomainDefinitionError: 目录中没有实例
    """
    path = Path(value)
    if path.is_dir():
        domain = load_domain(path / DOMAIN_FILE)
        instances = [load_instance(p) for p in sorted(path.glob(f"*{INSTANCE_SUFFIX}"))]
        if not instances:
            raise DomainDefinitionError(f"目录 '{path}' 中没有 {INSTANCE_SUFFIX} 实例文件")
        logger.debug("从 %s 读取领域 %s 与 %d 个实例", path, domain.name, len(instances))
        return ProblemSource(domain.name, domain, instances=instances)
    domain = builtin_domain(value)
    return ProblemSource(value, domain, spec=benchmark_loader.load(value))


def parse_pointer_counts(text: str) -> dict[str, int]:
    """解析 "type:count,..." 形式的指针数。"""
    counts: dict[str, int] = {}
    for item in text.split(","):
        object_type, sep, count = item.strip().partition(":")
        if not sep or not object_type or not count.strip().isdigit():
            raise DomainDefinitionError(f"指针声明 '{item.strip()}' 应为 type:count")
        counts[object_type.strip()] = int(count)
    return counts


def resolve_pointers(value: Optional[str], source: ProblemSource) -> tuple[PointerDecl, ...]:
    """确定指针声明。

    None 时使用基准配置或领域的默认指针；给出的个数与默认一致时沿用默认名字，
    否则按类型自动起名。
    """
    defaults = (source.spec.pointers if source.spec else ()) or source.domain.default_pointers
    if value is None:
        return defaults
    value = value.strip()
    if value.isdigit():
        total = int(value)
        if total == len(defaults):
            return defaults
        if len(source.domain.types) != 1:
            raise DomainDefinitionError(
                f"领域 '{source.name}' 有多种类型，请用 type:count 形式指定指针"
            )
        counts = {source.domain.types[0]: total}
    else:
        counts = parse_pointer_counts(value)
    if Counter(counts) == Counter(p.object_type for p in defaults):
        return defaults
    return name_pointers(counts)


def select_instances(
    source: ProblemSource,
    instance_set: str,
    count: Optional[int],
    seed: int,
    goal_style: str = "partial",
) -> list[Instance]:
    if not source.builtin:
        return source.instances[:count] if count else list(source.instances)
    return generate_instances(
        source.name,
        count=count,
        seed=seed,
        instance_set=instance_set,
        goal_style=goal_style,
        spec=source.spec,
    )


def _settings(args: argparse.Namespace, **bounds: Any) -> RunSettings:
    overrides = {
        "timeout": getattr(args, "timeout", None),
        "max_nodes": getattr(args, "max_nodes", None),
        "eval_key": getattr(args, "eval", None),
        "seed": getattr(args, "seed", None),
        "step_limit": getattr(args, "step_limit", None),
        **bounds,
    }
    return apply_overrides(load_settings(), overrides)


def _emit(domain: Domain, instances: list[Instance], out: Optional[str]) -> list[str]:
    """写出领域与实例文件；out 为 None 时依次打印到标准输出。"""
    texts = [(DOMAIN_FILE, dump_domain(domain))]
    texts += [(f"{inst.name}{INSTANCE_SUFFIX}", dump_instance(inst)) for inst in instances]
    if out is None:
        sys.stdout.write("\n".join(text for _, text in texts))
        return [name for name, _ in texts]
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in texts:
        (directory / name).write_text(text, encoding="utf-8")
    return [str(directory / name) for name, _ in texts]


def _fail(report: RunReport, error: Exception) -> tuple[int, RunReport]:
    print(f"❌ {error}", file=sys.stderr)
    report.status = "error"
    report.exit_code = EXIT_ERROR
    report.stats = {"error": str(error)}
    return EXIT_ERROR, report


def create_parser() -> argparse.ArgumentParser:
    """创建参数解析器。

    Returns:
        解析器实例
    """
    parser = _ArgumentParser(
        prog="gp-synth",
        description="广义规划程序合成工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  gp-synth list                                            # 列出内置基准
  gp-synth synth --domain triangular-sum --lines 6 --eval f5
  gp-synth validate --domain visitall --corpus --set validation
  gp-synth gen --domain find --set synthesis --seed 7 --out find/
  gp-synth translate --pddl-domain domain.pddl --pddl-problem p1.pddl --out bw/
        """,
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="输出调试日志",
    )

    subparsers = parser.add_subparsers(dest="command", help="子命令")

    # synth 子命令
    synth_parser = subparsers.add_parser(
        "synth",
        help="用 BFGP 合成程序",
        description="在合成实例集上搜索能求解全部实例的规划程序",
    )
    _add_domain_arguments(synth_parser)
    synth_parser.add_argument("--lines", type=int, help="程序行数 n（默认取基准配置）")
    synth_parser.add_argument("--eval", help="评估键，如 f5 或 f5,f7")
    synth_parser.add_argument("--timeout", type=float, help="时间上限，单位秒")
    synth_parser.add_argument("--max-nodes", dest="max_nodes", type=int, help="open 表节点上限")
    synth_parser.add_argument("--bound", type=int, help="数值上界（默认 100）")
    synth_parser.add_argument(
        "--no-infinite-detection",
        dest="infinite_detection",
        action="store_false",
        help="合成时关闭死循环检测",
    )
    synth_parser.add_argument("output", nargs="?", help="把解程序写入该文件")

    # validate 子命令
    validate_parser = subparsers.add_parser(
        "validate",
        help="在实例集上验证程序",
        description="逐个实例执行程序，遇到第一个失败的实例即停止",
    )
    _add_domain_arguments(validate_parser)
    program_group = validate_parser.add_mutually_exclusive_group()
    program_group.add_argument("--program", help="程序文件")
    program_group.add_argument("--corpus", action="store_true", help="使用该领域的回归程序")
    validate_parser.add_argument(
        "--set",
        dest="instance_set",
        choices=INSTANCE_SETS,
        default="validation",
        help="实例集 (默认: validation)",
    )
    validate_parser.add_argument("--bound", type=int, help="数值上界（默认 10^9）")
    validate_parser.add_argument(
        "--infinite-detection",
        dest="infinite_detection",
        choices=("on", "off"),
        default="off",
        help="死循环检测 (默认: off)",
    )
    validate_parser.add_argument("--step-limit", dest="step_limit", type=int, help="步数上限")

    # gen 子命令
    gen_parser = subparsers.add_parser(
        "gen",
        help="生成领域与实例文件",
        description="按基准的规模序列生成实例；相同种子输出逐字节一致",
    )
    gen_parser.add_argument("--domain", required=True, help="内置领域名")
    gen_parser.add_argument("--count", type=int, help="实例数")
    gen_parser.add_argument("--seed", type=int, help="随机种子")
    gen_parser.add_argument(
        "--set",
        dest="instance_set",
        choices=INSTANCE_SETS,
        default="synthesis",
        help="实例集 (默认: synthesis)",
    )
    gen_parser.add_argument(
        "--goal-style",
        dest="goal_style",
        choices=GOAL_STYLES,
        default="partial",
        help="目标形式 (默认: partial)",
    )
    gen_parser.add_argument("--out", help="输出目录（默认打印到标准输出）")
    gen_parser.add_argument("--json", help="把报告写成 JSON；- 表示标准输出")

    # translate 子命令
    translate_parser = subparsers.add_parser(
        "translate",
        help="把 STRIPS PDDL 翻译成指针表示",
        description="读取 PDDL 领域与问题，输出 domain.gpd 与实例文件",
    )
    translate_parser.add_argument("--pddl-domain", dest="pddl_domain", required=True)
    translate_parser.add_argument("--pddl-problem", dest="pddl_problems", nargs="+", default=[])
    translate_parser.add_argument("--pointers", help="每种类型的指针数，如 ball:1,room:2")
    translate_parser.add_argument("--out", help="输出目录（默认打印到标准输出）")
    translate_parser.add_argument("--json", help="把报告写成 JSON；- 表示标准输出")

    # list 子命令
    subparsers.add_parser("list", help="列出内置基准")

    return parser


def _add_domain_arguments(subparser: argparse.ArgumentParser) -> None:
    subparser.add_argument("--domain", required=True, help="内置领域名，或含 domain.gpd 的目录")
    subparser.add_argument("--pointers", help="指针数 k，或 type:count,...")
    subparser.add_argument("--count", type=int, help="实例数")
    subparser.add_argument("--seed", type=int, help="随机种子")
    subparser.add_argument("--json", help="把报告写成 JSON；- 表示标准输出")


def cmd_synth(args: argparse.Namespace) -> tuple[int, RunReport]:
    """处理 synth 子命令。

    Args:
        args: 解析后的命令行参数

    Returns:
        (退出码, 报告)
    """
    report = RunReport("synth")
    try:
        settings = _settings(args, synthesis_bound=args.bound)
        source = load_source(args.domain)
        pointers = resolve_pointers(args.pointers, source)
        ext = build_extended_domain(source.domain, pointers)
        lines = args.lines or (source.spec.lines if source.spec else None)
        if lines is None:
            raise DomainDefinitionError("请用 --lines 指定程序行数")
        instances = select_instances(source, "synthesis", args.count, settings.seed)
        detection = settings.infinite_detection_synthesis and args.infinite_detection
        config = ExecutionConfig(
            value_bound=settings.synthesis_bound,
            infinite_detection=detection,
            step_limit=settings.step_limit,
        )
        limits = SearchLimits(timeout=settings.timeout, max_nodes=settings.max_nodes)
        report.arguments = {
            "domain": source.name,
            "lines": lines,
            "pointers": [str(p) for p in pointers],
            "eval": list(settings.eval_key),
            "timeout": settings.timeout,
            "max_nodes": settings.max_nodes,
            "bound": settings.synthesis_bound,
            "infinite_detection": detection,
            "seed": settings.seed,
            "instances": [inst.name for inst in instances],
        }
        solution, stats = bfgp(instances, ext, lines, settings.eval_key, limits, config)
    except INPUT_ERRORS as e:
        return _fail(report, e)

    report.stats = stats.to_dict()
    report.status = stats.status.value
    if solution is None:
        print(
            f"❌ 未找到解: {stats.status.value}（扩展 {stats.expanded}，评估 {stats.evaluated}）",
            file=sys.stderr,
        )
        report.exit_code = EXIT_NO_SOLUTION
        return EXIT_NO_SOLUTION, report

    text = print_program(solution, ext)
    report.solution = text
    print(
        f"✅ 找到解（扩展 {stats.expanded}，评估 {stats.evaluated}，用时 {stats.elapsed:.2f}s）"
    )
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as e:
            return _fail(report, e)
        print(f"程序已写入 {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK, report


def _load_program(
    args: argparse.Namespace, source: ProblemSource, ext: ExtendedDomain
) -> PlanningProgram:
    if args.program:
        return parse_program(Path(args.program).read_text(encoding="utf-8"), ext)
    if args.corpus:
        return corpus_program(source.name, ext)
    raise DomainDefinitionError("请用 --program 或 --corpus 指定程序")


def cmd_validate(args: argparse.Namespace) -> tuple[int, RunReport]:
    """处理 validate 子命令。

    每个实例报告 CPU 时间与进程常驻内存峰值，遇到第一个失败的实例即返回 3。

    Args:
        args: 解析后的命令行参数

    Returns:
        (退出码, 报告)
    """
    report = RunReport("validate")
    try:
        settings = _settings(args, validation_bound=args.bound)
        source = load_source(args.domain)
        pointers = resolve_pointers(args.pointers, source)
        ext = build_extended_domain(source.domain, pointers)
        program = _load_program(args, source, ext)
        instances = select_instances(source, args.instance_set, args.count, settings.seed)
        config = ExecutionConfig(
            value_bound=settings.validation_bound,
            infinite_detection=args.infinite_detection == "on",
            step_limit=settings.step_limit,
        )
        report.arguments = {
            "domain": source.name,
            "program": args.program or "corpus",
            "pointers": [str(p) for p in pointers],
            "set": args.instance_set,
            "bound": settings.validation_bound,
            "infinite_detection": args.infinite_detection == "on",
            "step_limit": settings.step_limit,
            "seed": settings.seed,
        }
    except INPUT_ERRORS as e:
        return _fail(report, e)

    interpreter = Interpreter(ext, config)
    process = psutil.Process()
    peak_memory = 0
    total_cpu = 0.0
    for instance in instances:
        start = time.process_time()
        outcome = interpreter.run(program, instance)
        cpu_time = time.process_time() - start
        total_cpu += cpu_time
        peak_memory = max(peak_memory, process.memory_info().rss)
        report.instances.append(
            {
                "instance": instance.name,
                **outcome.to_dict(),
                "cpu_time": round(cpu_time, 6),
                "peak_memory": peak_memory,
            }
        )
        if not isinstance(outcome, Solved):
            reason = report.instances[-1].get("reason", report.instances[-1]["status"])
            print(f"❌ 实例 {instance.name} 未求解: {reason}", file=sys.stderr)
            report.status = "failed"
            report.exit_code = EXIT_VALIDATION_FAILED
            return EXIT_VALIDATION_FAILED, report

    report.status = "solved"
    print(f"✅ 全部 {len(instances)} 个实例求解（CPU {total_cpu:.2f}s）")
    return EXIT_OK, report


def cmd_gen(args: argparse.Namespace) -> tuple[int, RunReport]:
    """处理 gen 子命令。"""
    report = RunReport("gen")
    try:
        settings = _settings(args)
        domain = builtin_domain(args.domain)
        instances = generate_instances(
            args.domain,
            count=args.count,
            seed=settings.seed,
            instance_set=args.instance_set,
            goal_style=args.goal_style,
        )
        report.arguments = {
            "domain": args.domain,
            "set": args.instance_set,
            "count": len(instances),
            "seed": settings.seed,
            "goal_style": args.goal_style,
        }
        written = _emit(domain, instances, args.out)
    except INPUT_ERRORS as e:
        return _fail(report, e)

    report.status = "ok"
    report.instances = [{"file": name} for name in written]
    if args.out:
        print(f"✅ 已写入 {len(written)} 个文件到 {args.out}")
    return EXIT_OK, report


def cmd_translate(args: argparse.Namespace) -> tuple[int, RunReport]:
    """处理 translate 子命令。"""
    report = RunReport("translate")
    try:
        domain_text = Path(args.pddl_domain).read_text(encoding="utf-8")
        problem_texts = [Path(p).read_text(encoding="utf-8") for p in args.pddl_problems]
        model = parse_pddl(domain_text, *problem_texts)
        counts = parse_pointer_counts(args.pointers) if args.pointers else None
        domain, instances = translate(model, counts)
        report.arguments = {
            "pddl_domain": args.pddl_domain,
            "pddl_problems": list(args.pddl_problems),
            "pointers": [str(p) for p in domain.default_pointers],
        }
        written = _emit(domain, instances, args.out)
    except INPUT_ERRORS as e:
        return _fail(report, e)

    report.status = "ok"
    report.instances = [{"file": name} for name in written]
    if args.out:
        print(f"✅ 已写入 {len(written)} 个文件到 {args.out}")
    return EXIT_OK, report


def cmd_list() -> int:
    """列出所有基准。"""
    names = benchmark_loader.list_available()

    print("可用基准:")
    print("-" * 60)
    for name in names:
        try:
            spec = benchmark_loader.load(name)
            schedule = spec.validation
            print(
                f"  {name:16} n={spec.lines:<3} |Z|={spec.pointer_count:<2} "
                f"验证 {schedule.start}..{schedule.last} ×{schedule.count}"
            )
            if spec.description:
                print(f"  {'':16} {spec.description}")
        except INPUT_ERRORS:
            print(f"  {name:16} [加载失败]")

    print()
    print(f"总计: {len(names)} 个基准")
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], tuple[int, RunReport]]] = {
    "synth": cmd_synth,
    "validate": cmd_validate,
    "gen": cmd_gen,
    "translate": cmd_translate,
}


def main(args: Optional[list[str]] = None) -> int:
    """主入口函数。

    Args:
        args: 命令行参数

    Returns:
        退出码
    """
    parser = create_parser()
    parsed_args = parser.parse_args(args)

    logging.basicConfig(
        level=logging.DEBUG if parsed_args.debug else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        if parsed_args.command == "list":
            return cmd_list()
        handler = COMMANDS.get(parsed_args.command)
        if handler is None:
            parser.print_help()
            return EXIT_ERROR

        code, report = handler(parsed_args)
        if parsed_args.json:
            report.write(parsed_args.json)
        return code

    except KeyboardInterrupt:
        print("\n取消")
        return 130
    except OSError as e:
        print(f"❌ 无法写出报告: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
