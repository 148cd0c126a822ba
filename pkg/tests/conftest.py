"""pytest 配置和共享 fixtures"""

from pathlib import Path

import pytest

PDDL_DIR = Path(__file__).resolve().parent.parent / "benchmarks" / "pddl"

TOY_DOMAIN = """\
DOMAIN toy
TYPES cell
FUNCTION bool painted(cell)
SCHEMA paint(x:cell)
EFF painted(x) := 1
POINTERS i:cell
"""


# ============ 命令行选项 ============
def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="运行标记为 slow 的测试",
    )


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# ============ 单例重置 fixtures ============
@pytest.fixture(autouse=True)
def reset_singletons():
    """自动重置注册表与基准缓存（每个测试前后）"""
    from gp_synth.domains.loader import benchmark_loader
    from gp_synth.domains.registry import BenchmarkRegistry

    BenchmarkRegistry.reset()
    benchmark_loader.clear_cache()
    yield
    BenchmarkRegistry.reset()
    benchmark_loader.clear_cache()


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path: Path):
    """在临时目录中运行，避免读到真实的配置文件与环境变量"""
    from gp_synth.config.settings import ENV_OVERRIDES

    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path / "home"))
    for var in ENV_OVERRIDES:
        monkeypatch.delenv(var, raising=False)


# ============ 排序领域 fixtures ============
@pytest.fixture
def sorting_ext():
    """排序领域，两个指针 i、j"""
    from gp_synth.domains import builtin_extended_domain

    return builtin_extended_domain("sorting")


def make_vector_instance(name: str, values: list[int], goal: list[int]):
    from gp_synth.model import Instance, PartialGoal
    from gp_synth.model.expressions import Assignment, Term

    return Instance(
        name,
        {"cell": len(values)},
        tuple(Assignment(Term("vector", (i,)), v) for i, v in enumerate(values)),
        PartialGoal(tuple(Assignment(Term("vector", (i,)), v) for i, v in enumerate(goal))),
    )


@pytest.fixture
def sorting_instances():
    """两个 6 元素排序实例"""
    p1 = [6, 3, 4, 2, 5, 1]
    p2 = [2, 6, 1, 4, 3, 5]
    return [
        make_vector_instance("p1", p1, sorted(p1)),
        make_vector_instance("p2", p2, sorted(p2)),
    ]


@pytest.fixture
def worked_program_text() -> str:
    """6 行部分排序程序，第 4 行未定义"""
    return """\
0. swap(i,j)
1. inc(i)
2. dec(j)
3. goto(2, !(Yz&!Yc))
4. --
5. end
"""


# ============ 玩具领域 fixtures ============
@pytest.fixture
def toy_ext():
    """单指针、单个布尔函数 painted 的玩具领域"""
    from gp_synth.model import build_extended_domain, parse_domain

    return build_extended_domain(parse_domain(TOY_DOMAIN))


def make_toy_instance(size: int):
    from gp_synth.model import Instance, PartialGoal
    from gp_synth.model.expressions import Assignment, Term

    return Instance(
        f"toy-{size}",
        {"cell": size},
        (),
        PartialGoal(tuple(Assignment(Term("painted", (i,)), 1) for i in range(size))),
    )


@pytest.fixture
def toy_instances():
    """2 格与 3 格的玩具实例"""
    return [make_toy_instance(2), make_toy_instance(3)]


# ============ 文件 fixtures ============
@pytest.fixture
def pddl_dir() -> Path:
    """随仓库提供的 PDDL 样例目录"""
    return PDDL_DIR


@pytest.fixture
def invalid_yaml_file(tmp_path: Path) -> Path:
    """创建无效的 YAML 文件"""
    invalid_file = tmp_path / "invalid.yaml"
    invalid_file.write_text("{ invalid yaml content: ")
    return invalid_file


@pytest.fixture
def vector_instance():
    """构造单个向量实例的工厂"""
    return make_vector_instance


@pytest.fixture
def toy_instance():
    """构造玩具实例的工厂"""
    return make_toy_instance


def make_random_program(rng, n: int, instruction_count: int, undefined_rate: float = 0.2):
    """随机程序：动作、跳转与未定义行按比例混合，最后一行为 end"""
    from gp_synth.program import (
        Feature,
        PlanningProgram,
        program_line_action,
        program_line_goto,
        valid_goto_targets,
    )

    program = PlanningProgram.empty(n)
    for line in range(n - 1):
        choice = rng.random()
        if choice < undefined_rate:
            continue
        targets = valid_goto_targets(n, line)
        if choice < undefined_rate + 0.3 and targets:
            feature = Feature(rng.randrange(4))
            program = program_line_goto(program, line, rng.choice(targets), feature)
        else:
            program = program_line_action(program, line, rng.randrange(instruction_count))
    return program


@pytest.fixture
def random_program():
    """构造随机程序的工厂"""
    return make_random_program
