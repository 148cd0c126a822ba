"""带种子的随机实例生成器。

每个生成器按规模 s 生成一个实例，随机数只来自传入的 random.Random，
因此 (领域, 数量, 种子) 相同则实例序列相同。
"""

import logging
import random
from typing import Optional

from gp_synth.domains.loader import BenchmarkLoader, BenchmarkSpec, benchmark_loader
from gp_synth.domains.registry import BenchmarkRegistry, InstanceGenerator
from gp_synth.model.domain import ConstraintGoal, Goal, Instance, PartialGoal
from gp_synth.model.expressions import TRUE, Assignment, BoolOp, Comparison, Term

logger = logging.getLogger(__name__)

GOAL_STYLES = ("partial", "constraint")


def _vector(values: list[int]) -> tuple[Assignment, ...]:
    return tuple(Assignment(Term("vector", (i,)), v) for i, v in enumerate(values))


def _ones(function: str, args_list: list[tuple[int, ...]]) -> tuple[Assignment, ...]:
    return tuple(Assignment(Term(function, args), 1) for args in args_list)


def _cells(name: str, size: int, init: list[int], goal: Goal) -> Instance:
    return Instance(f"{name}-{size}", {"cell": len(init)}, _vector(init), goal)


def _only_partial(name: str, goal_style: str) -> None:
    if goal_style != "partial":
        raise ValueError(f"领域 '{name}' 只支持部分状态目标")


# ============ 向量领域 ============
def generate_sorting(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    values = [rng.randrange(max_value) for _ in range(size)]
    goal: Goal
    if goal_style == "constraint":
        chain = tuple(
            Comparison("<=", Term("vector", (i,)), Term("vector", (i + 1,)))
            for i in range(size - 1)
        )
        goal = ConstraintGoal(BoolOp("&", chain) if chain else TRUE)
    else:
        goal = PartialGoal(_vector(sorted(values)))
    return _cells("sorting", size, values, goal)


def generate_reverse(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    _only_partial("reverse", goal_style)
    values = [rng.randrange(max_value) for _ in range(size)]
    return _cells("reverse", size, values, PartialGoal(_vector(values[::-1])))


def generate_select(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    """目标 vector(b)=min：b 最终指向最小值。"""
    _only_partial("select", goal_style)
    values = [rng.randrange(max_value) for _ in range(size)]
    goal = PartialGoal((Assignment(Term("vector", ("b",)), min(values)),))
    return _cells("select", size, values, goal)


def generate_find(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    """统计与 vector(0) 相等的元素个数（含自身）。"""
    _only_partial("find", goal_style)
    values = [rng.randrange(max_value) for _ in range(size)]
    goal = PartialGoal((Assignment(Term("count", (0,)), values.count(values[0])),))
    init = _vector(values) + (Assignment(Term("count", (0,)), 0),)
    return Instance(f"find-{size}", {"cell": size, "counter": 1}, init, goal)


def generate_triangular_sum(
    size: int, rng: random.Random, max_value: int, goal_style: str
) -> Instance:
    _only_partial("triangular-sum", goal_style)
    goal = PartialGoal((Assignment(Term("vector", (0,)), size * (size + 1) // 2),))
    return _cells("triangular-sum", size, [0, size], goal)


def fibonacci_number(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def generate_fibonacci(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    _only_partial("fibonacci", goal_style)
    init = [0, 1] + [0] * (size - 1)
    goal = PartialGoal((Assignment(Term("vector", (size,)), fibonacci_number(size)),))
    return _cells("fibonacci", size, init, goal)


def generate_corridor(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    """两格向量 [agent, target]，位置都在 [0, size)。"""
    _only_partial("corridor", goal_style)
    agent, target = rng.randrange(size), rng.randrange(size)
    goal = PartialGoal((Assignment(Term("vector", (0,)), target),))
    return _cells("corridor", size, [agent, target], goal)


# ============ STRIPS 风格领域 ============
def generate_visitall(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    _only_partial("visitall", goal_style)
    cells = [(r, c) for r in range(size) for c in range(size)]
    return Instance(
        f"visitall-{size}",
        {"row": size, "column": size},
        _ones("visited", [(0, 0)]),
        PartialGoal(_ones("visited", cells)),
    )


def generate_gripper(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    """两个房间、size 个球（都在房间 0）、两只手。"""
    _only_partial("gripper", goal_style)
    balls = range(size)
    init = (
        _ones("at-robby", [(0,)])
        + _ones("at", [(b, 0) for b in balls])
        + _ones("free", [(0,), (1,)])
    )
    return Instance(
        f"gripper-{size}",
        {"room": 2, "ball": size, "gripper": 2},
        init,
        PartialGoal(_ones("at", [(b, 1) for b in balls])),
    )


def random_towers(size: int, rng: random.Random) -> list[list[int]]:
    """把 size 个积木随机分成若干塔，每座塔自底向上列出。"""
    order = list(range(size))
    rng.shuffle(order)
    towers: list[list[int]] = []
    for block in order:
        if not towers or rng.random() < 0.5:
            towers.append([block])
        else:
            towers[-1].append(block)
    return towers


def generate_blocks_ontable(
    size: int, rng: random.Random, max_value: int, goal_style: str
) -> Instance:
    _only_partial("blocks-ontable", goal_style)
    towers = random_towers(size, rng)
    init = _ones("handempty", [()])
    for tower in towers:
        init += _ones("ontable", [(tower[0],)])
        init += _ones("on", [(upper, lower) for lower, upper in zip(tower, tower[1:])])
        init += _ones("clear", [(tower[-1],)])
    return Instance(
        f"blocks-ontable-{size}",
        {"block": size},
        init,
        PartialGoal(_ones("ontable", [(b,) for b in range(size)])),
    )


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    return all(x % d for d in range(2, int(x**0.5) + 1))


def generate_sieve(size: int, rng: random.Random, max_value: int, goal_style: str) -> Instance:
    """size 个数，初始全部标记为素数；目标只约束 2 ≤ x < size。"""
    _only_partial("sieve", goal_style)
    goal = PartialGoal(
        tuple(Assignment(Term("prime", (x,)), int(is_prime(x))) for x in range(2, size))
    )
    return Instance(
        f"sieve-{size}", {"number": size}, _ones("prime", [(x,) for x in range(size)]), goal
    )


BUILTIN_GENERATORS: dict[str, InstanceGenerator] = {
    "sorting": generate_sorting,
    "reverse": generate_reverse,
    "select": generate_select,
    "find": generate_find,
    "triangular-sum": generate_triangular_sum,
    "fibonacci": generate_fibonacci,
    "corridor": generate_corridor,
    "visitall": generate_visitall,
    "gripper": generate_gripper,
    "blocks-ontable": generate_blocks_ontable,
    "sieve": generate_sieve,
}


def generate_instances(
    name: str,
    count: Optional[int] = None,
    seed: Optional[int] = None,
    instance_set: str = "synthesis",
    goal_style: str = "partial",
    loader: Optional[BenchmarkLoader] = None,
    spec: Optional[BenchmarkSpec] = None,
) -> list[Instance]:
    """按基准的规模序列生成实例。

    Args:
        name: 领域名
        count: 实例数；None 表示整个规模序列，否则取序列的前 count 个规模
        seed: 随机种子；None 表示使用基准配置的种子
        instance_set: "synthesis" 或 "validation"
        goal_style: "partial" 或 "constraint"（仅 sorting）
        loader: 基准加载器
        spec: 直接给定的基准配置

    Raises:
        UnknownDomainError: 领域未注册
        ValueError: count < 1、实例集或目标形式未知
    """
    if goal_style not in GOAL_STYLES:
        raise ValueError(f"未知目标形式 '{goal_style}'，可选: {', '.join(GOAL_STYLES)}")
    if count is not None and count < 1:
        raise ValueError("count 必须 ≥ 1")
    generator = BenchmarkRegistry.get(name)
    spec = spec or (loader or benchmark_loader).load(name)
    schedule = spec.schedule(instance_set)
    rng = random.Random(spec.seed if seed is None else seed)
    sizes = schedule.sizes(count)
    logger.debug("生成 %s %s 实例 %d 个（规模 %d..%d）", name, instance_set, len(sizes), sizes[0], sizes[-1])
    return [generator(size, rng, schedule.max_value, goal_style) for size in sizes]
