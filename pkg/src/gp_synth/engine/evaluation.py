"""评估函数 f1–f9。

结构函数只看程序文本：
    f1 goto 行数，f2 未定义行数，f3 重复动作数，f7 最大 goto 嵌套深度
执行函数依赖在各实例上的执行结果：
    f4 = (n-1) - max 到达的未定义行（在 end 终止的实例计为 n-1）
    f5 = Σ (v - G)²，f6 = Σ 计划长度
    f8 = f5 + f6，f9 = W·f5 + f6（W 默认 5）
所有函数都是越小越好。
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Union

from gp_synth.core.errors import UnknownEvaluationFunctionError
from gp_synth.engine.interpreter import (
    ExecutionOutcome,
    Failed,
    Interpreter,
    ReachedUndefined,
    Solved,
)
from gp_synth.model.domain import Instance
from gp_synth.program.program import ActionLine, GotoLine, PlanningProgram, UndefinedLine

EVALUATION_FUNCTIONS = ("f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9")
STRUCTURAL_FUNCTIONS = frozenset({"f1", "f2", "f3", "f7"})
DEVIATION_FUNCTIONS = frozenset({"f5", "f8", "f9"})
DEFAULT_WEIGHT = 5


class StructuralValues(NamedTuple):
    f1: int
    f2: int
    f3: int
    f7: int


class PerformanceValues(NamedTuple):
    f4: int
    f5: Optional[int]
    f6: int
    f8: Optional[int]
    f9: Optional[int]
    outcomes: list[ExecutionOutcome]
    per_instance: tuple["InstanceEvaluation", ...] = ()


@dataclass(frozen=True)
class InstanceEvaluation:
    """单个实例对 f4/f5/f6 的贡献。"""

    line: int
    deviation: Optional[int]
    plan_length: int


@dataclass(frozen=True)
class EvaluationVector:
    """一个节点的评估值；未计算的函数为 None。"""

    f1: int = 0
    f2: int = 0
    f3: int = 0
    f4: Optional[int] = None
    f5: Optional[int] = None
    f6: Optional[int] = None
    f7: int = 0
    f8: Optional[int] = None
    f9: Optional[int] = None
    per_instance: tuple[InstanceEvaluation, ...] = field(default=(), compare=False)

    def get(self, function_id: str) -> Optional[int]:
        value: Optional[int] = getattr(self, function_id)
        return value

    def key(self, function_ids: Sequence[str]) -> tuple[int, ...]:
        """按给定函数列表组成的字典序键。"""
        values = []
        for fid in function_ids:
            value = self.get(fid)
            if value is None:
                raise UnknownEvaluationFunctionError(f"评估函数 {fid} 未计算")
            values.append(value)
        return tuple(values)

    def to_dict(self) -> dict[str, object]:
        result: dict[str, object] = {
            fid: self.get(fid) for fid in EVALUATION_FUNCTIONS if self.get(fid) is not None
        }
        if self.per_instance:
            result["per_instance"] = [
                {"f4": e.line, "f5": e.deviation, "f6": e.plan_length} for e in self.per_instance
            ]
        return result


def parse_eval_key(text: Union[str, Sequence[str]]) -> tuple[str, ...]:
    """解析 ``f5,f7`` 形式的评估键。

    Raises:
        UnknownEvaluationFunctionError: 键为空或含未知函数
    """
    items = text.split(",") if isinstance(text, str) else list(text)
    key = tuple(item.strip().lower() for item in items if item.strip())
    if not key:
        raise UnknownEvaluationFunctionError("评估键不能为空")
    for fid in key:
        if fid not in EVALUATION_FUNCTIONS:
            raise UnknownEvaluationFunctionError(f"未知评估函数 '{fid}'")
    return key


# ============ 结构函数 ============
def eval_structural(program: PlanningProgram) -> StructuralValues:
    """一次遍历计算 f1、f2、f3、f7。

    f7：goto g 的深度 = 1 + 跨度 (lo, hi) 严格包含 g 所在行的其他 goto 数。
    """
    n = program.n
    gotos = 0
    undefined = 0
    repeated = 0
    seen: set[int] = set()
    cover = [0] * (n + 1)
    goto_lines: list[int] = []
    for i, line in enumerate(program.lines):
        if isinstance(line, ActionLine):
            if line.instruction in seen:
                repeated += 1
            seen.add(line.instruction)
        elif isinstance(line, GotoLine):
            gotos += 1
            goto_lines.append(i)
            lo, hi = min(i, line.target), max(i, line.target)
            if hi - lo > 1:
                cover[lo + 1] += 1
                cover[hi] -= 1
        elif isinstance(line, UndefinedLine):
            undefined += 1

    depth = 0
    running = 0
    depth_at = [0] * n
    for i in range(n):
        running += cover[i]
        depth_at[i] = running
    for g in goto_lines:
        depth = max(depth, 1 + depth_at[g])
    return StructuralValues(f1=gotos, f2=undefined, f3=repeated, f7=depth)


# ============ 执行函数 ============
def _instance_evaluation(
    outcome: ExecutionOutcome,
    n: int,
    interpreter: Interpreter,
    instance: Instance,
    with_deviation: bool,
) -> InstanceEvaluation:
    deviation: Optional[int] = None
    if with_deviation:
        measure = interpreter.compile(instance).deviation()
        deviation = 0
        if isinstance(outcome, ReachedUndefined):
            deviation = measure(outcome.state.values, outcome.state.pointers)
    line = outcome.line if isinstance(outcome, ReachedUndefined) else n - 1
    return InstanceEvaluation(line, deviation, outcome.plan_length)


def aggregate(
    evaluations: Sequence[InstanceEvaluation], n: int, weight: int = DEFAULT_WEIGHT
) -> tuple[int, Optional[int], int, Optional[int], Optional[int]]:
    """聚合各实例：f4 取最大，f5/f6 求和。"""
    f4 = (n - 1) - max((e.line for e in evaluations), default=n - 1)
    f6 = sum(e.plan_length for e in evaluations)
    if evaluations and all(e.deviation is not None for e in evaluations):
        f5: Optional[int] = sum(e.deviation or 0 for e in evaluations)
    elif not evaluations:
        f5 = 0
    else:
        f5 = None
    f8 = None if f5 is None else f5 + f6
    f9 = None if f5 is None else weight * f5 + f6
    return f4, f5, f6, f8, f9


def eval_performance(
    program: PlanningProgram,
    instances: Sequence[Instance],
    interpreter: Interpreter,
    with_deviation: bool = True,
    weight: int = DEFAULT_WEIGHT,
    outcomes: Optional[Sequence[ExecutionOutcome]] = None,
) -> PerformanceValues:
    """执行程序并计算 f4、f5、f6、f8、f9。

    Args:
        program: 程序
        instances: GP 问题的实例
        interpreter: 解释器
        with_deviation: 是否计算 f5（以及 f8、f9）
        weight: f9 的权重 W
        outcomes: 已有的执行结果；None 时重新执行

    Raises:
        GoalNotPartialStateError: with_deviation 且某个目标是约束表达式
    """
    if outcomes is None:
        outcomes = interpreter.run_all(program, instances)
    evaluations = [
        _instance_evaluation(o, program.n, interpreter, inst, with_deviation)
        for o, inst in zip(outcomes, instances)
    ]
    f4, f5, f6, f8, f9 = aggregate(evaluations, program.n, weight)
    return PerformanceValues(f4, f5, f6, f8, f9, list(outcomes), tuple(evaluations))


def evaluate(
    program: PlanningProgram,
    instances: Sequence[Instance],
    interpreter: Interpreter,
    key: Sequence[str] = EVALUATION_FUNCTIONS,
    weight: int = DEFAULT_WEIGHT,
    outcomes: Optional[Sequence[ExecutionOutcome]] = None,
) -> EvaluationVector:
    """计算评估向量。只有 key 需要时才计算目标偏差。"""
    structural = eval_structural(program)
    needs_performance = any(fid not in STRUCTURAL_FUNCTIONS for fid in key)
    if not needs_performance and outcomes is None:
        return EvaluationVector(
            f1=structural.f1, f2=structural.f2, f3=structural.f3, f7=structural.f7
        )
    with_deviation = any(fid in DEVIATION_FUNCTIONS for fid in key)
    performance = eval_performance(
        program, instances, interpreter, with_deviation, weight, outcomes
    )
    f4, f5, f6, f8, f9, _, _ = performance
    return EvaluationVector(
        f1=structural.f1,
        f2=structural.f2,
        f3=structural.f3,
        f4=f4,
        f5=f5,
        f6=f6,
        f7=structural.f7,
        f8=f8,
        f9=f9,
        per_instance=performance.per_instance,
    )


def compare(a: EvaluationVector, b: EvaluationVector, key: Sequence[str]) -> int:
    """按 key 字典序比较：a 更好返回 -1，相同返回 0，更差返回 1。

    相同时由调用方按插入顺序（FIFO）决定。
    """
    ka, kb = a.key(key), b.key(key)
    if ka < kb:
        return -1
    return 1 if ka > kb else 0


def has_failure(outcomes: Sequence[ExecutionOutcome]) -> bool:
    return any(isinstance(o, Failed) for o in outcomes)
