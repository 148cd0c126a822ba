"""程序解释器。

在实例上确定性地执行（部分）规划程序：
- 动作行：前提成立时同时应用效果，否则为空操作，均前进一行
- RAM 指令：更新指针或读取变量，并总是由结果 res 更新标志
- goto(t, F)：当前标志 ≠ F 时跳到 t，否则顺序执行
- end：检查目标；未定义行：停止并报告到达的行

每个实例的指令都预先编译成闭包 ``f(values, pointers) -> res``，
动作模式返回 None（不影响标志）。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Union

from gp_synth.model.domain import Instance
from gp_synth.model.expressions import Locator, Term, compile_condition, compile_expression
from gp_synth.model.instructions import ExtendedDomain, Instruction, Opcode
from gp_synth.model.state import (
    DeviationFn,
    Flags,
    GoalFn,
    State,
    VariableRegistry,
    compile_deviation,
    compile_goal,
    flags_code,
    make_initial_state,
)
from gp_synth.program.program import ActionLine, EndLine, GotoLine, PlanningProgram

logger = logging.getLogger(__name__)

Executor = Callable[[list[int], list[int]], Optional[int]]

_ACTION, _GOTO, _END, _UNDEFINED = range(4)


class FailureReason(Enum):
    """执行失败的原因。"""

    INCORRECT = "incorrect"
    INFINITE = "infinite"
    BOUND_EXCEEDED = "bound-exceeded"
    STEP_LIMIT = "step-limit"


@dataclass(frozen=True)
class Solved:
    """在 end 行终止且满足目标。plan 只在 record_plan 开启时记录。"""

    plan: tuple[int, ...]
    state: State
    steps: int
    plan_length: int

    def to_dict(self) -> dict[str, object]:
        return {"status": "solved", "steps": self.steps, "plan_length": self.plan_length}


@dataclass(frozen=True)
class Failed:
    reason: FailureReason
    line: int
    steps: int
    plan_length: int

    def to_dict(self) -> dict[str, object]:
        return {
            "status": "failed",
            "reason": self.reason.value,
            "line": self.line,
            "steps": self.steps,
            "plan_length": self.plan_length,
        }


@dataclass(frozen=True)
class ReachedUndefined:
    """执行到达未定义行。"""

    line: int
    state: State
    steps: int
    plan_length: int

    def to_dict(self) -> dict[str, object]:
        return {
            "status": "undefined",
            "line": self.line,
            "steps": self.steps,
            "plan_length": self.plan_length,
        }


ExecutionOutcome = Union[Solved, Failed, ReachedUndefined]


@dataclass
class ExecutionConfig:
    """执行配置。

    Attributes:
        value_bound: 算术结果的上界，超出即失败
        infinite_detection: 是否记录程序状态以检测死循环
        step_limit: 关闭检测时的步数上限
        record_plan: 是否记录执行过的指令序列
    """

    value_bound: int = 100
    infinite_detection: bool = True
    step_limit: int = 10**7
    record_plan: bool = False

    def __post_init__(self) -> None:
        if self.value_bound <= 0:
            raise ValueError("value_bound 必须为正")
        if self.step_limit <= 0:
            raise ValueError("step_limit 必须为正")


class _BoundExceeded(Exception):
    pass


# ============ 编译 ============
@dataclass
class CompiledInstance:
    """编译后的实例：初值、指令闭包与目标检查。"""

    instance: Instance
    registry: VariableRegistry
    initial_values: tuple[int, ...]
    executors: list[Executor]
    goal: GoalFn
    pointer_names: tuple[str, ...]
    _deviation: Optional[DeviationFn] = field(default=None, repr=False)

    def deviation(self) -> DeviationFn:
        if self._deviation is None:
            self._deviation = compile_deviation(
                self.instance.goal, self.registry, self.pointer_names.index
            )
        return self._deviation


def _pointer_executor(instruction: Instruction, ext: ExtendedDomain, counts: dict[str, int]) -> Executor:
    op = instruction.opcode
    p = ext.pointer_index(instruction.pointers[0])
    if op is Opcode.INC:
        hi = counts.get(ext.pointers[p].object_type, 0) - 1

        def inc(vals: list[int], ptrs: list[int]) -> int:
            v = ptrs[p]
            if v < hi:
                ptrs[p] = v + 1
                return v + 1
            return 0

        return inc
    if op is Opcode.DEC:

        def dec(vals: list[int], ptrs: list[int]) -> int:
            v = ptrs[p]
            if v > 0:
                ptrs[p] = v - 1
                return v - 1
            return 0

        return dec
    q = ext.pointer_index(instruction.pointers[1])
    if op is Opcode.CMP_POINTERS:
        return lambda vals, ptrs: ptrs[p] - ptrs[q]

    def assign(vals: list[int], ptrs: list[int]) -> int:
        ptrs[p] = ptrs[q]
        return ptrs[q]

    return assign


def _schema_executor(
    instruction: Instruction, ext: ExtendedDomain, registry: VariableRegistry, bound: int
) -> Executor:
    schema = ext.schema(instruction.schema or "")
    binding = {
        param.name: ext.pointer_index(arg) for param, arg in zip(schema.params, instruction.pointers)
    }
    pointer_index = binding.__getitem__

    def locate(term: Term) -> Locator:
        return registry.locator(term, pointer_index)

    pre = compile_condition(schema.pre, locate, pointer_index)
    effects = [
        (
            locate(effect.target),
            compile_expression(effect.value, locate, pointer_index),
            bound if ext.domain.function(effect.target.function).is_numeric else 1,
        )
        for effect in schema.effects
    ]

    def apply(vals: list[int], ptrs: list[int]) -> None:
        if not pre(vals, ptrs):
            return None
        updates = [(loc(ptrs), value(vals, ptrs), limit) for loc, value, limit in effects]
        for index, v, limit in updates:
            if v < 0 or v > limit:
                raise _BoundExceeded()
            vals[index] = v
        return None

    return apply


def compile_instruction(
    instruction: Instruction,
    ext: ExtendedDomain,
    registry: VariableRegistry,
    counts: dict[str, int],
    bound: int,
) -> Executor:
    """把一条指令编译为闭包。"""
    op = instruction.opcode
    if op is Opcode.SCHEMA:
        return _schema_executor(instruction, ext, registry, bound)
    if op is Opcode.TEST:
        loc = registry.locator(instruction.terms[0], ext.pointer_index)
        return lambda vals, ptrs: vals[loc(ptrs)]
    if op is Opcode.CMP_FUNCTIONS:
        left = registry.locator(instruction.terms[0], ext.pointer_index)
        right = registry.locator(instruction.terms[1], ext.pointer_index)
        return lambda vals, ptrs: vals[left(ptrs)] - vals[right(ptrs)]
    return _pointer_executor(instruction, ext, counts)


def _compile_lines(program: PlanningProgram) -> list[tuple[int, int, int]]:
    compiled = []
    for line in program.lines:
        if isinstance(line, ActionLine):
            compiled.append((_ACTION, line.instruction, 0))
        elif isinstance(line, GotoLine):
            compiled.append((_GOTO, line.target, int(line.feature)))
        elif isinstance(line, EndLine):
            compiled.append((_END, 0, 0))
        else:
            compiled.append((_UNDEFINED, 0, 0))
    return compiled


# ============ 执行 ============
class Execution:
    """一次执行：程序状态 (s, i) 以及单步推进。"""

    def __init__(
        self,
        compiled: CompiledInstance,
        program: PlanningProgram,
        config: ExecutionConfig,
        lines: Optional[list[tuple[int, int, int]]] = None,
    ):
        self._compiled = compiled
        self._executors = compiled.executors
        self._lines = lines if lines is not None else _compile_lines(program)
        self._config = config
        self._record = config.record_plan
        self._visited: Optional[set[tuple[object, ...]]] = (
            set() if config.infinite_detection else None
        )
        self.values = list(compiled.initial_values)
        self.pointers = [0] * len(compiled.pointer_names)
        self.flags_code = 0
        self.pc = 0
        self.steps = 0
        self.plan_length = 0
        self.plan: list[int] = []
        self.outcome: Optional[ExecutionOutcome] = None

    @property
    def flags(self) -> Flags:
        return Flags.from_code(self.flags_code)

    @property
    def state(self) -> State:
        return State(
            values=tuple(self.values),
            pointers=tuple(self.pointers),
            flags=self.flags,
            registry=self._compiled.registry,
            pointer_names=self._compiled.pointer_names,
        )

    def apply_instruction(self, index: int) -> Optional[int]:
        """直接执行一条指令并返回 res（动作模式返回 None）。

        Raises:
            ValueError: 结果超出 value_bound
        """
        try:
            res = self._executors[index](self.values, self.pointers)
        except _BoundExceeded:
            raise ValueError("结果超出 value_bound") from None
        if res is not None:
            self.flags_code = flags_code(res)
        return res

    def _finish(self, outcome: ExecutionOutcome) -> ExecutionOutcome:
        self.outcome = outcome
        self._visited = None
        return outcome

    def step(self) -> Optional[ExecutionOutcome]:
        """执行一行；终止时返回结果，否则返回 None。"""
        if self.outcome is not None:
            return self.outcome
        kind, a, b = self._lines[self.pc]
        if kind == _ACTION:
            try:
                res = self._executors[a](self.values, self.pointers)
            except _BoundExceeded:
                return self._finish(
                    Failed(FailureReason.BOUND_EXCEEDED, self.pc, self.steps, self.plan_length)
                )
            if res is not None:
                self.flags_code = flags_code(res)
            self.plan_length += 1
            if self._record:
                self.plan.append(a)
            self.pc += 1
        elif kind == _GOTO:
            if self.flags_code != b:
                if self._visited is not None:
                    key = (self.pc, self.flags_code, tuple(self.pointers), tuple(self.values))
                    if key in self._visited:
                        return self._finish(
                            Failed(FailureReason.INFINITE, self.pc, self.steps, self.plan_length)
                        )
                    self._visited.add(key)
                self.pc = a
            else:
                self.pc += 1
        elif kind == _END:
            if self._compiled.goal(self.values, self.pointers):
                return self._finish(
                    Solved(tuple(self.plan), self.state, self.steps, self.plan_length)
                )
            return self._finish(
                Failed(FailureReason.INCORRECT, self.pc, self.steps, self.plan_length)
            )
        else:
            return self._finish(ReachedUndefined(self.pc, self.state, self.steps, self.plan_length))

        self.steps += 1
        if self._visited is None and self.steps >= self._config.step_limit:
            return self._finish(
                Failed(FailureReason.STEP_LIMIT, self.pc, self.steps, self.plan_length)
            )
        return None

    def run(self) -> ExecutionOutcome:
        """执行到终止。"""
        step = self.step
        outcome = step()
        while outcome is None:
            outcome = step()
        return outcome


class Interpreter:
    """绑定扩展领域与执行配置的解释器，缓存编译后的实例。"""

    def __init__(self, extended_domain: ExtendedDomain, config: Optional[ExecutionConfig] = None):
        self._ext = extended_domain
        self._config = config or ExecutionConfig()
        self._cache: dict[int, CompiledInstance] = {}

    @property
    def extended_domain(self) -> ExtendedDomain:
        return self._ext

    @property
    def config(self) -> ExecutionConfig:
        return self._config

    def compile(self, instance: Instance) -> CompiledInstance:
        """编译实例（按对象身份缓存）。"""
        cached = self._cache.get(id(instance))
        if cached is not None and cached.instance is instance:
            return cached
        initial = make_initial_state(self._ext, instance)
        registry = initial.registry
        assert registry is not None
        executors = [
            compile_instruction(
                instruction, self._ext, registry, instance.object_counts, self._config.value_bound
            )
            for instruction in self._ext.instructions
        ]
        compiled = CompiledInstance(
            instance=instance,
            registry=registry,
            initial_values=initial.values,
            executors=executors,
            goal=compile_goal(instance.goal, registry, self._ext.pointer_index),
            pointer_names=self._ext.pointer_names,
        )
        self._cache[id(instance)] = compiled
        logger.debug("编译实例 %s: %d 个状态变量", instance.name, registry.size)
        return compiled

    def start(self, program: PlanningProgram, instance: Instance) -> Execution:
        return Execution(self.compile(instance), program, self._config)

    def run(self, program: PlanningProgram, instance: Instance) -> ExecutionOutcome:
        return self.start(program, instance).run()

    def run_all(
        self,
        program: PlanningProgram,
        instances: Sequence[Instance],
        short_circuit: bool = False,
    ) -> list[ExecutionOutcome]:
        """按顺序在每个实例上执行；short_circuit 时遇到第一个失败即停止。"""
        lines = _compile_lines(program)
        outcomes: list[ExecutionOutcome] = []
        for instance in instances:
            outcome = Execution(self.compile(instance), program, self._config, lines).run()
            outcomes.append(outcome)
            if short_circuit and isinstance(outcome, Failed):
                break
        return outcomes

    def replay(self, plan: Sequence[int], instance: Instance) -> State:
        """逐条重放指令序列，返回最终状态。"""
        execution = Execution(self.compile(instance), PlanningProgram.empty(1), self._config)
        for index in plan:
            execution.apply_instruction(index)
        return execution.state


def run(
    program: PlanningProgram,
    extended_domain: ExtendedDomain,
    instance: Instance,
    config: Optional[ExecutionConfig] = None,
) -> ExecutionOutcome:
    """在单个实例上执行程序。"""
    return Interpreter(extended_domain, config).run(program, instance)


def run_all(
    program: PlanningProgram,
    extended_domain: ExtendedDomain,
    instances: Sequence[Instance],
    config: Optional[ExecutionConfig] = None,
    short_circuit: bool = False,
) -> list[ExecutionOutcome]:
    """在每个实例上执行程序。"""
    return Interpreter(extended_domain, config).run_all(program, instances, short_circuit)


def replay_plan(
    plan: Sequence[int],
    extended_domain: ExtendedDomain,
    instance: Instance,
    config: Optional[ExecutionConfig] = None,
) -> State:
    """从初始状态逐条执行计划，返回最终状态。"""
    return Interpreter(extended_domain, config).replay(plan, instance)
