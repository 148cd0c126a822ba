"""BFGP 最佳优先搜索。

搜索空间的节点是部分程序，根节点为空程序。每次扩展只给
「各实例执行到达的最大未定义行」编程：先是 A′_Z 中的每条指令，
若上一行是 RAM 指令，再加上所有合法的 (目标, 特征) 跳转。
子节点在所有实例上执行：失败的是死节点直接丢弃，全部求解即返回。

只保存 open 表（frontier search），不保存 closed 表：
每条边恰好给一行编程，不会生成重复节点。
"""

import heapq
import itertools
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator, Optional, Sequence, Union

import psutil

from gp_synth.engine.evaluation import DEFAULT_WEIGHT, EvaluationVector, evaluate, parse_eval_key
from gp_synth.engine.interpreter import (
    ExecutionConfig,
    ExecutionOutcome,
    Failed,
    Interpreter,
    ReachedUndefined,
    Solved,
)
from gp_synth.model.domain import Instance
from gp_synth.model.instructions import ExtendedDomain
from gp_synth.program.program import (
    ActionLine,
    Feature,
    PlanningProgram,
    program_line_action,
    program_line_goto,
    valid_goto_targets,
)

logger = logging.getLogger(__name__)

DEFAULT_EVAL_KEY = ("f5", "f7")
MEMORY_SAMPLE_INTERVAL = 256


class SearchStatus(Enum):
    """搜索结束时的状态。"""

    RUNNING = "running"
    SOLVED = "solved"
    EXHAUSTED = "exhausted"
    TIMEOUT = "timeout"
    MEMORY_LIMIT = "memory-limit"


@dataclass
class SearchLimits:
    """搜索限制。

    Attributes:
        timeout: 墙钟时间上限（秒）
        max_nodes: open 表的节点数上限，超出视为内存耗尽
    """

    timeout: float = 3600.0
    max_nodes: int = 5_000_000

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("timeout 必须为正")
        if self.max_nodes <= 0:
            raise ValueError("max_nodes 必须为正")


@dataclass
class SearchStats:
    expanded: int = 0
    evaluated: int = 0
    elapsed: float = 0.0
    peak_memory: int = 0
    open_size: int = 0
    status: SearchStatus = SearchStatus.RUNNING

    def to_dict(self) -> dict[str, object]:
        return {
            "status": self.status.value,
            "expanded": self.expanded,
            "evaluated": self.evaluated,
            "elapsed": round(self.elapsed, 3),
            "peak_memory": self.peak_memory,
            "open_size": self.open_size,
        }


@dataclass(frozen=True)
class SearchNode:
    """搜索节点。

    programmable_line 为 None 表示所有实例都已求解。
    """

    program: PlanningProgram
    evaluation: EvaluationVector
    programmable_line: Optional[int]
    sequence: int = field(default=0, compare=False)

    @property
    def is_solution(self) -> bool:
        return self.programmable_line is None


def _programmable_line(outcomes: Sequence[ExecutionOutcome]) -> Optional[int]:
    lines = [o.line for o in outcomes if isinstance(o, ReachedUndefined)]
    return max(lines) if lines else None


def allows_goto(program: PlanningProgram, line: int, extended_domain: ExtendedDomain) -> bool:
    """第 line 行能否写 goto：上一行必须是 RAM 指令。"""
    if line == 0:
        return False
    previous = program[line - 1]
    return isinstance(previous, ActionLine) and extended_domain.instruction(
        previous.instruction
    ).is_ram


def successor_programs(
    program: PlanningProgram, line: int, extended_domain: ExtendedDomain
) -> list[PlanningProgram]:
    """给第 line 行编程得到的全部后继，按规范顺序：先动作，后 (目标, 特征)。"""
    children = [
        program_line_action(program, line, a) for a in range(extended_domain.size)
    ]
    if allows_goto(program, line, extended_domain):
        for target in valid_goto_targets(program.n, line):
            for feature in Feature:
                children.append(program_line_goto(program, line, target, feature))
    return children


class BfgpSearch:
    """BFGP 搜索器。

    open 表按评估键排序，键相同时先生成的先出（FIFO）。
    """

    def __init__(
        self,
        instances: Sequence[Instance],
        extended_domain: ExtendedDomain,
        n: int,
        eval_key: Union[str, Sequence[str]] = DEFAULT_EVAL_KEY,
        limits: Optional[SearchLimits] = None,
        config: Optional[ExecutionConfig] = None,
        weight: int = DEFAULT_WEIGHT,
    ) -> None:
        """初始化搜索器。

        Args:
            instances: GP 问题的实例，不能为空
            extended_domain: 扩展领域
            n: 程序行数（含 end）
            eval_key: 评估函数列表，按字典序比较
            limits: 搜索限制
            config: 子节点执行配置
            weight: f9 的权重

        Raises:
            ValueError: n < 1 或实例为空
            UnknownEvaluationFunctionError: 评估键不合法
        """
        if n < 1:
            raise ValueError("程序行数 n 必须 ≥ 1")
        if not instances:
            raise ValueError("GP 问题至少需要一个实例")
        self._instances = list(instances)
        self._ext = extended_domain
        self._n = n
        self._key = parse_eval_key(eval_key)
        self._limits = limits or SearchLimits()
        self._weight = weight
        self._interpreter = Interpreter(extended_domain, config)
        self._open: list[tuple[tuple[int, ...], int, SearchNode]] = []
        self._counter = itertools.count()
        self._process = psutil.Process()
        self.stats = SearchStats()
        self._callbacks: dict[str, list[Callable]] = {
            "generate": [],
            "expand": [],
            "solution": [],
        }

    @property
    def eval_key(self) -> tuple[str, ...]:
        return self._key

    @property
    def interpreter(self) -> Interpreter:
        return self._interpreter

    def register_callback(self, event: str, callback: Callable) -> None:
        """注册回调。

        Args:
            event: "generate"（新程序）、"expand"（节点）或 "solution"（解程序）
            callback: 回调函数

        Raises:
            ValueError: 未知事件
        """
        if event not in self._callbacks:
            raise ValueError(f"未知事件 '{event}'")
        self._callbacks[event].append(callback)

    def _notify(self, event: str, payload: object) -> None:
        for callback in self._callbacks[event]:
            try:
                callback(payload)
            except Exception:
                logger.debug("%s 回调出错", event, exc_info=True)

    # ============ 节点 ============
    def evaluate_program(self, program: PlanningProgram) -> Optional[SearchNode]:
        """执行并评估程序；死节点返回 None。"""
        self.stats.evaluated += 1
        outcomes = self._interpreter.run_all(program, self._instances, short_circuit=True)
        if any(isinstance(o, Failed) for o in outcomes):
            return None
        evaluation = evaluate(
            program, self._instances, self._interpreter, self._key, self._weight, outcomes
        )
        return SearchNode(program, evaluation, _programmable_line(outcomes), next(self._counter))

    def _successors(self, node: SearchNode) -> Iterator[SearchNode]:
        line = node.programmable_line
        if line is None:
            return
        for program in successor_programs(node.program, line, self._ext):
            self._notify("generate", program)
            child = self.evaluate_program(program)
            if child is not None:
                yield child

    def expand(self, node: SearchNode) -> list[SearchNode]:
        """生成并评估节点的全部非死子节点。"""
        return list(self._successors(node))

    def _push(self, node: SearchNode) -> None:
        heapq.heappush(self._open, (node.evaluation.key(self._key), node.sequence, node))

    def _sample_memory(self) -> None:
        rss = self._process.memory_info().rss
        if rss > self.stats.peak_memory:
            self.stats.peak_memory = rss

    def _finish(
        self, status: SearchStatus, started: float, solution: Optional[PlanningProgram] = None
    ) -> Optional[PlanningProgram]:
        self.stats.status = status
        self.stats.elapsed = time.monotonic() - started
        self.stats.open_size = len(self._open)
        self._sample_memory()
        if solution is not None:
            logger.info(
                "找到解：扩展 %d，评估 %d，用时 %.2fs",
                self.stats.expanded,
                self.stats.evaluated,
                self.stats.elapsed,
            )
            self._notify("solution", solution)
        elif status is SearchStatus.EXHAUSTED:
            logger.info("搜索空间已穷尽：扩展 %d", self.stats.expanded)
        else:
            logger.info("触发限制 %s：扩展 %d", status.value, self.stats.expanded)
        return solution

    # ============ 主循环 ============
    def run(self) -> Optional[PlanningProgram]:
        """执行搜索，返回第一个求解全部实例的程序；无解时返回 None。"""
        started = time.monotonic()
        deadline = started + self._limits.timeout
        logger.info(
            "开始搜索：n=%d，|A′_Z|=%d，实例 %d，评估键 %s",
            self._n,
            self._ext.size,
            len(self._instances),
            ",".join(self._key),
        )
        root = self.evaluate_program(PlanningProgram.empty(self._n))
        if root is None:
            return self._finish(SearchStatus.EXHAUSTED, started)
        if root.is_solution:
            return self._finish(SearchStatus.SOLVED, started, root.program)
        self._push(root)

        while self._open:
            if time.monotonic() >= deadline:
                return self._finish(SearchStatus.TIMEOUT, started)
            _, _, node = heapq.heappop(self._open)
            self.stats.expanded += 1
            self._notify("expand", node)
            logger.debug(
                "扩展节点 #%d：第 %s 行，%s",
                node.sequence,
                node.programmable_line,
                node.evaluation.key(self._key),
            )
            for child in self._successors(node):
                if child.is_solution:
                    return self._finish(SearchStatus.SOLVED, started, child.program)
                self._push(child)
            if len(self._open) > self._limits.max_nodes:
                return self._finish(SearchStatus.MEMORY_LIMIT, started)
            if self.stats.expanded % MEMORY_SAMPLE_INTERVAL == 0:
                self._sample_memory()
        return self._finish(SearchStatus.EXHAUSTED, started)


def bfgp(
    instances: Sequence[Instance],
    extended_domain: ExtendedDomain,
    n: int,
    eval_key: Union[str, Sequence[str]] = DEFAULT_EVAL_KEY,
    limits: Optional[SearchLimits] = None,
    config: Optional[ExecutionConfig] = None,
    weight: int = DEFAULT_WEIGHT,
) -> tuple[Optional[PlanningProgram], SearchStats]:
    """运行 BFGP，返回 (解程序或 None, 统计)。"""
    search = BfgpSearch(instances, extended_domain, n, eval_key, limits, config, weight)
    solution = search.run()
    return solution, search.stats


# ============ 穷举 ============
def enumerate_programs(extended_domain: ExtendedDomain, n: int) -> Iterator[PlanningProgram]:
    """按行枚举所有完整程序（goto 只能跟在 RAM 指令之后）。"""
    if n < 1:
        return
    base = PlanningProgram.empty(n)

    def fill(program: PlanningProgram, line: int) -> Iterator[PlanningProgram]:
        if line == n - 1:
            yield program
            return
        for child in successor_programs(program, line, extended_domain):
            yield from fill(child, line + 1)

    yield from fill(base, 0)


def exhaustive_solve(
    instances: Sequence[Instance],
    extended_domain: ExtendedDomain,
    n: int,
    config: Optional[ExecutionConfig] = None,
) -> Optional[PlanningProgram]:
    """穷举求解：返回第一个在所有实例上都求解的程序。"""
    interpreter = Interpreter(extended_domain, config)
    for program in enumerate_programs(extended_domain, n):
        outcomes = interpreter.run_all(program, instances, short_circuit=True)
        if all(isinstance(o, Solved) for o in outcomes):
            return program
    return None
