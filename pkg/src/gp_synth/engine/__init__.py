"""引擎包。

解释器、评估函数与 BFGP 搜索。
"""

from gp_synth.engine.evaluation import (
    EVALUATION_FUNCTIONS,
    EvaluationVector,
    compare,
    eval_performance,
    eval_structural,
    evaluate,
    parse_eval_key,
)
from gp_synth.engine.interpreter import (
    Execution,
    ExecutionConfig,
    ExecutionOutcome,
    Failed,
    FailureReason,
    Interpreter,
    ReachedUndefined,
    Solved,
    replay_plan,
    run,
    run_all,
)
from gp_synth.engine.search import (
    BfgpSearch,
    SearchLimits,
    SearchNode,
    SearchStats,
    SearchStatus,
    bfgp,
    enumerate_programs,
    exhaustive_solve,
    successor_programs,
)

__all__ = [
    "EVALUATION_FUNCTIONS",
    "BfgpSearch",
    "EvaluationVector",
    "Execution",
    "ExecutionConfig",
    "ExecutionOutcome",
    "Failed",
    "FailureReason",
    "Interpreter",
    "ReachedUndefined",
    "SearchLimits",
    "SearchNode",
    "SearchStats",
    "SearchStatus",
    "Solved",
    "bfgp",
    "compare",
    "enumerate_programs",
    "eval_performance",
    "eval_structural",
    "evaluate",
    "exhaustive_solve",
    "parse_eval_key",
    "replay_plan",
    "run",
    "run_all",
    "successor_programs",
]
