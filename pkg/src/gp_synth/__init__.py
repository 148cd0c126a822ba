"""gp-synth：基于启发式搜索的广义规划程序合成"""

__version__ = "0.1.0"
__license__ = "Apache-2.0"

from gp_synth.engine import ExecutionConfig, Interpreter, SearchLimits, bfgp, evaluate
from gp_synth.model import Domain, Instance, build_extended_domain, parse_domain, parse_instance
from gp_synth.program import PlanningProgram, parse_program, print_program

__all__ = [
    "__version__",
    "__license__",
    "Domain",
    "Instance",
    "build_extended_domain",
    "parse_domain",
    "parse_instance",
    "PlanningProgram",
    "parse_program",
    "print_program",
    "ExecutionConfig",
    "Interpreter",
    "SearchLimits",
    "bfgp",
    "evaluate",
]
