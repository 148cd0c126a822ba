"""规划模型。

领域、实例、状态，以及带指针与标志寄存器的扩展领域。
"""

from gp_synth.model.domain import (
    ActionSchema,
    ConstraintGoal,
    Domain,
    FunctionKind,
    FunctionSymbol,
    Goal,
    Instance,
    ObjectType,
    PartialGoal,
    PointerDecl,
)
from gp_synth.model.expressions import Assignment, Effect, Term
from gp_synth.model.instructions import (
    ExtendedDomain,
    Instruction,
    Opcode,
    build_extended_domain,
    name_pointers,
)
from gp_synth.model.loader import (
    dump_domain,
    dump_instance,
    load_domain,
    load_instance,
    parse_domain,
    parse_instance,
)
from gp_synth.model.state import (
    Flags,
    State,
    VariableRegistry,
    goal_deviation,
    goal_satisfied,
    make_initial_state,
)

__all__ = [
    "ActionSchema",
    "Assignment",
    "ConstraintGoal",
    "Domain",
    "Effect",
    "ExtendedDomain",
    "Flags",
    "FunctionKind",
    "FunctionSymbol",
    "Goal",
    "Instance",
    "Instruction",
    "ObjectType",
    "Opcode",
    "PartialGoal",
    "PointerDecl",
    "State",
    "Term",
    "VariableRegistry",
    "build_extended_domain",
    "name_pointers",
    "dump_domain",
    "dump_instance",
    "goal_deviation",
    "goal_satisfied",
    "load_domain",
    "load_instance",
    "make_initial_state",
    "parse_domain",
    "parse_instance",
]
