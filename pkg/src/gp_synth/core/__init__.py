"""核心包初始化。

导出共享的错误类型。
"""

from gp_synth.core.errors import (
    ArityOverflowError,
    DomainDefinitionError,
    GoalNotPartialStateError,
    GpSynthError,
    InvalidGotoError,
    LineAlreadyProgrammedError,
    MalformedEncodingError,
    MalformedProgramError,
    MissingAssignmentError,
    PddlSyntaxError,
    ProgramSyntaxError,
    SettingsError,
    UnknownDomainError,
    UnknownEvaluationFunctionError,
    UnknownInstructionError,
    UnknownProgramError,
    UnsatisfiableArityError,
    UnsupportedRequirementError,
)

__all__ = [
    "GpSynthError",
    "DomainDefinitionError",
    "UnsatisfiableArityError",
    "MissingAssignmentError",
    "UnknownDomainError",
    "UnknownProgramError",
    "ProgramSyntaxError",
    "UnknownInstructionError",
    "MalformedEncodingError",
    "LineAlreadyProgrammedError",
    "InvalidGotoError",
    "MalformedProgramError",
    "UnknownEvaluationFunctionError",
    "GoalNotPartialStateError",
    "PddlSyntaxError",
    "SettingsError",
    "UnsupportedRequirementError",
    "ArityOverflowError",
]
