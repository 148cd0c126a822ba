"""规划程序。

程序行、部分程序、搜索算子、位向量编码与文本格式。
"""

from gp_synth.program.encoding import BitVector, decode, encode, encoding_length
from gp_synth.program.program import (
    END,
    UNDEFINED,
    ActionLine,
    EndLine,
    Feature,
    GotoLine,
    Line,
    PlanningProgram,
    UndefinedLine,
    program_line_action,
    program_line_goto,
    valid_goto_targets,
)
from gp_synth.program.text import parse_program, print_program

__all__ = [
    "END",
    "UNDEFINED",
    "ActionLine",
    "BitVector",
    "EndLine",
    "Feature",
    "GotoLine",
    "Line",
    "PlanningProgram",
    "UndefinedLine",
    "decode",
    "encode",
    "encoding_length",
    "parse_program",
    "print_program",
    "program_line_action",
    "program_line_goto",
    "valid_goto_targets",
]
