"""程序文本格式。

每行 ``<下标>. <内容>``，内容为指令、``goto(<目标>, !(<特征>))``、
``end`` 或 ``--``（未定义）。特征写作 ``!Yz&!Yc``、``Yz&!Yc``、
``!Yz&Yc``、``Yz&Yc`` 之一，空白可有可无。
"""

import pyparsing as pp

from gp_synth.core.errors import ProgramSyntaxError
from gp_synth.model.instructions import ExtendedDomain
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
)


def _feature_action(tokens: pp.ParseResults) -> Feature:
    y_z = tokens[0] == "Yz"
    y_c = tokens[1] == "Yc"
    return Feature.from_flags(y_z, y_c)


_FLAG_Z = pp.Combine(pp.Optional("!") + pp.Literal("Yz"))
_FLAG_C = pp.Combine(pp.Optional("!") + pp.Literal("Yc"))
FEATURE = (_FLAG_Z + pp.Suppress("&") + _FLAG_C).set_parse_action(_feature_action)
_INDEX = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))

GOTO = (
    pp.Keyword("goto")
    + pp.Suppress("(")
    + _INDEX
    + pp.Suppress(",")
    + pp.Suppress("!")
    + pp.Suppress("(")
    + FEATURE
    + pp.Suppress(")")
    + pp.Suppress(")")
).set_parse_action(lambda t: GotoLine(t[1], t[2]))
END_BODY = pp.Keyword("end").set_parse_action(lambda: END)
UNDEFINED_BODY = pp.Literal("--").set_parse_action(lambda: UNDEFINED)
INSTRUCTION_BODY = pp.Regex(r".+")

PROGRAM_LINE = (
    _INDEX
    + pp.Suppress(".")
    + (GOTO | END_BODY | UNDEFINED_BODY | INSTRUCTION_BODY)
)


def _parse_line(raw: str, number: int, extended_domain: ExtendedDomain) -> tuple[int, Line]:
    try:
        index, body = PROGRAM_LINE.parse_string(raw, parse_all=True)
    except pp.ParseBaseException as e:
        raise ProgramSyntaxError(f"无法解析 '{raw.strip()}'", line=number, column=e.col) from e
    if isinstance(body, (GotoLine, EndLine, UndefinedLine)):
        return index, body
    instruction = extended_domain.lookup(body, line=number)
    return index, ActionLine(instruction)


def parse_program(text: str, extended_domain: ExtendedDomain) -> PlanningProgram:
    """解析程序文本。空行与 ``#`` 注释行被忽略。

    Raises:
        ProgramSyntaxError: 语法错误、下标不连续或 end 位置错误
        UnknownInstructionError: 指令不在 A′_Z 中
    """
    lines: list[Line] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.strip().startswith("#"):
            continue
        index, line = _parse_line(raw, number, extended_domain)
        if index != len(lines):
            raise ProgramSyntaxError(f"行号应为 {len(lines)}，实际为 {index}", line=number, column=1)
        if lines and isinstance(lines[-1], EndLine):
            raise ProgramSyntaxError("end 之后不能再有程序行", line=number, column=1)
        if isinstance(line, GotoLine) and line.target in (index, index + 1):
            raise ProgramSyntaxError(f"第 {index} 行不能跳到 {line.target}", line=number)
        lines.append(line)
    if not lines or not isinstance(lines[-1], EndLine):
        raise ProgramSyntaxError("程序必须以 end 结束", line=max(1, len(text.splitlines())))
    for index, line in enumerate(lines):
        if isinstance(line, GotoLine) and line.target >= len(lines):
            raise ProgramSyntaxError(f"第 {index} 行的跳转目标 {line.target} 越界")
    return PlanningProgram(tuple(lines))


def format_line(line: Line, extended_domain: ExtendedDomain) -> str:
    if isinstance(line, ActionLine):
        return str(extended_domain.instruction(line.instruction))
    if isinstance(line, GotoLine):
        return f"goto({line.target}, !({line.feature.expression}))"
    if isinstance(line, EndLine):
        return "end"
    return "--"


def print_program(program: PlanningProgram, extended_domain: ExtendedDomain) -> str:
    """把程序打印为文本，可被 parse_program 还原。"""
    return "".join(
        f"{i}. {format_line(line, extended_domain)}\n" for i, line in enumerate(program.lines)
    )
