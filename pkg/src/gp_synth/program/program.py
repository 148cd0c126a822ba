"""规划程序与部分程序。

程序由 n 行组成，每行是动作（A′_Z 下标）、跳转、end 或未定义。
最后一行固定为 end。搜索算子每次只给一个未定义行编程。
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Union

from gp_synth.core.errors import (
    InvalidGotoError,
    LineAlreadyProgrammedError,
    MalformedProgramError,
)


class Feature(IntEnum):
    """特征语言 ℒ：标志 (y_z, y_c) 的四种联合取值，编码为 y_z + 2·y_c。"""

    NOT_ZERO_NOT_CARRY = 0
    ZERO_NOT_CARRY = 1
    NOT_ZERO_CARRY = 2
    ZERO_CARRY = 3

    @property
    def expression(self) -> str:
        zero = "Yz" if self.value & 1 else "!Yz"
        carry = "Yc" if self.value & 2 else "!Yc"
        return f"{zero}&{carry}"

    @classmethod
    def from_flags(cls, y_z: bool, y_c: bool) -> "Feature":
        return cls(int(y_z) + 2 * int(y_c))


@dataclass(frozen=True)
class ActionLine:
    """执行 A′_Z 中的第 instruction 条指令。"""

    instruction: int


@dataclass(frozen=True)
class GotoLine:
    """当前标志 ≠ feature 时跳到 target，否则顺序执行下一行。"""

    target: int
    feature: Feature


@dataclass(frozen=True)
class EndLine:
    pass


@dataclass(frozen=True)
class UndefinedLine:
    pass


Line = Union[ActionLine, GotoLine, EndLine, UndefinedLine]

END = EndLine()
UNDEFINED = UndefinedLine()


def valid_goto_targets(n: int, line: int) -> list[int]:
    """第 line 行允许的跳转目标：[0, n) 去掉 line 与 line+1。"""
    return [t for t in range(n) if t != line and t != line + 1]


def _check_goto(n: int, line: int, target: int) -> None:
    if not 0 <= target < n or target == line or target == line + 1:
        raise InvalidGotoError(f"第 {line} 行的跳转目标 {target} 不合法")


@dataclass(frozen=True)
class PlanningProgram:
    """规划程序；含未定义行时即为部分程序。"""

    lines: tuple[Line, ...]

    def __post_init__(self) -> None:
        if not self.lines or not isinstance(self.lines[-1], EndLine):
            raise MalformedProgramError("程序的最后一行必须是 end")
        for i, line in enumerate(self.lines[:-1]):
            if isinstance(line, EndLine):
                raise MalformedProgramError(f"end 只能出现在最后一行（第 {i} 行）")
            if isinstance(line, GotoLine):
                _check_goto(self.n, i, line.target)

    @classmethod
    def empty(cls, n: int) -> "PlanningProgram":
        """n 行的空程序：前 n-1 行未定义，最后一行 end。"""
        if n < 1:
            raise MalformedProgramError("程序至少需要 1 行")
        return cls((UNDEFINED,) * (n - 1) + (END,))

    @property
    def n(self) -> int:
        return len(self.lines)

    def __len__(self) -> int:
        return len(self.lines)

    def __getitem__(self, index: int) -> Line:
        return self.lines[index]

    @property
    def undefined_lines(self) -> list[int]:
        return [i for i, line in enumerate(self.lines) if isinstance(line, UndefinedLine)]

    @property
    def is_complete(self) -> bool:
        return not any(isinstance(line, UndefinedLine) for line in self.lines)

    def _replace(self, index: int, line: Line) -> "PlanningProgram":
        if not 0 <= index < self.n - 1:
            raise LineAlreadyProgrammedError(f"第 {index} 行不可编程")
        if not isinstance(self.lines[index], UndefinedLine):
            raise LineAlreadyProgrammedError(f"第 {index} 行已被编程")
        return PlanningProgram(self.lines[:index] + (line,) + self.lines[index + 1 :])


# ============ 搜索算子 ============
def program_line_action(program: PlanningProgram, line: int, instruction: int) -> PlanningProgram:
    """在未定义的第 line 行写入动作。

    Raises:
        LineAlreadyProgrammedError: 该行已被编程
    """
    return program._replace(line, ActionLine(instruction))


def program_line_goto(
    program: PlanningProgram, line: int, target: int, feature: Feature
) -> PlanningProgram:
    """在未定义的第 line 行写入跳转。

    Raises:
        LineAlreadyProgrammedError: 该行已被编程
        InvalidGotoError: 目标越界或为 line / line+1
    """
    _check_goto(program.n, line, target)
    return program._replace(line, GotoLine(target, Feature(feature)))
