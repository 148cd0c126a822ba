"""错误类型定义。

提供 gp-synth 所有模块共享的异常层次。
执行失败（死循环、越界等）不是异常，而是 ExecutionOutcome 的取值。
"""

from typing import Optional


class GpSynthError(Exception):
    """gp-synth 相关错误的基类。"""

    pass


# ============ 领域与实例 ============
class DomainDefinitionError(GpSynthError):
    """领域或实例定义错误。"""

    pass


class UnsatisfiableArityError(DomainDefinitionError):
    """声明的指针无法实例化某个动作模式。"""

    pass


class MissingAssignmentError(DomainDefinitionError):
    """初始状态不是完整赋值。"""

    pass


class UnknownDomainError(GpSynthError):
    """内置领域未找到。"""

    pass


class UnknownProgramError(GpSynthError):
    """语料库程序未找到。"""

    pass


# ============ 文本解析 ============
class ProgramSyntaxError(GpSynthError):
    """文本解析错误，携带行号与列号。"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f" (第 {line} 行" + (f", 第 {column} 列)" if column is not None else ")")
        super().__init__(f"{message}{location}")


class UnknownInstructionError(ProgramSyntaxError):
    """指令不在扩展领域的指令集中。"""

    pass


# ============ 程序与编码 ============
class MalformedEncodingError(GpSynthError):
    """位向量编码不合法。"""

    pass


class LineAlreadyProgrammedError(GpSynthError):
    """程序行已被编程。"""

    pass


class InvalidGotoError(GpSynthError):
    """跳转目标超出允许范围。"""

    pass


class MalformedProgramError(GpSynthError):
    """程序结构不合法（如 end 不在最后一行）。"""

    pass


# ============ 评估 ============
class UnknownEvaluationFunctionError(GpSynthError):
    """评估键含未知函数，或需要的评估值未计算。"""

    pass


class GoalNotPartialStateError(GpSynthError):
    """目标是约束表达式，无法计算目标偏差。"""

    pass


# ============ 配置 ============
class SettingsError(GpSynthError):
    """配置值不合法。"""

    pass


# ============ PDDL ============
class PddlSyntaxError(ProgramSyntaxError):
    """PDDL 文本格式错误。"""

    pass


class UnsupportedRequirementError(GpSynthError):
    """PDDL 需求超出 STRIPS 片段。"""

    pass


class ArityOverflowError(GpSynthError):
    """算子需要的指针多于声明数量。"""

    pass
