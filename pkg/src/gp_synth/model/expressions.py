"""表达式与条件。

提供领域文件中 PRE/EFF/INIT/GOAL/GOALEXPR 使用的表达式语法树、
基于 pyparsing 的文法，以及把表达式编译为闭包的函数。

项（Term）的参数可以是对象下标（整数）或指针名（字符串）。
数值表达式支持 + - * 与括号；条件支持比较、! & | 与括号。
连字符属于标识符，减号两侧需要空格（``vector(x) - 1``）。
"""

import operator
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import pyparsing as pp

from gp_synth.core.errors import ProgramSyntaxError

pp.ParserElement.enable_packrat()

Arg = Union[int, str]
Values = Sequence[int]
Pointers = Sequence[int]
Locator = Callable[[Pointers], int]


@dataclass(frozen=True)
class Term:
    """函数项 φ(a1, ..., ak)。"""

    function: str
    args: tuple[Arg, ...] = ()

    def __str__(self) -> str:
        return f"{self.function}({','.join(str(a) for a in self.args)})"

    @property
    def pointer_args(self) -> tuple[str, ...]:
        """以名字出现的参数。"""
        return tuple(a for a in self.args if isinstance(a, str))


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PointerRef:
    """指针值本身（不经函数寻址）。"""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expression"
    right: "Expression"

    def __str__(self) -> str:
        return f"{_wrap(self.left)} {self.op} {_wrap(self.right)}"


Expression = Union[Const, PointerRef, Term, BinaryOp]


@dataclass(frozen=True)
class Comparison:
    op: str
    left: Expression
    right: Expression

    def __str__(self) -> str:
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class BoolOp:
    """合取（&）或析取（|）。"""

    op: str
    operands: tuple["Condition", ...]

    def __str__(self) -> str:
        return f" {self.op} ".join(_wrap(c) for c in self.operands)


@dataclass(frozen=True)
class Negation:
    operand: "Condition"

    def __str__(self) -> str:
        return f"!({self.operand})"


Condition = Union[Comparison, BoolOp, Negation]

TRUE = BoolOp("&", ())


@dataclass(frozen=True)
class Assignment:
    """INIT/GOAL 中的 term=value。"""

    term: Term
    value: int

    def __str__(self) -> str:
        return f"{self.term}={self.value}"


@dataclass(frozen=True)
class Effect:
    """同时赋值 target := value，value 读取前状态。"""

    target: Term
    value: Expression

    def __str__(self) -> str:
        return f"{self.target} := {self.value}"


def _wrap(node: object) -> str:
    if isinstance(node, (BinaryOp, BoolOp)):
        return f"({node})"
    return str(node)


# ============ 文法 ============
def _fold_binary(tokens: pp.ParseResults) -> BinaryOp:
    items = tokens[0]
    result = items[0]
    for i in range(1, len(items), 2):
        result = BinaryOp(items[i], result, items[i + 1])
    return result


def _fold_bool(op: str) -> Callable[[pp.ParseResults], BoolOp]:
    def action(tokens: pp.ParseResults) -> BoolOp:
        return BoolOp(op, tuple(tokens[0][0::2]))

    return action


IDENT = pp.Word(pp.alphas, pp.alphanums + "_-")
INTEGER = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))
ARG = INTEGER | IDENT
TERM = (
    IDENT
    + pp.Suppress("(")
    + pp.Group(pp.Optional(ARG + pp.ZeroOrMore(pp.Suppress(",") + ARG)))
    + pp.Suppress(")")
).set_parse_action(lambda t: Term(t[0], tuple(t[1])))

OPERAND = (
    TERM
    | pp.Word(pp.nums).set_parse_action(lambda t: Const(int(t[0])))
    | IDENT.copy().set_parse_action(lambda t: PointerRef(t[0]))
)
ARITHMETIC = pp.infix_notation(
    OPERAND,
    [
        (pp.Literal("*"), 2, pp.OpAssoc.LEFT, _fold_binary),
        (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _fold_binary),
    ],
)
COMPARISON = (ARITHMETIC + pp.one_of("= != <= >= < >") + ARITHMETIC).set_parse_action(
    lambda t: Comparison(t[1], t[0], t[2])
)
CONDITION = pp.infix_notation(
    COMPARISON,
    [
        (pp.Literal("!"), 1, pp.OpAssoc.RIGHT, lambda t: Negation(t[0][1])),
        (pp.Literal("&"), 2, pp.OpAssoc.LEFT, _fold_bool("&")),
        (pp.Literal("|"), 2, pp.OpAssoc.LEFT, _fold_bool("|")),
    ],
)
EFFECT = (TERM + pp.Suppress(":=") + ARITHMETIC).set_parse_action(lambda t: Effect(t[0], t[1]))
EFFECTS = EFFECT + pp.ZeroOrMore(pp.Suppress(";") + EFFECT)
ASSIGNMENT = (TERM + pp.Suppress("=") + INTEGER).set_parse_action(lambda t: Assignment(t[0], t[1]))
ASSIGNMENTS = pp.ZeroOrMore(ASSIGNMENT)


def _parse(element: pp.ParserElement, text: str, line: Optional[int]) -> pp.ParseResults:
    try:
        return element.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ProgramSyntaxError(f"无法解析 '{text.strip()}'", line=line, column=e.col) from e


def parse_condition(text: str, line: Optional[int] = None) -> Condition:
    """解析条件；空文本表示恒真。"""
    if not text.strip():
        return TRUE
    return _parse(CONDITION, text, line)[0]


def parse_effects(text: str, line: Optional[int] = None) -> list[Effect]:
    """解析以分号分隔的效果列表。"""
    return list(_parse(EFFECTS, text, line))


def parse_term(text: str, line: Optional[int] = None) -> Term:
    return _parse(TERM, text, line)[0]


def parse_assignments(text: str, line: Optional[int] = None) -> list["Assignment"]:
    """解析 ``term=int term=int ...`` 序列。"""
    return list(_parse(ASSIGNMENTS, text, line))


def conjuncts(condition: Condition) -> tuple[Condition, ...]:
    """把顶层合取拆成原子列表。"""
    if isinstance(condition, BoolOp) and condition.op == "&":
        return condition.operands
    return (condition,)


def referenced_names(node: object) -> set[str]:
    """收集表达式/条件中出现的指针名。"""
    if isinstance(node, Term):
        return set(node.pointer_args)
    if isinstance(node, PointerRef):
        return {node.name}
    if isinstance(node, (BinaryOp, Comparison)):
        return referenced_names(node.left) | referenced_names(node.right)
    if isinstance(node, BoolOp):
        names: set[str] = set()
        for operand in node.operands:
            names |= referenced_names(operand)
        return names
    if isinstance(node, Negation):
        return referenced_names(node.operand)
    if isinstance(node, Effect):
        return referenced_names(node.target) | referenced_names(node.value)
    return set()


def referenced_terms(node: object) -> list[Term]:
    """收集表达式/条件中出现的函数项。"""
    if isinstance(node, Term):
        return [node]
    if isinstance(node, (BinaryOp, Comparison)):
        return referenced_terms(node.left) + referenced_terms(node.right)
    if isinstance(node, BoolOp):
        return [t for operand in node.operands for t in referenced_terms(operand)]
    if isinstance(node, Negation):
        return referenced_terms(node.operand)
    if isinstance(node, Effect):
        return [node.target] + referenced_terms(node.value)
    return []


# ============ 编译 ============
_ARITHMETIC_OPS: dict[str, Callable[[int, int], int]] = {
    "+": operator.add,
    "-": operator.sub,
    "*": operator.mul,
}
_COMPARISON_OPS: dict[str, Callable[[int, int], bool]] = {
    "=": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}

NumericFn = Callable[[Values, Pointers], int]
ConditionFn = Callable[[Values, Pointers], bool]


def compile_expression(
    expr: Expression,
    locate: Callable[[Term], Locator],
    pointer_index: Callable[[str], int],
) -> NumericFn:
    """把数值表达式编译为 ``f(values, pointers) -> int``。

    Args:
        expr: 表达式
        locate: 把函数项映射为变量下标定位器
        pointer_index: 把指针名映射为指针寄存器下标
    """
    if isinstance(expr, Const):
        value = expr.value
        return lambda vals, ptrs: value
    if isinstance(expr, PointerRef):
        p = pointer_index(expr.name)
        return lambda vals, ptrs: ptrs[p]
    if isinstance(expr, Term):
        loc = locate(expr)
        return lambda vals, ptrs: vals[loc(ptrs)]
    fn = _ARITHMETIC_OPS[expr.op]
    left = compile_expression(expr.left, locate, pointer_index)
    right = compile_expression(expr.right, locate, pointer_index)
    return lambda vals, ptrs: fn(left(vals, ptrs), right(vals, ptrs))


def compile_condition(
    condition: Condition,
    locate: Callable[[Term], Locator],
    pointer_index: Callable[[str], int],
) -> ConditionFn:
    """把条件编译为 ``f(values, pointers) -> bool``。"""
    if isinstance(condition, Comparison):
        cmp = _COMPARISON_OPS[condition.op]
        left = compile_expression(condition.left, locate, pointer_index)
        right = compile_expression(condition.right, locate, pointer_index)
        return lambda vals, ptrs: cmp(left(vals, ptrs), right(vals, ptrs))
    if isinstance(condition, Negation):
        inner = compile_condition(condition.operand, locate, pointer_index)
        return lambda vals, ptrs: not inner(vals, ptrs)
    parts = [compile_condition(c, locate, pointer_index) for c in condition.operands]
    if condition.op == "&":
        return lambda vals, ptrs: all(p(vals, ptrs) for p in parts)
    return lambda vals, ptrs: any(p(vals, ptrs) for p in parts)
