"""PDDL 读取器（:strips 与 :typing 片段）。

领域文件给出类型、谓词与算子；问题文件给出对象、初始原子与目标原子。
前提与目标只能是正原子的合取，效果是正原子（add）与 ``(not ...)`` 原子（del）。
不区分大小写，``;`` 开头为注释。
"""

import logging
from dataclasses import dataclass, field
from typing import Union

import pyparsing as pp

from gp_synth.core.errors import PddlSyntaxError, UnsupportedRequirementError

logger = logging.getLogger(__name__)

SUPPORTED_REQUIREMENTS = frozenset({":strips", ":typing"})
DEFAULT_TYPE = "object"

SExpr = Union[str, list["SExpr"]]

# ============ 文法 ============
_ATOM = pp.Regex(r"[^\s()]+")
SEXPR = pp.Forward()
SEXPR <<= pp.Group(pp.Suppress("(") + pp.ZeroOrMore(_ATOM | SEXPR) + pp.Suppress(")"))
COMMENT = pp.Regex(r";.*").suppress()


@dataclass(frozen=True)
class Atom:
    """谓词原子；args 为变量（?x）或对象名。"""

    predicate: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"({' '.join((self.predicate,) + self.args)})"


@dataclass(frozen=True)
class TypedName:
    name: str
    type: str = DEFAULT_TYPE


@dataclass(frozen=True)
class Predicate:
    name: str
    params: tuple[TypedName, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.params)


@dataclass(frozen=True)
class Operator:
    """STRIPS 算子 ⟨name, args, pre, del, add⟩。"""

    name: str
    params: tuple[TypedName, ...]
    pre: tuple[Atom, ...] = ()
    delete: tuple[Atom, ...] = ()
    add: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class StripsDomain:
    name: str
    requirements: tuple[str, ...] = ()
    types: tuple[str, ...] = ()
    predicates: tuple[Predicate, ...] = ()
    operators: tuple[Operator, ...] = ()

    @property
    def typed(self) -> bool:
        return bool(self.types)

    def predicate(self, name: str) -> Predicate:
        for predicate in self.predicates:
            if predicate.name == name:
                return predicate
        raise PddlSyntaxError(f"谓词 '{name}' 未声明")


@dataclass(frozen=True)
class StripsProblem:
    name: str
    domain_name: str
    objects: tuple[TypedName, ...] = ()
    init: frozenset[Atom] = frozenset()
    goal: tuple[Atom, ...] = ()


@dataclass(frozen=True)
class StripsModel:
    """一个 STRIPS 领域及其若干问题。"""

    domain: StripsDomain
    problems: tuple[StripsProblem, ...] = field(default=())


# ============ S 表达式 ============
def parse_sexpr(text: str) -> list[SExpr]:
    """把文本解析为单个 S 表达式（嵌套列表，原子转为小写）。

    Raises:
        PddlSyntaxError: 括号不匹配或有多余内容
    """
    try:
        result = SEXPR.parse_string(COMMENT.transform_string(text).lower(), parse_all=True)
    except pp.ParseBaseException as e:
        raise PddlSyntaxError(f"PDDL 语法错误: {e.msg}", line=e.lineno, column=e.col) from e
    expr: list[SExpr] = result[0].as_list()
    return expr


def _expect_list(expr: SExpr, what: str) -> list[SExpr]:
    if not isinstance(expr, list):
        raise PddlSyntaxError(f"{what} 应为列表，实际为 '{expr}'")
    return expr


def _expect_name(expr: SExpr, what: str) -> str:
    if not isinstance(expr, str):
        raise PddlSyntaxError(f"{what} 应为名字")
    return expr


def parse_typed_list(items: list[SExpr]) -> tuple[TypedName, ...]:
    """解析 ``a b - t c`` 形式的类型列表；没有类型的名字属于 object。"""
    result: list[TypedName] = []
    pending: list[str] = []
    i = 0
    while i < len(items):
        item = _expect_name(items[i], "类型列表项")
        if item == "-":
            if i + 1 >= len(items) or not pending:
                raise PddlSyntaxError("类型列表中的 '-' 位置不对")
            type_name = items[i + 1]
            if isinstance(type_name, list):
                raise UnsupportedRequirementError("不支持 either 类型")
            result += [TypedName(n, type_name) for n in pending]
            pending = []
            i += 2
            continue
        pending.append(item)
        i += 1
    result += [TypedName(n) for n in pending]
    return tuple(result)


def _parse_atom(expr: SExpr, what: str) -> Atom:
    items = _expect_list(expr, what)
    if not items:
        raise PddlSyntaxError(f"{what} 为空")
    head = _expect_name(items[0], what)
    if head == "not":
        raise UnsupportedRequirementError(f"{what} 中不支持否定")
    if head == "=":
        raise UnsupportedRequirementError(f"{what} 中不支持等式")
    if head in ("or", "imply", "exists", "forall", "when", "and"):
        raise UnsupportedRequirementError(f"{what} 中不支持 '{head}'")
    return Atom(head, tuple(_expect_name(a, what) for a in items[1:]))


def parse_conjunction(expr: SExpr, what: str) -> tuple[Atom, ...]:
    """正原子的合取：``()``、单个原子或 ``(and ...)``。"""
    items = _expect_list(expr, what)
    if not items:
        return ()
    if items[0] == "and":
        return tuple(_parse_atom(a, what) for a in items[1:])
    return (_parse_atom(items, what),)


def _parse_effects(expr: SExpr) -> tuple[tuple[Atom, ...], tuple[Atom, ...]]:
    items = _expect_list(expr, "效果")
    literals = items[1:] if items and items[0] == "and" else ([items] if items else [])
    delete: list[Atom] = []
    add: list[Atom] = []
    for literal in literals:
        parts = _expect_list(literal, "效果")
        if parts and parts[0] == "not":
            if len(parts) != 2:
                raise PddlSyntaxError("(not ...) 只能包含一个原子")
            delete.append(_parse_atom(parts[1], "删除效果"))
        else:
            add.append(_parse_atom(parts, "添加效果"))
    return tuple(delete), tuple(add)


def _sections(expr: list[SExpr], header: str) -> tuple[str, list[list[SExpr]]]:
    if len(expr) < 2 or expr[0] != "define":
        raise PddlSyntaxError("PDDL 文件应以 (define ...) 开头")
    head = _expect_list(expr[1], "define 头")
    if len(head) != 2 or head[0] != header:
        raise PddlSyntaxError(f"缺少 ({header} <名字>)")
    return _expect_name(head[1], "名字"), [_expect_list(s, "段") for s in expr[2:]]


# ============ 领域 ============
def _parse_operator(section: list[SExpr]) -> Operator:
    name = _expect_name(section[1] if len(section) > 1 else [], "算子名")
    fields: dict[str, SExpr] = {}
    for i in range(2, len(section) - 1, 2):
        fields[_expect_name(section[i], "算子字段")] = section[i + 1]
    params = parse_typed_list(_expect_list(fields.get(":parameters", []), ":parameters"))
    pre = parse_conjunction(fields.get(":precondition", []), f"'{name}' 的前提")
    delete, add = _parse_effects(fields.get(":effect", []))

    variables = {p.name for p in params}
    for atom in pre + delete + add:
        unknown = [a for a in atom.args if a not in variables]
        if unknown:
            raise PddlSyntaxError(f"算子 '{name}' 使用了未声明的变量或常量 {unknown}")
    return Operator(name, params, pre, delete, add)


def parse_domain_text(text: str) -> StripsDomain:
    """解析 PDDL 领域文件。

    Raises:
        PddlSyntaxError: 语法错误
        UnsupportedRequirementError: 需求或构造超出 STRIPS + typing
    """
    name, sections = _sections(parse_sexpr(text), "domain")
    requirements: list[str] = []
    types: tuple[TypedName, ...] = ()
    predicates: list[Predicate] = []
    operators: list[Operator] = []
    for section in sections:
        key = section[0] if section else None
        if key == ":requirements":
            requirements = [_expect_name(r, "需求") for r in section[1:]]
            unsupported = sorted(set(requirements) - SUPPORTED_REQUIREMENTS)
            if unsupported:
                raise UnsupportedRequirementError(f"不支持的需求: {', '.join(unsupported)}")
        elif key == ":types":
            types = parse_typed_list(section[1:])
            nested = [t for t in types if t.type != DEFAULT_TYPE]
            if nested:
                raise UnsupportedRequirementError(f"不支持类型层次: {nested[0].name} - {nested[0].type}")
        elif key == ":predicates":
            for declaration in section[1:]:
                items = _expect_list(declaration, "谓词声明")
                predicates.append(
                    Predicate(_expect_name(items[0], "谓词名"), parse_typed_list(items[1:]))
                )
        elif key == ":action":
            operators.append(_parse_operator(section))
        elif key in (":constants", ":functions", ":derived", ":axiom"):
            raise UnsupportedRequirementError(f"不支持 {key}")
        else:
            raise PddlSyntaxError(f"未知的领域段 '{key}'")

    domain = StripsDomain(
        name=name,
        requirements=tuple(requirements),
        types=tuple(t.name for t in types if t.name != DEFAULT_TYPE),
        predicates=tuple(predicates),
        operators=tuple(operators),
    )
    _check_domain(domain)
    logger.debug("PDDL 领域 %s: %d 个谓词, %d 个算子", name, len(predicates), len(operators))
    return domain


def _check_domain(domain: StripsDomain) -> None:
    declared = set(domain.types) | {DEFAULT_TYPE}
    for predicate in domain.predicates:
        for param in predicate.params:
            if param.type not in declared:
                raise PddlSyntaxError(f"谓词 '{predicate.name}' 使用了未声明的类型 '{param.type}'")
    for op in domain.operators:
        types = {p.name: p.type for p in op.params}
        for param in op.params:
            if param.type not in declared:
                raise PddlSyntaxError(f"算子 '{op.name}' 使用了未声明的类型 '{param.type}'")
        for atom in op.pre + op.delete + op.add:
            predicate = domain.predicate(atom.predicate)
            if len(atom.args) != predicate.arity:
                raise PddlSyntaxError(f"'{atom}' 的元数应为 {predicate.arity}")
            for arg, param in zip(atom.args, predicate.params):
                if domain.typed and types[arg] != param.type:
                    raise PddlSyntaxError(f"'{atom}' 中 {arg} 的类型应为 {param.type}")


# ============ 问题 ============
def parse_problem_text(text: str, domain: StripsDomain) -> StripsProblem:
    """解析 PDDL 问题文件。

    Raises:
        PddlSyntaxError: 语法错误、对象未声明或与领域不符
        UnsupportedRequirementError: 目标含否定或其他非 STRIPS 构造
    """
    name, sections = _sections(parse_sexpr(text), "problem")
    domain_name = domain.name
    objects: tuple[TypedName, ...] = ()
    init: list[Atom] = []
    goal: tuple[Atom, ...] = ()
    for section in sections:
        key = section[0] if section else None
        if key == ":domain":
            domain_name = _expect_name(section[1], "领域名")
        elif key == ":requirements":
            continue
        elif key == ":objects":
            objects = parse_typed_list(section[1:])
        elif key == ":init":
            init = [_parse_atom(a, "初始原子") for a in section[1:]]
        elif key == ":goal":
            goal = parse_conjunction(section[1] if len(section) > 1 else [], "目标")
        else:
            raise PddlSyntaxError(f"未知的问题段 '{key}'")

    if domain_name != domain.name:
        raise PddlSyntaxError(f"问题 '{name}' 属于领域 '{domain_name}'，不是 '{domain.name}'")
    problem = StripsProblem(name, domain_name, objects, frozenset(init), goal)
    _check_problem(problem, domain)
    return problem


def _check_problem(problem: StripsProblem, domain: StripsDomain) -> None:
    types = {o.name: o.type for o in problem.objects}
    if len(types) != len(problem.objects):
        raise PddlSyntaxError(f"问题 '{problem.name}' 中有重复对象")
    if domain.typed:
        for obj in problem.objects:
            if obj.type not in domain.types:
                raise PddlSyntaxError(f"对象 '{obj.name}' 的类型 '{obj.type}' 未在领域中声明")
    for atom in list(problem.init) + list(problem.goal):
        predicate = domain.predicate(atom.predicate)
        if len(atom.args) != predicate.arity:
            raise PddlSyntaxError(f"'{atom}' 的元数应为 {predicate.arity}")
        for arg, param in zip(atom.args, predicate.params):
            if arg not in types:
                raise PddlSyntaxError(f"'{atom}' 中的对象 '{arg}' 未声明")
            if domain.typed and types[arg] != param.type:
                raise PddlSyntaxError(f"'{atom}' 中 {arg} 的类型应为 {param.type}")


def parse_pddl(domain_text: str, *problem_texts: str) -> StripsModel:
    """解析领域文件与任意个问题文件。"""
    domain = parse_domain_text(domain_text)
    problems = tuple(parse_problem_text(text, domain) for text in problem_texts)
    return StripsModel(domain, problems)
