"""领域文件与实例文件的读写。

领域文件（每行一个声明，``#`` 开头为注释）::

    DOMAIN sorting
    TYPES cell
    FUNCTION num vector(cell)
    SCHEMA swap(x:cell,y:cell)
    PRE x != y
    EFF vector(x) := vector(y) ; vector(y) := vector(x)
    POINTERS i:cell j:cell

实例文件::

    INSTANCE sorting-00
    OBJECTS cell: 3
    INIT vector(0)=3 vector(1)=1 vector(2)=2
    GOAL vector(0)=1 vector(1)=2 vector(2)=3

INIT 与 GOAL 可以分多行书写；约束目标用 ``GOALEXPR <条件>``。
"""

from pathlib import Path
from typing import Optional, Union

import pyparsing as pp

from gp_synth.core.errors import DomainDefinitionError, ProgramSyntaxError
from gp_synth.model.domain import (
    ActionSchema,
    ConstraintGoal,
    Domain,
    FunctionKind,
    FunctionSymbol,
    Goal,
    Instance,
    PartialGoal,
    PointerDecl,
)
from gp_synth.model.expressions import (
    IDENT,
    INTEGER,
    TRUE,
    Assignment,
    Effect,
    parse_assignments,
    parse_condition,
    parse_effects,
)

# 每行 INIT/GOAL 的赋值数
ASSIGNMENTS_PER_LINE = 16

# ============ 文法 ============
_TYPED = pp.Group(IDENT + pp.Suppress(":") + IDENT)
_TYPE_LIST = pp.Group(pp.Optional(IDENT + pp.ZeroOrMore(pp.Suppress(",") + IDENT)))
_TYPED_LIST = pp.Group(pp.Optional(_TYPED + pp.ZeroOrMore(pp.Suppress(",") + _TYPED)))

FUNCTION_DECL = (
    pp.one_of("bool num") + IDENT + pp.Suppress("(") + _TYPE_LIST + pp.Suppress(")")
)
SCHEMA_DECL = IDENT + pp.Suppress("(") + _TYPED_LIST + pp.Suppress(")")
POINTERS_DECL = pp.ZeroOrMore(_TYPED)
OBJECTS_DECL = pp.OneOrMore(pp.Group(IDENT + pp.Suppress(":") + INTEGER))
NAME_LIST = pp.ZeroOrMore(IDENT)


def _parse_line(element: pp.ParserElement, text: str, line: int) -> pp.ParseResults:
    try:
        return element.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise ProgramSyntaxError(f"无法解析 '{text.strip()}'", line=line, column=e.col) from e


def _lines(text: str) -> list[tuple[int, str, str]]:
    """返回 (行号, 关键字, 其余文本)，跳过空行与注释。"""
    result = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        keyword, _, rest = stripped.partition(" ")
        result.append((number, keyword.upper(), rest.strip()))
    return result


# ============ 领域 ============
class _SchemaBuilder:
    def __init__(self, name: str, params: tuple[PointerDecl, ...]):
        self.name = name
        self.params = params
        self.pre = TRUE
        self.effects: list[Effect] = []

    def build(self) -> ActionSchema:
        return ActionSchema(self.name, self.params, self.pre, tuple(self.effects))


def parse_domain(text: str) -> Domain:
    """解析领域文件文本。

    Raises:
        ProgramSyntaxError: 语法错误（带行号、列号）
        DomainDefinitionError: 领域不一致
    """
    name: Optional[str] = None
    types: list[str] = []
    functions: list[FunctionSymbol] = []
    schemas: list[_SchemaBuilder] = []
    pointers: list[PointerDecl] = []

    for number, keyword, rest in _lines(text):
        if keyword == "DOMAIN":
            name = rest
        elif keyword == "TYPES":
            types.extend(_parse_line(NAME_LIST, rest, number))
        elif keyword == "FUNCTION":
            kind, fn_name, params = _parse_line(FUNCTION_DECL, rest, number)
            functions.append(FunctionSymbol(fn_name, tuple(params), FunctionKind(kind)))
        elif keyword == "SCHEMA":
            schema_name, params = _parse_line(SCHEMA_DECL, rest, number)
            schemas.append(
                _SchemaBuilder(schema_name, tuple(PointerDecl(p, t) for p, t in params))
            )
        elif keyword in ("PRE", "EFF"):
            if not schemas:
                raise ProgramSyntaxError(f"{keyword} 之前没有 SCHEMA", line=number)
            if keyword == "PRE":
                schemas[-1].pre = parse_condition(rest, line=number)
            else:
                schemas[-1].effects.extend(parse_effects(rest, line=number))
        elif keyword == "POINTERS":
            pointers.extend(PointerDecl(p, t) for p, t in _parse_line(POINTERS_DECL, rest, number))
        else:
            raise ProgramSyntaxError(f"未知关键字 '{keyword}'", line=number, column=1)

    if not name:
        raise ProgramSyntaxError("缺少 DOMAIN 声明", line=1)
    domain = Domain(
        name=name,
        types=tuple(types),
        functions=tuple(functions),
        schemas=tuple(s.build() for s in schemas),
        default_pointers=tuple(pointers),
    )
    domain.validate()
    return domain


def dump_domain(domain: Domain) -> str:
    """把领域写成领域文件文本，可被 parse_domain 还原。"""
    lines = [f"DOMAIN {domain.name}", f"TYPES {' '.join(domain.types)}"]
    lines += [f"FUNCTION {fn}" for fn in domain.functions]
    for schema in domain.schemas:
        lines.append(f"SCHEMA {schema.signature()}")
        if schema.pre != TRUE:
            lines.append(f"PRE {schema.pre}")
        if schema.effects:
            lines.append("EFF " + " ; ".join(str(e) for e in schema.effects))
    if domain.default_pointers:
        lines.append("POINTERS " + " ".join(str(p) for p in domain.default_pointers))
    return "\n".join(lines) + "\n"


# ============ 实例 ============
def parse_instance(text: str) -> Instance:
    """解析实例文件文本。未列出的变量取 0。

    Raises:
        ProgramSyntaxError: 语法错误
        DomainDefinitionError: 同时给出 GOAL 与 GOALEXPR
    """
    name: Optional[str] = None
    counts: dict[str, int] = {}
    init: list[Assignment] = []
    goal_assignments: list[Assignment] = []
    goal_expr: Optional[Goal] = None

    for number, keyword, rest in _lines(text):
        if keyword == "INSTANCE":
            name = rest
        elif keyword == "OBJECTS":
            for object_type, count in _parse_line(OBJECTS_DECL, rest, number):
                counts[object_type] = count
        elif keyword == "INIT":
            init.extend(parse_assignments(rest, line=number))
        elif keyword == "GOAL":
            goal_assignments.extend(parse_assignments(rest, line=number))
        elif keyword == "GOALEXPR":
            goal_expr = ConstraintGoal(parse_condition(rest, line=number))
        else:
            raise ProgramSyntaxError(f"未知关键字 '{keyword}'", line=number, column=1)

    if not name:
        raise ProgramSyntaxError("缺少 INSTANCE 声明", line=1)
    if goal_expr is not None and goal_assignments:
        raise DomainDefinitionError(f"实例 '{name}' 同时给出了 GOAL 与 GOALEXPR")
    goal = goal_expr if goal_expr is not None else PartialGoal(tuple(goal_assignments))
    return Instance(name=name, object_counts=counts, init=tuple(init), goal=goal)


def _assignment_lines(keyword: str, assignments: tuple[Assignment, ...]) -> list[str]:
    lines = []
    for start in range(0, len(assignments), ASSIGNMENTS_PER_LINE):
        chunk = assignments[start : start + ASSIGNMENTS_PER_LINE]
        lines.append(f"{keyword} " + " ".join(str(a) for a in chunk))
    return lines


def dump_instance(instance: Instance) -> str:
    """把实例写成实例文件文本，可被 parse_instance 还原。"""
    lines = [f"INSTANCE {instance.name}"]
    lines += [f"OBJECTS {t}: {c}" for t, c in instance.object_counts.items()]
    lines += _assignment_lines("INIT", instance.init)
    if isinstance(instance.goal, ConstraintGoal):
        lines.append(f"GOALEXPR {instance.goal.condition}")
    else:
        lines += _assignment_lines("GOAL", instance.goal.assignments)
    return "\n".join(lines) + "\n"


# ============ 文件 ============
PathLike = Union[str, Path]


def load_domain(path: PathLike) -> Domain:
    return parse_domain(Path(path).read_text(encoding="utf-8"))


def load_instance(path: PathLike) -> Instance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))
