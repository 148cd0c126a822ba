"""领域与实例定义。

提供带类型的函数符号、基于指针的动作模式、领域以及经典规划实例。
对象只以其类型内的下标标识。
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Union

from gp_synth.core.errors import DomainDefinitionError
from gp_synth.model.expressions import (
    TRUE,
    Assignment,
    Condition,
    Effect,
    Term,
    referenced_names,
    referenced_terms,
)

# 对象类型只用名字表示
ObjectType = str


class FunctionKind(Enum):
    """函数取值类型。"""

    BOOLEAN = "bool"
    NUMERIC = "num"


@dataclass(frozen=True)
class FunctionSymbol:
    """函数符号 φ，参数为对象类型列表。

    Attributes:
        name: 函数名
        parameter_types: 参数类型（元数 = 长度）
        kind: 布尔函数取 {0,1}，数值函数取非负整数
    """

    name: str
    parameter_types: tuple[ObjectType, ...] = ()
    kind: FunctionKind = FunctionKind.BOOLEAN

    @property
    def arity(self) -> int:
        return len(self.parameter_types)

    @property
    def is_numeric(self) -> bool:
        return self.kind is FunctionKind.NUMERIC

    def __str__(self) -> str:
        return f"{self.kind.value} {self.name}({','.join(self.parameter_types)})"


@dataclass(frozen=True)
class PointerDecl:
    """带类型的指针（或动作模式的指针槽）声明。"""

    name: str
    object_type: ObjectType

    def __str__(self) -> str:
        return f"{self.name}:{self.object_type}"


@dataclass(frozen=True)
class ActionSchema:
    """基于指针的动作模式。

    前提为原子合取，效果为同时赋值；效果在前状态上求值，
    按声明顺序写回。
    """

    name: str
    params: tuple[PointerDecl, ...] = ()
    pre: Condition = TRUE
    effects: tuple[Effect, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.params)

    def param_type(self, name: str) -> Optional[ObjectType]:
        for param in self.params:
            if param.name == name:
                return param.object_type
        return None

    def signature(self) -> str:
        return f"{self.name}({','.join(str(p) for p in self.params)})"


@dataclass(frozen=True)
class PartialGoal:
    """部分状态目标 {x = v}。"""

    assignments: tuple[Assignment, ...] = ()


@dataclass(frozen=True)
class ConstraintGoal:
    """约束表达式目标。"""

    condition: Condition


Goal = Union[PartialGoal, ConstraintGoal]


@dataclass(frozen=True)
class Domain:
    """规划领域：类型、函数、动作模式以及默认指针声明。"""

    name: str
    types: tuple[ObjectType, ...] = ()
    functions: tuple[FunctionSymbol, ...] = ()
    schemas: tuple[ActionSchema, ...] = ()
    default_pointers: tuple[PointerDecl, ...] = ()

    def function(self, name: str) -> FunctionSymbol:
        """按名字查找函数符号。

        Raises:
            DomainDefinitionError: 函数未声明
        """
        for fn in self.functions:
            if fn.name == name:
                return fn
        raise DomainDefinitionError(f"函数 '{name}' 未声明")

    def has_function(self, name: str) -> bool:
        return any(fn.name == name for fn in self.functions)

    def validate(self) -> None:
        """检查领域的内部一致性。

        Raises:
            DomainDefinitionError: 名字重复、类型未声明、项与签名不符等
        """
        _ensure_unique(self.types, "类型")
        _ensure_unique([fn.name for fn in self.functions], "函数")
        _ensure_unique([s.name for s in self.schemas], "动作模式")
        for fn in self.functions:
            for t in fn.parameter_types:
                self._ensure_type(t)
        for pointer in self.default_pointers:
            self._ensure_type(pointer.object_type)
        for schema in self.schemas:
            self._validate_schema(schema)

    def _ensure_type(self, object_type: ObjectType) -> None:
        if object_type not in self.types:
            raise DomainDefinitionError(f"类型 '{object_type}' 未声明")

    def _validate_schema(self, schema: ActionSchema) -> None:
        _ensure_unique([p.name for p in schema.params], f"'{schema.name}' 的参数")
        for param in schema.params:
            self._ensure_type(param.object_type)

        param_names = {p.name for p in schema.params}
        nodes: list[object] = [schema.pre, *schema.effects]
        for node in nodes:
            unknown = referenced_names(node) - param_names
            if unknown:
                raise DomainDefinitionError(
                    f"动作模式 '{schema.name}' 引用了未声明的指针: {sorted(unknown)}"
                )
            for term in referenced_terms(node):
                self.check_term(term, schema.param_type)

        targets = [e.target for e in schema.effects]
        if len(set(targets)) != len(targets):
            raise DomainDefinitionError(f"动作模式 '{schema.name}' 的效果目标重复")

    def check_term(self, term: Term, pointer_type: Callable[[str], Optional[ObjectType]]) -> None:
        """检查函数项的元数与参数类型。

        Args:
            term: 函数项
            pointer_type: 指针名 -> 类型（未知返回 None）
        """
        fn = self.function(term.function)
        if len(term.args) != fn.arity:
            raise DomainDefinitionError(f"'{term}' 的元数应为 {fn.arity}")
        for arg, expected in zip(term.args, fn.parameter_types):
            if isinstance(arg, str):
                actual = pointer_type(arg)
                if actual is None:
                    raise DomainDefinitionError(f"'{term}' 中的指针 '{arg}' 未声明")
                if actual != expected:
                    raise DomainDefinitionError(
                        f"'{term}' 中的指针 '{arg}' 类型为 {actual}，应为 {expected}"
                    )
            elif arg < 0:
                raise DomainDefinitionError(f"'{term}' 中的对象下标为负")


@dataclass(frozen=True)
class Instance:
    """经典规划实例。

    Attributes:
        name: 实例名
        object_counts: 每种类型的对象数
        init: 初始赋值；未列出的变量取 init_default
        goal: 部分状态或约束
        init_default: 未列出变量的默认值，None 表示 init 必须是完整赋值
    """

    name: str
    object_counts: dict[ObjectType, int] = field(default_factory=dict)
    init: tuple[Assignment, ...] = ()
    goal: Goal = field(default_factory=PartialGoal)
    init_default: Optional[int] = 0

    def count(self, object_type: ObjectType) -> int:
        return self.object_counts.get(object_type, 0)

    @property
    def has_partial_goal(self) -> bool:
        return isinstance(self.goal, PartialGoal)


def _ensure_unique(names: Sequence[str], what: str) -> None:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise DomainDefinitionError(f"{what} '{name}' 重复")
        seen.add(name)
