"""RAM 指令与扩展领域。

扩展领域 = 领域 + 带类型指针 + 自动生成的指令集 A′_Z。
指令集的规范顺序：inc、dec、cmp(指针)、set、test、cmp(函数)，
各自按指针声明顺序；最后是按声明顺序的动作模式实例。
指令集只依赖领域与指针，从不读取实例。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations, product
from typing import Mapping, Optional, Sequence, Union

from gp_synth.core.errors import (
    DomainDefinitionError,
    UnknownInstructionError,
    UnsatisfiableArityError,
)
from gp_synth.model.domain import ActionSchema, Domain, ObjectType, PointerDecl
from gp_synth.model.expressions import Term

logger = logging.getLogger(__name__)


class Opcode(Enum):
    """指令种类。"""

    INC = "inc"
    DEC = "dec"
    CMP_POINTERS = "cmp-pointers"
    SET = "set"
    TEST = "test"
    CMP_FUNCTIONS = "cmp-functions"
    SCHEMA = "schema"


@dataclass(frozen=True)
class Instruction:
    """A′_Z 中的一条指令。

    Attributes:
        opcode: 指令种类
        pointers: inc/dec/cmp/set 的操作数，或动作模式的实参
        terms: test / cmp(函数) 的函数项
        schema: 动作模式名
    """

    opcode: Opcode
    pointers: tuple[str, ...] = ()
    terms: tuple[Term, ...] = ()
    schema: Optional[str] = None

    @property
    def is_ram(self) -> bool:
        return self.opcode is not Opcode.SCHEMA

    def __str__(self) -> str:
        if self.opcode is Opcode.SCHEMA:
            return f"{self.schema}({','.join(self.pointers)})"
        if self.opcode is Opcode.TEST:
            return f"test({self.terms[0]})"
        if self.opcode is Opcode.CMP_FUNCTIONS:
            return f"cmp({self.terms[0]},{self.terms[1]})"
        name = "cmp" if self.opcode is Opcode.CMP_POINTERS else self.opcode.value
        return f"{name}({','.join(self.pointers)})"


def normalize_instruction_text(text: str) -> str:
    """去掉空白，用于按文本查找指令。"""
    return "".join(text.split())


@dataclass(frozen=True)
class ExtendedDomain:
    """带指针与指令集的扩展领域。"""

    domain: Domain
    pointers: tuple[PointerDecl, ...]
    instructions: tuple[Instruction, ...]
    _by_text: dict[str, int] = field(default_factory=dict, init=False, compare=False, repr=False)
    _by_instruction: dict[Instruction, int] = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        for i, instruction in enumerate(self.instructions):
            self._by_instruction[instruction] = i
            self._by_text[normalize_instruction_text(str(instruction))] = i

    @property
    def size(self) -> int:
        """|A′_Z|。"""
        return len(self.instructions)

    @property
    def pointer_names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.pointers)

    def pointer_index(self, name: str) -> int:
        for i, pointer in enumerate(self.pointers):
            if pointer.name == name:
                return i
        raise DomainDefinitionError(f"指针 '{name}' 未声明")

    def pointer_type(self, name: str) -> Optional[ObjectType]:
        for pointer in self.pointers:
            if pointer.name == name:
                return pointer.object_type
        return None

    def schema(self, name: str) -> ActionSchema:
        for schema in self.domain.schemas:
            if schema.name == name:
                return schema
        raise DomainDefinitionError(f"动作模式 '{name}' 未声明")

    def instruction(self, index: int) -> Instruction:
        return self.instructions[index]

    def index_of(self, instruction: Instruction) -> int:
        return self._by_instruction[instruction]

    def lookup(self, text: str, line: Optional[int] = None) -> int:
        """按打印形式查找指令下标（忽略空白）。

        Raises:
            UnknownInstructionError: 指令不在 A′_Z 中
        """
        try:
            return self._by_text[normalize_instruction_text(text)]
        except KeyError:
            raise UnknownInstructionError(f"未知指令 '{text.strip()}'", line=line) from None


PointerSpec = Union[PointerDecl, tuple[str, str]]


def _pointer_decls(
    domain: Domain, pointers: Optional[Sequence[PointerSpec]]
) -> tuple[PointerDecl, ...]:
    if pointers is None:
        decls = domain.default_pointers
    else:
        decls = tuple(p if isinstance(p, PointerDecl) else PointerDecl(p[0], p[1]) for p in pointers)
    seen: set[str] = set()
    for decl in decls:
        if decl.object_type not in domain.types:
            raise DomainDefinitionError(f"指针 '{decl.name}' 的类型 '{decl.object_type}' 未声明")
        if decl.name in seen:
            raise DomainDefinitionError(f"指针 '{decl.name}' 重复")
        seen.add(decl.name)
    return decls


UNTYPED_POINTER_NAMES = ("i", "j", "k", "l", "m")


def name_pointers(counts: Mapping[ObjectType, int]) -> tuple[PointerDecl, ...]:
    """为指针起名。

    只有一种类型时为 i, j, k, ...；多种类型时为类型首字母加序号（r1, r2, b1），
    首字母冲突时用完整类型名。
    """
    active = {t: c for t, c in counts.items() if c > 0}
    if len(active) == 1:
        ((object_type, count),) = active.items()
        names = [
            UNTYPED_POINTER_NAMES[k] if k < len(UNTYPED_POINTER_NAMES) else f"p{k}"
            for k in range(count)
        ]
        return tuple(PointerDecl(n, object_type) for n in names)
    initials = [t[0] for t in active]
    result = []
    for object_type, count in active.items():
        prefix = object_type[0] if initials.count(object_type[0]) == 1 else object_type
        result += [PointerDecl(f"{prefix}{k + 1}", object_type) for k in range(count)]
    return tuple(result)


def _term_vectors(
    parameter_types: Sequence[ObjectType], by_type: dict[ObjectType, list[str]]
) -> list[tuple[str, ...]]:
    return list(product(*(by_type.get(t, []) for t in parameter_types)))


def _schema_instantiations(
    schema: ActionSchema, pointers: Sequence[PointerDecl]
) -> list[tuple[str, ...]]:
    """单射且类型一致的指针实参。"""
    result = []
    for combo in permutations(pointers, schema.arity):
        if all(p.object_type == slot.object_type for p, slot in zip(combo, schema.params)):
            result.append(tuple(p.name for p in combo))
    return result


def build_extended_domain(
    domain: Domain, pointers: Optional[Sequence[PointerSpec]] = None
) -> ExtendedDomain:
    """生成扩展领域与指令集 A′_Z。

    Args:
        domain: 领域
        pointers: (名字, 类型) 列表；None 表示使用领域的 POINTERS 声明

    Raises:
        DomainDefinitionError: 领域不一致或指针声明不合法
        UnsatisfiableArityError: 某个动作模式无法用声明的指针实例化
    """
    domain.validate()
    decls = _pointer_decls(domain, pointers)

    by_type: dict[ObjectType, list[str]] = {}
    for decl in decls:
        by_type.setdefault(decl.object_type, []).append(decl.name)

    for schema in domain.schemas:
        for object_type in {p.object_type for p in schema.params}:
            needed = sum(1 for p in schema.params if p.object_type == object_type)
            have = len(by_type.get(object_type, []))
            if have < needed:
                raise UnsatisfiableArityError(
                    f"动作模式 '{schema.name}' 需要 {needed} 个 {object_type} 类型指针，只声明了 {have} 个"
                )

    instructions: list[Instruction] = []
    instructions += [Instruction(Opcode.INC, (p.name,)) for p in decls]
    instructions += [Instruction(Opcode.DEC, (p.name,)) for p in decls]
    instructions += [
        Instruction(Opcode.CMP_POINTERS, (a.name, b.name))
        for a, b in combinations(decls, 2)
        if a.object_type == b.object_type
    ]
    instructions += [
        Instruction(Opcode.SET, (a.name, b.name))
        for a in decls
        for b in decls
        if a.name != b.name and a.object_type == b.object_type
    ]
    for fn in domain.functions:
        for vector in _term_vectors(fn.parameter_types, by_type):
            instructions.append(Instruction(Opcode.TEST, terms=(Term(fn.name, vector),)))
    for fn in domain.functions:
        if not fn.is_numeric:
            continue
        terms = [Term(fn.name, v) for v in _term_vectors(fn.parameter_types, by_type)]
        for left, right in combinations(terms, 2):
            instructions.append(Instruction(Opcode.CMP_FUNCTIONS, terms=(left, right)))
    for schema in domain.schemas:
        for args in _schema_instantiations(schema, decls):
            instructions.append(Instruction(Opcode.SCHEMA, args, schema=schema.name))

    logger.debug("领域 %s: %d 个指针, %d 条指令", domain.name, len(decls), len(instructions))
    return ExtendedDomain(domain=domain, pointers=decls, instructions=tuple(instructions))
