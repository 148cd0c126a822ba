"""状态表示。

状态变量按 VariableRegistry 排成稠密数组：每个函数占一段连续区间，
区间内按对象下标元组行优先排列。指针与标志寄存器单独存放。
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Optional, Sequence

from gp_synth.core.errors import (
    DomainDefinitionError,
    GoalNotPartialStateError,
    MissingAssignmentError,
)
from gp_synth.model.domain import ConstraintGoal, FunctionSymbol, Goal, Instance, PartialGoal
from gp_synth.model.expressions import (
    Locator,
    Pointers,
    Term,
    Values,
    compile_condition,
    referenced_names,
    referenced_terms,
)
from gp_synth.model.instructions import ExtendedDomain

GoalFn = Callable[[Values, Pointers], bool]
DeviationFn = Callable[[Values, Pointers], int]


class VariableRegistry:
    """φ(o⃗) -> 数组下标 的映射。

    Args:
        functions: 函数符号（按声明顺序）
        object_counts: 每种类型的对象数
    """

    def __init__(self, functions: Sequence[FunctionSymbol], object_counts: dict[str, int]):
        self._functions = {fn.name: fn for fn in functions}
        self._offsets: dict[str, int] = {}
        self._dims: dict[str, tuple[int, ...]] = {}
        self._strides: dict[str, tuple[int, ...]] = {}
        offset = 0
        for fn in functions:
            dims = tuple(object_counts.get(t, 0) for t in fn.parameter_types)
            strides = []
            stride = 1
            for d in reversed(dims):
                strides.append(stride)
                stride *= d
            self._offsets[fn.name] = offset
            self._dims[fn.name] = dims
            self._strides[fn.name] = tuple(reversed(strides))
            offset += stride
        self._size = offset

    @property
    def size(self) -> int:
        return self._size

    def function(self, name: str) -> FunctionSymbol:
        try:
            return self._functions[name]
        except KeyError:
            raise DomainDefinitionError(f"函数 '{name}' 未声明") from None

    def dims(self, name: str) -> tuple[int, ...]:
        return self._dims[name]

    def index(self, function: str, objects: Sequence[int]) -> int:
        """返回 φ(o⃗) 的下标。

        Raises:
            DomainDefinitionError: 函数未声明、元数不符或对象下标越界
        """
        self.function(function)
        dims = self._dims[function]
        if len(objects) != len(dims):
            raise DomainDefinitionError(f"'{function}' 的元数应为 {len(dims)}")
        index = self._offsets[function]
        for obj, dim, stride in zip(objects, dims, self._strides[function]):
            if not 0 <= obj < dim:
                raise DomainDefinitionError(f"'{function}' 的对象下标 {obj} 越界 (0..{dim - 1})")
            index += obj * stride
        return index

    def ground_index(self, term: Term) -> int:
        """只含对象下标的项。"""
        if term.pointer_args:
            raise DomainDefinitionError(f"'{term}' 含有指针，不是基项")
        return self.index(term.function, [int(a) for a in term.args])

    def locator(self, term: Term, pointer_index: Callable[[str], int]) -> Locator:
        """把（可能带指针的）函数项编译为 ``f(pointers) -> 下标``。"""
        self.function(term.function)
        dims = self._dims[term.function]
        if len(term.args) != len(dims):
            raise DomainDefinitionError(f"'{term}' 的元数应为 {len(dims)}")

        base = self._offsets[term.function]
        dynamic: list[tuple[int, int]] = []
        for arg, dim, stride in zip(term.args, dims, self._strides[term.function]):
            if isinstance(arg, str):
                dynamic.append((pointer_index(arg), stride))
            else:
                if not 0 <= arg < dim:
                    raise DomainDefinitionError(f"'{term}' 的对象下标 {arg} 越界")
                base += arg * stride

        if not dynamic:
            return lambda ptrs: base
        if len(dynamic) == 1:
            p, s = dynamic[0]
            if s == 1:
                return lambda ptrs: base + ptrs[p]
            return lambda ptrs: base + ptrs[p] * s
        return lambda ptrs: base + sum(ptrs[p] * s for p, s in dynamic)

    def variables(self) -> Iterator[tuple[Term, int]]:
        """按下标顺序枚举 (基项, 下标)。"""
        for name in self._functions:
            for objects in product(*(range(d) for d in self._dims[name])):
                yield Term(name, tuple(objects)), self.index(name, objects)

    def term_at(self, index: int) -> Term:
        for name in self._functions:
            offset = self._offsets[name]
            dims = self._dims[name]
            total = 1
            for d in dims:
                total *= d
            if offset <= index < offset + total:
                rest = index - offset
                objects = []
                for stride in self._strides[name]:
                    objects.append(rest // stride)
                    rest %= stride
                return Term(name, tuple(objects))
        raise IndexError(index)


@dataclass(frozen=True)
class Flags:
    """FLAGS 寄存器 (y_z, y_c)。"""

    y_z: bool = False
    y_c: bool = False

    @property
    def code(self) -> int:
        """联合取值编码 y_z + 2·y_c。"""
        return int(self.y_z) + 2 * int(self.y_c)

    @classmethod
    def from_code(cls, code: int) -> "Flags":
        return cls(bool(code & 1), bool(code & 2))

    @classmethod
    def from_result(cls, res: int) -> "Flags":
        return cls(res == 0, res > 0)


def flags_code(res: int) -> int:
    """由 RAM 指令结果计算标志编码。"""
    if res == 0:
        return 1
    return 2 if res > 0 else 0


@dataclass(frozen=True)
class State:
    """规划状态：状态变量值、指针值与标志。"""

    values: tuple[int, ...]
    pointers: tuple[int, ...]
    flags: Flags = field(default_factory=Flags)
    registry: Optional[VariableRegistry] = field(default=None, compare=False, repr=False)
    pointer_names: tuple[str, ...] = field(default=(), compare=False, repr=False)

    def pointer(self, name: str) -> int:
        return self.pointers[self.pointer_names.index(name)]

    def value(self, term: Term) -> int:
        """读取函数项的值，参数可以是指针名。"""
        if self.registry is None:
            raise DomainDefinitionError("状态没有关联的变量表")
        loc = self.registry.locator(term, self.pointer_names.index)
        return self.values[loc(self.pointers)]

    def to_dict(self) -> dict[str, object]:
        """非零变量、指针与标志。"""
        variables: dict[str, int] = {}
        if self.registry is not None:
            for i, v in enumerate(self.values):
                if v:
                    variables[str(self.registry.term_at(i))] = v
        return {
            "variables": variables,
            "pointers": dict(zip(self.pointer_names, self.pointers)),
            "flags": {"y_z": self.flags.y_z, "y_c": self.flags.y_c},
        }


# ============ 实例检查与初始状态 ============
def check_instance(extended_domain: ExtendedDomain, instance: Instance) -> None:
    """检查实例与扩展领域一致。

    Raises:
        DomainDefinitionError: 类型未声明、初值越界或目标引用未知变量
    """
    domain = extended_domain.domain
    for object_type, count in instance.object_counts.items():
        if object_type not in domain.types:
            raise DomainDefinitionError(f"实例 '{instance.name}' 使用了未声明的类型 '{object_type}'")
        if count < 0:
            raise DomainDefinitionError(f"类型 '{object_type}' 的对象数为负")
    for pointer in extended_domain.pointers:
        if instance.count(pointer.object_type) == 0:
            raise DomainDefinitionError(
                f"实例 '{instance.name}' 没有类型 '{pointer.object_type}' 的对象，指针 '{pointer.name}' 无法取值"
            )
    for assignment in instance.init:
        fn = domain.function(assignment.term.function)
        if assignment.term.pointer_args:
            raise DomainDefinitionError(f"INIT 中的 '{assignment.term}' 不能含有指针")
        if assignment.value < 0 or (not fn.is_numeric and assignment.value > 1):
            raise DomainDefinitionError(f"'{assignment}' 的取值不合法")
    goal_terms: list[Term] = []
    if isinstance(instance.goal, PartialGoal):
        goal_terms = [a.term for a in instance.goal.assignments]
    else:
        goal_terms = referenced_terms(instance.goal.condition)
        unknown = referenced_names(instance.goal.condition) - set(extended_domain.pointer_names)
        if unknown:
            raise DomainDefinitionError(f"GOALEXPR 引用了未声明的指针: {sorted(unknown)}")
    for term in goal_terms:
        domain.check_term(term, extended_domain.pointer_type)


def make_registry(extended_domain: ExtendedDomain, instance: Instance) -> VariableRegistry:
    return VariableRegistry(extended_domain.domain.functions, instance.object_counts)


def make_initial_state(extended_domain: ExtendedDomain, instance: Instance) -> State:
    """构造初始状态：状态变量取初值，指针全为 0，标志全为假。

    Raises:
        MissingAssignmentError: init_default 为 None 且初值不完整
    """
    check_instance(extended_domain, instance)
    registry = make_registry(extended_domain, instance)
    default = instance.init_default
    values = [0 if default is None else default] * registry.size
    assigned: set[int] = set()
    for assignment in instance.init:
        index = registry.ground_index(assignment.term)
        values[index] = assignment.value
        assigned.add(index)
    if default is None and len(assigned) != registry.size:
        missing = next(t for t, i in registry.variables() if i not in assigned)
        raise MissingAssignmentError(f"实例 '{instance.name}' 的初始状态缺少 '{missing}'")
    return State(
        values=tuple(values),
        pointers=(0,) * len(extended_domain.pointers),
        flags=Flags(),
        registry=registry,
        pointer_names=extended_domain.pointer_names,
    )


# ============ 目标 ============
def compile_goal(
    goal: Goal, registry: VariableRegistry, pointer_index: Callable[[str], int]
) -> GoalFn:
    """把目标编译为 ``f(values, pointers) -> bool``。"""
    if isinstance(goal, ConstraintGoal):
        return compile_condition(goal.condition, lambda t: registry.locator(t, pointer_index), pointer_index)
    checks = [(registry.locator(a.term, pointer_index), a.value) for a in goal.assignments]

    def satisfied(vals: Values, ptrs: Pointers) -> bool:
        for loc, expected in checks:
            if vals[loc(ptrs)] != expected:
                return False
        return True

    return satisfied


def compile_deviation(
    goal: Goal, registry: VariableRegistry, pointer_index: Callable[[str], int]
) -> DeviationFn:
    """把部分状态目标编译为 ``f(values, pointers) -> Σ(v - G)²``。

    Raises:
        GoalNotPartialStateError: 目标是约束表达式
    """
    if not isinstance(goal, PartialGoal):
        raise GoalNotPartialStateError("目标是约束表达式，无法计算目标偏差")
    checks = [(registry.locator(a.term, pointer_index), a.value) for a in goal.assignments]

    def deviation(vals: Values, ptrs: Pointers) -> int:
        total = 0
        for loc, expected in checks:
            diff = vals[loc(ptrs)] - expected
            total += diff * diff
        return total

    return deviation


def _state_pointer_index(state: State) -> Callable[[str], int]:
    return state.pointer_names.index


def goal_satisfied(state: State, goal: Goal) -> bool:
    """状态是否满足目标。空的部分状态目标恒满足。"""
    if isinstance(goal, PartialGoal) and not goal.assignments:
        return True
    if state.registry is None:
        raise DomainDefinitionError("状态没有关联的变量表")
    check = compile_goal(goal, state.registry, _state_pointer_index(state))
    return check(state.values, state.pointers)


def goal_deviation(state: State, goal: Goal) -> int:
    """部分状态目标的平方偏差和；布尔变量即未满足的原子数。"""
    if isinstance(goal, PartialGoal) and not goal.assignments:
        return 0
    if state.registry is None:
        raise DomainDefinitionError("状态没有关联的变量表")
    return compile_deviation(goal, state.registry, _state_pointer_index(state))(
        state.values, state.pointers
    )
