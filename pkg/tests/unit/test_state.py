"""状态、标志与目标单元测试"""

import pytest

from gp_synth.core.errors import DomainDefinitionError, MissingAssignmentError
from gp_synth.domains import builtin_extended_domain
from gp_synth.model import (
    ConstraintGoal,
    Flags,
    Instance,
    PartialGoal,
    VariableRegistry,
    goal_deviation,
    goal_satisfied,
    make_initial_state,
)
from gp_synth.model.domain import FunctionKind, FunctionSymbol
from gp_synth.model.expressions import Assignment, Term, parse_condition
from gp_synth.model.state import flags_code


class TestFlags:
    """标志寄存器测试"""

    @pytest.mark.parametrize(
        ("res", "y_z", "y_c"),
        [(0, True, False), (5, False, True), (-3, False, False)],
    )
    def test_from_result(self, res: int, y_z: bool, y_c: bool) -> None:
        """测试 y_z ⇔ res=0，y_c ⇔ res>0"""
        flags = Flags.from_result(res)
        assert (flags.y_z, flags.y_c) == (y_z, y_c)
        assert flags.code == flags_code(res)

    def test_code_round_trip(self) -> None:
        """测试编码 y_z + 2·y_c"""
        for code in range(4):
            assert Flags.from_code(code).code == code
        assert Flags(True, False).code == 1
        assert Flags(False, True).code == 2


class TestVariableRegistry:
    """状态变量表测试"""

    def test_row_major_layout(self) -> None:
        """测试多元函数按行优先排列"""
        registry = VariableRegistry(
            [
                FunctionSymbol("handempty", ()),
                FunctionSymbol("on", ("block", "block")),
            ],
            {"block": 3},
        )
        assert registry.size == 1 + 9
        assert registry.index("handempty", []) == 0
        assert registry.index("on", [1, 2]) == 1 + 1 * 3 + 2
        assert registry.term_at(6) == Term("on", (1, 2))

    def test_out_of_range(self) -> None:
        """测试对象下标越界"""
        registry = VariableRegistry([FunctionSymbol("v", ("cell",), FunctionKind.NUMERIC)], {"cell": 2})
        with pytest.raises(DomainDefinitionError, match="越界"):
            registry.index("v", [2])

    def test_locator_with_pointers(self) -> None:
        """测试带指针的项按指针值寻址"""
        registry = VariableRegistry([FunctionSymbol("on", ("block", "block"))], {"block": 4})
        locate = registry.locator(Term("on", ("x", 1)), {"x": 0}.__getitem__)
        assert locate([2]) == 2 * 4 + 1

    def test_variables_enumeration(self) -> None:
        """测试按下标顺序枚举基项"""
        registry = VariableRegistry([FunctionSymbol("v", ("cell",), FunctionKind.NUMERIC)], {"cell": 3})
        assert [i for _, i in registry.variables()] == [0, 1, 2]


class TestInitialState:
    """初始状态测试"""

    def test_sorting_initial_state(self, sorting_ext, sorting_instances) -> None:
        """测试初值、指针全 0、标志全假"""
        state = make_initial_state(sorting_ext, sorting_instances[0])
        assert state.values == (6, 3, 4, 2, 5, 1)
        assert state.pointers == (0, 0)
        assert state.flags == Flags(False, False)
        assert state.value(Term("vector", ("i",))) == 6
        assert state.to_dict()["pointers"] == {"i": 0, "j": 0}

    def test_unlisted_variables_default_to_zero(self) -> None:
        """测试未列出的变量取 0"""
        ext = builtin_extended_domain("visitall")
        instance = Instance(
            "v", {"row": 2, "column": 2}, (Assignment(Term("visited", (0, 0)), 1),)
        )
        state = make_initial_state(ext, instance)
        assert state.values == (1, 0, 0, 0)

    def test_incomplete_init_rejected(self, sorting_ext) -> None:
        """测试要求完整赋值时缺少变量"""
        instance = Instance(
            "s",
            {"cell": 2},
            (Assignment(Term("vector", (0,)), 1),),
            init_default=None,
        )
        with pytest.raises(MissingAssignmentError, match="vector\\(1\\)"):
            make_initial_state(sorting_ext, instance)

    def test_missing_objects_for_pointer(self, sorting_ext) -> None:
        """测试指针类型没有对象"""
        with pytest.raises(DomainDefinitionError, match="没有类型"):
            make_initial_state(sorting_ext, Instance("s", {"cell": 0}))

    def test_boolean_value_out_of_range(self) -> None:
        """测试布尔变量初值只能是 0 或 1"""
        ext = builtin_extended_domain("visitall")
        instance = Instance(
            "v", {"row": 1, "column": 1}, (Assignment(Term("visited", (0, 0)), 2),)
        )
        with pytest.raises(DomainDefinitionError, match="不合法"):
            make_initial_state(ext, instance)

    def test_init_with_pointer_rejected(self, sorting_ext) -> None:
        """测试 INIT 中不能出现指针"""
        instance = Instance("s", {"cell": 2}, (Assignment(Term("vector", ("i",)), 1),))
        with pytest.raises(DomainDefinitionError, match="指针"):
            make_initial_state(sorting_ext, instance)


class TestGoals:
    """目标测试"""

    def test_partial_goal(self, sorting_ext, vector_instance) -> None:
        """测试部分状态目标与平方偏差"""
        instance = vector_instance("s", [3, 1, 2], [1, 2, 3])
        state = make_initial_state(sorting_ext, instance)
        assert not goal_satisfied(state, instance.goal)
        assert goal_deviation(state, instance.goal) == 4 + 1 + 1

    def test_boolean_deviation_counts_unsatisfied_atoms(self) -> None:
        """测试布尔目标的偏差即未满足的原子数"""
        ext = builtin_extended_domain("visitall")
        goal = PartialGoal(
            tuple(Assignment(Term("visited", (0, c)), 1) for c in range(3))
        )
        instance = Instance(
            "v", {"row": 1, "column": 3}, (Assignment(Term("visited", (0, 1)), 1),), goal
        )
        state = make_initial_state(ext, instance)
        assert goal_deviation(state, goal) == 2

    def test_constraint_goal(self, sorting_ext) -> None:
        """测试约束目标"""
        goal = ConstraintGoal(parse_condition("vector(0) <= vector(1) & vector(1) <= vector(2)"))
        instance = Instance(
            "s",
            {"cell": 3},
            tuple(Assignment(Term("vector", (i,)), v) for i, v in enumerate([1, 2, 2])),
            goal,
        )
        assert goal_satisfied(make_initial_state(sorting_ext, instance), goal)

    def test_empty_goal_always_satisfied(self, sorting_ext, vector_instance) -> None:
        """测试空目标恒满足"""
        state = make_initial_state(sorting_ext, vector_instance("s", [2, 1], [2, 1]))
        assert goal_satisfied(state, PartialGoal())
        assert goal_deviation(state, PartialGoal()) == 0

    def test_goal_with_pointer(self) -> None:
        """测试目标中的指针按当前值寻址"""
        ext = builtin_extended_domain("select")
        instance = Instance(
            "s",
            {"cell": 2},
            (Assignment(Term("vector", (0,)), 4), Assignment(Term("vector", (1,)), 1)),
            PartialGoal((Assignment(Term("vector", ("b",)), 1),)),
        )
        state = make_initial_state(ext, instance)
        assert goal_deviation(state, instance.goal) == 9
