"""评估函数单元测试"""

import random

import pytest

from gp_synth.core.errors import GoalNotPartialStateError, UnknownEvaluationFunctionError
from gp_synth.domains import generate_instances
from gp_synth.engine import (
    EvaluationVector,
    Interpreter,
    ReachedUndefined,
    compare,
    eval_performance,
    eval_structural,
    evaluate,
    parse_eval_key,
)
from gp_synth.engine.evaluation import InstanceEvaluation, aggregate, has_failure
from gp_synth.model import ConstraintGoal, Instance
from gp_synth.model.expressions import Assignment, Term, parse_condition
from gp_synth.program import PlanningProgram, parse_program

NESTED = """\
0. inc(i)
1. inc(j)
2. goto(0, !(Yz&!Yc))
3. inc(i)
4. goto(1, !(Yz&!Yc))
5. end
"""


class TestStructural:
    """结构函数测试"""

    def test_worked_program(self, sorting_ext, worked_program_text) -> None:
        """测试部分程序的 f1、f2、f3、f7"""
        program = parse_program(worked_program_text, sorting_ext)
        assert tuple(eval_structural(program)) == (1, 1, 0, 1)

    def test_empty_program(self) -> None:
        """测试空程序"""
        assert tuple(eval_structural(PlanningProgram.empty(6))) == (0, 5, 0, 0)

    def test_repeated_actions(self, sorting_ext) -> None:
        """测试重复动作计数"""
        program = parse_program("0. inc(i)\n1. inc(i)\n2. inc(i)\n3. dec(i)\n4. end\n", sorting_ext)
        assert eval_structural(program).f3 == 2

    def test_nested_gotos(self, sorting_ext) -> None:
        """测试跨度严格包含另一条 goto 时嵌套深度加一"""
        program = parse_program(NESTED, sorting_ext)
        values = eval_structural(program)
        assert values.f1 == 2
        assert values.f7 == 2

    def test_structural_key_skips_execution(self, sorting_ext, sorting_instances) -> None:
        """测试只需结构函数时不执行程序"""
        vector = evaluate(
            PlanningProgram.empty(4), sorting_instances, Interpreter(sorting_ext), key=("f1", "f2")
        )
        assert vector.f4 is None
        assert vector.key(("f2", "f1")) == (3, 0)
        with pytest.raises(UnknownEvaluationFunctionError, match="未计算"):
            vector.key(("f5",))


class TestPerformance:
    """执行函数测试"""

    def test_worked_program(self, sorting_ext, sorting_instances, worked_program_text) -> None:
        """测试 f4、f5、f6 以及组合函数"""
        program = parse_program(worked_program_text, sorting_ext)
        vector = evaluate(program, sorting_instances, Interpreter(sorting_ext))
        assert vector.f4 == 1
        assert vector.f5 == 56 + 26
        assert vector.f6 == 6
        assert vector.f8 == vector.f5 + vector.f6
        assert vector.f9 == 5 * vector.f5 + vector.f6
        assert [e.line for e in vector.per_instance] == [4, 4]

    def test_weight(self, sorting_ext, sorting_instances, worked_program_text) -> None:
        """测试 f9 的权重"""
        program = parse_program(worked_program_text, sorting_ext)
        vector = evaluate(program, sorting_instances, Interpreter(sorting_ext), weight=2)
        assert vector.f9 == 2 * 82 + 6

    def test_combined_functions_on_random_pairs(self, sorting_ext, random_program) -> None:
        """测试随机 (程序, 实例集) 上 f8 = f5 + f6、f9 = 5·f5 + f6"""
        rng = random.Random(31)
        interpreter = Interpreter(sorting_ext)
        for _ in range(1000):
            count, seed = rng.randint(1, 3), rng.randrange(100)
            instances = generate_instances("sorting", count=count, seed=seed)
            program = random_program(rng, rng.randint(2, 8), sorting_ext.size)
            vector = evaluate(program, instances, interpreter)
            assert vector.f8 == vector.f5 + vector.f6
            assert vector.f9 == 5 * vector.f5 + vector.f6
            assert 0 <= vector.f4 <= program.n - 1

    def test_eval_performance_without_deviation(
        self, sorting_ext, sorting_instances, worked_program_text
    ) -> None:
        """测试不计算偏差时 f5、f8、f9 为空，执行结果随返回值给出"""
        program = parse_program(worked_program_text, sorting_ext)
        values = eval_performance(
            program, sorting_instances, Interpreter(sorting_ext), with_deviation=False
        )
        assert (values.f4, values.f5, values.f6, values.f8, values.f9) == (1, None, 6, None, None)
        assert [type(o) for o in values.outcomes] == [ReachedUndefined, ReachedUndefined]

    def test_empty_program_on_sorting(self, sorting_ext, sorting_instances) -> None:
        """测试空程序在第 0 行停止"""
        vector = evaluate(PlanningProgram.empty(6), sorting_instances, Interpreter(sorting_ext))
        assert vector.f4 == 5
        assert vector.f6 == 0

    def test_solved_program(self, toy_ext, toy_instances) -> None:
        """测试已求解的实例贡献 n-1 与零偏差"""
        program = parse_program("0. paint(i)\n1. inc(i)\n2. goto(0, !(Yz&!Yc))\n3. end\n", toy_ext)
        vector = evaluate(program, toy_instances, Interpreter(toy_ext))
        assert (vector.f4, vector.f5, vector.f6) == (0, 0, 4 + 6)

    def test_failed_instances(self, toy_ext, toy_instances) -> None:
        """测试失败的实例同样贡献 n-1 与零偏差"""
        interpreter = Interpreter(toy_ext)
        program = parse_program("0. paint(i)\n1. end\n", toy_ext)
        outcomes = interpreter.run_all(program, toy_instances)
        assert has_failure(outcomes)
        vector = evaluate(program, toy_instances, interpreter, outcomes=outcomes)
        assert (vector.f4, vector.f5, vector.f6) == (0, 0, 2)

    def test_constraint_goal_has_no_deviation(self, sorting_ext) -> None:
        """测试约束目标不能计算 f5，但 f4 仍可用"""
        instance = Instance(
            "c",
            {"cell": 2},
            (Assignment(Term("vector", (0,)), 2), Assignment(Term("vector", (1,)), 1)),
            ConstraintGoal(parse_condition("vector(0) <= vector(1)")),
        )
        interpreter = Interpreter(sorting_ext)
        with pytest.raises(GoalNotPartialStateError):
            evaluate(PlanningProgram.empty(3), [instance], interpreter, key=("f5",))
        vector = evaluate(PlanningProgram.empty(3), [instance], interpreter, key=("f4", "f7"))
        assert vector.f4 == 2
        assert vector.f5 is None

    def test_aggregate(self) -> None:
        """测试聚合取最大行并求和"""
        evaluations = [InstanceEvaluation(2, 4, 3), InstanceEvaluation(5, 1, 7)]
        assert aggregate(evaluations, 8, weight=3) == (2, 5, 10, 15, 25)

    def test_to_dict(self, sorting_ext, sorting_instances, worked_program_text) -> None:
        """测试字典输出包含各实例的贡献"""
        program = parse_program(worked_program_text, sorting_ext)
        data = evaluate(program, sorting_instances, Interpreter(sorting_ext)).to_dict()
        assert data["f4"] == 1
        assert data["per_instance"] == [
            {"f4": 4, "f5": 56, "f6": 3},
            {"f4": 4, "f5": 26, "f6": 3},
        ]


class TestEvalKey:
    """评估键测试"""

    def test_parse(self) -> None:
        """测试解析逗号分隔的键"""
        assert parse_eval_key("f5, F7") == ("f5", "f7")
        assert parse_eval_key(["f4", "f1"]) == ("f4", "f1")

    @pytest.mark.parametrize("text", ["", " , ", "f10", "f5,g1"])
    def test_invalid(self, text: str) -> None:
        """测试空键与未知函数"""
        with pytest.raises(UnknownEvaluationFunctionError):
            parse_eval_key(text)

    def test_compare_lexicographic(self) -> None:
        """测试按键字典序比较"""
        a = EvaluationVector(f1=1, f5=3)
        b = EvaluationVector(f1=0, f5=3)
        assert compare(a, b, ("f5", "f1")) == 1
        assert compare(b, a, ("f5", "f1")) == -1
        assert compare(a, b, ("f5",)) == 0
