"""PDDL 读取与翻译单元测试"""

from pathlib import Path

import pytest

from gp_synth.core.errors import ArityOverflowError, PddlSyntaxError, UnsupportedRequirementError
from gp_synth.domains import corpus_text
from gp_synth.engine import Interpreter, Solved, replay_plan
from gp_synth.model import build_extended_domain, dump_domain, goal_satisfied, parse_domain
from gp_synth.model.expressions import Assignment, Term
from gp_synth.pddl import (
    StripsProblem,
    TypedName,
    parse_pddl,
    required_pointers,
    translate,
    translate_problem,
)
from gp_synth.program import parse_program

UNSTACK_PLAN = [
    "inc(j)",
    "unstack(i,j)",
    "put-down(i)",
    "inc(i)",
    "inc(j)",
    "unstack(i,j)",
    "put-down(i)",
]


def _read(pddl_dir: Path, *names: str) -> list[str]:
    return [(pddl_dir / f"{name}.pddl").read_text(encoding="utf-8") for name in names]


def _domain_with(body: str, requirements: str = ":strips") -> str:
    return f"(define (domain d) (:requirements {requirements}) {body})"


@pytest.fixture
def blocksworld(pddl_dir: Path):
    """翻译后的积木世界 (领域, 实例)"""
    return translate(parse_pddl(*_read(pddl_dir, "blocksworld-domain", "blocksworld-p3")))


@pytest.fixture
def gripper(pddl_dir: Path):
    """翻译后的 gripper (领域, 两个实例)"""
    return translate(parse_pddl(*_read(pddl_dir, "gripper-domain", "gripper-p2", "gripper-p4")))


class TestParsePddl:
    """PDDL 读取测试"""

    def test_untyped_domain(self, pddl_dir: Path) -> None:
        """测试无类型领域的算子与指针需求"""
        model = parse_pddl(*_read(pddl_dir, "blocksworld-domain"))
        assert model.domain.name == "blocksworld"
        assert [op.name for op in model.domain.operators] == ["pick-up", "put-down", "stack", "unstack"]
        assert required_pointers(model.domain) == {"object": 2}
        assert model.problems == ()

    def test_typed_domain(self, pddl_dir: Path) -> None:
        """测试有类型领域按类型统计指针"""
        model = parse_pddl(*_read(pddl_dir, "gripper-domain", "gripper-p2"))
        assert required_pointers(model.domain) == {"room": 2, "ball": 1, "gripper": 1}
        assert model.problems[0].name == "gripper-2"

    def test_unbalanced_parentheses(self) -> None:
        """测试括号不匹配"""
        with pytest.raises(PddlSyntaxError):
            parse_pddl("(define (domain d) (:requirements :strips)")

    @pytest.mark.parametrize(
        "text",
        [
            _domain_with("", ":strips :adl"),
            _domain_with(
                "(:predicates (p ?x)) (:action a :parameters (?x) "
                ":precondition (not (p ?x)) :effect (p ?x))"
            ),
            _domain_with(
                "(:predicates (p ?x)) (:action a :parameters (?x ?y) "
                ":precondition (= ?x ?y) :effect (p ?x))"
            ),
            _domain_with("(:types ball - thing)", ":strips :typing"),
            _domain_with("(:types a b) (:predicates (p ?x - (either a b)))", ":strips :typing"),
            _domain_with("(:constants c)"),
        ],
    )
    def test_unsupported_constructs(self, text: str) -> None:
        """测试超出 STRIPS + typing 的构造"""
        with pytest.raises(UnsupportedRequirementError):
            parse_pddl(text)

    def test_undeclared_predicate(self) -> None:
        """测试算子使用未声明的谓词"""
        text = _domain_with(
            "(:predicates (p ?x)) (:action a :parameters (?x) :precondition (p ?x) :effect (q ?x))"
        )
        with pytest.raises(PddlSyntaxError, match="q"):
            parse_pddl(text)

    def test_problem_for_other_domain(self, pddl_dir: Path) -> None:
        """测试问题文件属于其他领域"""
        domain, problem = _read(pddl_dir, "blocksworld-domain", "gripper-p2")
        with pytest.raises(PddlSyntaxError, match="gripper-typed"):
            parse_pddl(domain, problem)

    def test_undeclared_object(self, pddl_dir: Path) -> None:
        """测试问题中使用未声明的对象"""
        (domain,) = _read(pddl_dir, "blocksworld-domain")
        problem = (
            "(define (problem p) (:domain blocksworld) (:objects a)"
            " (:init (clear b)) (:goal (and (clear a))))"
        )
        with pytest.raises(PddlSyntaxError, match="未声明"):
            parse_pddl(domain, problem)

    @pytest.mark.parametrize("objects", ["rooma roomb - room x", "rooma roomb - room x - crate"])
    def test_object_type_not_declared(self, pddl_dir: Path, objects: str) -> None:
        """测试有类型领域中对象缺少类型或类型未声明"""
        (domain,) = _read(pddl_dir, "gripper-domain")
        problem = (
            f"(define (problem p) (:domain gripper-typed) (:objects {objects})"
            " (:init (at-robby rooma)) (:goal (and (at-robby roomb))))"
        )
        with pytest.raises(PddlSyntaxError, match="'x'"):
            parse_pddl(domain, problem)


class TestTranslate:
    """翻译测试"""

    def test_blocksworld_pointers(self, blocksworld) -> None:
        """测试单一类型时指针命名为 i、j"""
        domain, (instance,) = blocksworld
        assert [str(p) for p in domain.default_pointers] == ["i:object", "j:object"]
        assert instance.count("object") == 3

    def test_unstack_schema(self, blocksworld) -> None:
        """测试先删后加，前提是原子的合取"""
        domain, _ = blocksworld
        unstack = next(s for s in domain.schemas if s.name == "unstack")
        assert [str(e.target) for e in unstack.effects] == [
            "clear(x)",
            "handempty()",
            "on(x,y)",
            "holding(x)",
            "clear(y)",
        ]
        assert [e.value.value for e in unstack.effects] == [0, 0, 0, 1, 1]
        assert len(unstack.pre.operands) == 3

    def test_initial_state_and_goal(self, blocksworld) -> None:
        """测试对象按声明顺序编号，未列出的原子为 0"""
        _, (instance,) = blocksworld
        assert Assignment(Term("on", (0, 1)), 1) in instance.init
        assert Assignment(Term("ontable", (2,)), 1) in instance.init
        assert [a.term for a in instance.goal.assignments] == [
            Term("ontable", (b,)) for b in range(3)
        ]

    def test_plan_solves_blocksworld(self, blocksworld) -> None:
        """测试七步计划把积木全部放到桌面"""
        domain, (instance,) = blocksworld
        ext = build_extended_domain(domain)
        state = replay_plan([ext.lookup(text) for text in UNSTACK_PLAN], ext, instance)
        assert goal_satisfied(state, instance.goal)
        assert state.value(Term("handempty", ())) == 1

    def test_gripper_program_on_translated_problems(self, gripper) -> None:
        """测试回归程序在翻译出的 gripper 问题上求解"""
        domain, instances = gripper
        assert [p.name for p in domain.default_pointers] == ["r1", "r2", "b1", "g1"]
        ext = build_extended_domain(domain)
        program = parse_program(corpus_text("gripper"), ext)
        outcomes = Interpreter(ext).run_all(program, instances)
        assert [type(o) for o in outcomes] == [Solved, Solved]
        assert instances[1].object_counts == {"room": 2, "ball": 4, "gripper": 2}

    def test_explicit_pointer_counts(self, pddl_dir: Path) -> None:
        """测试显式声明更多指针"""
        model = parse_pddl(*_read(pddl_dir, "blocksworld-domain"))
        domain, _ = translate(model, {"object": 3})
        assert [p.name for p in domain.default_pointers] == ["i", "j", "k"]

    def test_too_few_pointers(self, pddl_dir: Path) -> None:
        """测试指针少于算子的元数"""
        model = parse_pddl(*_read(pddl_dir, "blocksworld-domain"))
        with pytest.raises(ArityOverflowError, match="object"):
            translate(model, {"object": 1})

    def test_dump_round_trip(self, gripper) -> None:
        """测试翻译结果可以写成领域文件再读回"""
        domain, _ = gripper
        assert parse_domain(dump_domain(domain)) == domain

    def test_untyped_object_in_typed_problem(self, pddl_dir: Path) -> None:
        """测试直接翻译含未声明类型对象的问题"""
        model = parse_pddl(*_read(pddl_dir, "gripper-domain"))
        problem = StripsProblem("p", "gripper-typed", (TypedName("b1", "ball"), TypedName("x")))
        with pytest.raises(PddlSyntaxError, match="object"):
            translate_problem(problem, model.domain)
