"""把 STRIPS 模型翻译成基于指针的表示。

- 每个谓词成为一个布尔函数
- 每个算子成为动作模式：参数即指针槽，前提是 ``p(..)=1`` 的合取，
  删除效果赋 0、添加效果赋 1（先删后加，同一原子以添加为准）
- 初始状态中未列出的原子取 0，目标是列出的原子为 1 的部分状态

对象下标按问题文件中的声明顺序分配。
"""

import logging
from typing import Optional

from gp_synth.core.errors import ArityOverflowError, PddlSyntaxError
from gp_synth.model.domain import (
    ActionSchema,
    Domain,
    FunctionKind,
    FunctionSymbol,
    Instance,
    PartialGoal,
    PointerDecl,
)
from gp_synth.model.expressions import (
    TRUE,
    Assignment,
    BoolOp,
    Comparison,
    Condition,
    Const,
    Effect,
    Term,
)
from gp_synth.model.instructions import name_pointers
from gp_synth.pddl.parser import (
    DEFAULT_TYPE,
    Atom,
    Operator,
    StripsDomain,
    StripsModel,
    StripsProblem,
)

logger = logging.getLogger(__name__)


def _variable(name: str) -> str:
    return name.lstrip("?")


def _term(atom: Atom) -> Term:
    return Term(atom.predicate, tuple(_variable(a) for a in atom.args))


def required_pointers(domain: StripsDomain) -> dict[str, int]:
    """每种类型需要的指针数：所有算子中该类型参数个数的最大值。"""
    needed: dict[str, int] = {t: 0 for t in domain.types or (DEFAULT_TYPE,)}
    for op in domain.operators:
        for object_type in needed:
            count = sum(1 for p in op.params if p.type == object_type)
            needed[object_type] = max(needed[object_type], count)
    return needed


def _schema(op: Operator) -> ActionSchema:
    params = tuple(PointerDecl(_variable(p.name), p.type) for p in op.params)
    atoms = [Comparison("=", _term(a), Const(1)) for a in op.pre]
    pre: Condition = TRUE
    if len(atoms) == 1:
        pre = atoms[0]
    elif atoms:
        pre = BoolOp("&", tuple(atoms))
    adds = [_term(a) for a in op.add]
    deletes = [t for t in dict.fromkeys(_term(a) for a in op.delete) if t not in adds]
    effects = tuple(Effect(t, Const(0)) for t in deletes) + tuple(
        Effect(t, Const(1)) for t in dict.fromkeys(adds)
    )
    return ActionSchema(op.name, params, pre, effects)


def translate_domain(
    domain: StripsDomain, pointers: Optional[dict[str, int]] = None
) -> Domain:
    """翻译领域。

    Args:
        domain: STRIPS 领域
        pointers: 每种类型声明的指针数；None 表示按最大元数自动声明

    Raises:
        ArityOverflowError: 声明的指针少于某个算子的需要
    """
    needed = required_pointers(domain)
    counts = dict(needed) if pointers is None else dict(pointers)
    for object_type, count in needed.items():
        if counts.get(object_type, 0) < count:
            raise ArityOverflowError(
                f"类型 '{object_type}' 需要 {count} 个指针，只声明了 {counts.get(object_type, 0)} 个"
            )
    types = domain.types or (DEFAULT_TYPE,)
    functions = tuple(
        FunctionSymbol(p.name, tuple(param.type for param in p.params), FunctionKind.BOOLEAN)
        for p in domain.predicates
    )
    result = Domain(
        name=domain.name,
        types=types,
        functions=functions,
        schemas=tuple(_schema(op) for op in domain.operators),
        default_pointers=name_pointers(counts),
    )
    result.validate()
    return result


def translate_problem(problem: StripsProblem, domain: StripsDomain) -> Instance:
    """翻译问题：对象按声明顺序编号。"""
    types = domain.types or (DEFAULT_TYPE,)
    index: dict[str, int] = {}
    counts: dict[str, int] = {t: 0 for t in types}
    for obj in problem.objects:
        object_type = obj.type if domain.typed else DEFAULT_TYPE
        if object_type not in counts:
            raise PddlSyntaxError(f"对象 '{obj.name}' 的类型 '{object_type}' 未在领域中声明")
        index[obj.name] = counts[object_type]
        counts[object_type] += 1

    def ground(atom: Atom) -> Term:
        return Term(atom.predicate, tuple(index[a] for a in atom.args))

    init = tuple(
        Assignment(ground(a), 1)
        for a in sorted(problem.init, key=lambda a: (a.predicate, tuple(index[x] for x in a.args)))
    )
    goal = PartialGoal(tuple(Assignment(ground(a), 1) for a in problem.goal))
    return Instance(problem.name, counts, init, goal)


def translate(
    model: StripsModel, pointers: Optional[dict[str, int]] = None
) -> tuple[Domain, list[Instance]]:
    """把 STRIPS 模型翻译为 (领域, 实例列表)。"""
    domain = translate_domain(model.domain, pointers)
    instances = [translate_problem(p, model.domain) for p in model.problems]
    logger.info(
        "翻译 %s：%d 个动作模式，指针 %s，%d 个实例",
        domain.name,
        len(domain.schemas),
        " ".join(str(p) for p in domain.default_pointers),
        len(instances),
    )
    return domain, instances
