"""PDDL 支持。

STRIPS（含 typing）片段的读取器，以及到指针表示的翻译器。
"""

from gp_synth.pddl.parser import (
    Atom,
    Operator,
    Predicate,
    StripsDomain,
    StripsModel,
    StripsProblem,
    TypedName,
    parse_domain_text,
    parse_pddl,
    parse_problem_text,
)
from gp_synth.pddl.translator import (
    required_pointers,
    translate,
    translate_domain,
    translate_problem,
)

__all__ = [
    "Atom",
    "Operator",
    "Predicate",
    "StripsDomain",
    "StripsModel",
    "StripsProblem",
    "TypedName",
    "parse_domain_text",
    "parse_pddl",
    "parse_problem_text",
    "required_pointers",
    "translate",
    "translate_domain",
    "translate_problem",
]
