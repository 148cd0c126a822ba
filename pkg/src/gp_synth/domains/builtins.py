"""内置基准领域。

提供 11 个基准领域的领域文件文本，以及各自的默认合成配置与实例规模。
"""

from functools import lru_cache
from typing import Any, Optional, Sequence

from gp_synth.core.errors import UnknownDomainError
from gp_synth.model.domain import Domain
from gp_synth.model.instructions import ExtendedDomain, PointerSpec, build_extended_domain
from gp_synth.model.loader import parse_domain

_VECTOR = """\
TYPES cell
FUNCTION num vector(cell)
"""

_ARITHMETIC = """\
SCHEMA vector-inc(x:cell)
EFF vector(x) := vector(x) + 1
SCHEMA vector-dec(x:cell)
PRE vector(x) > 0
EFF vector(x) := vector(x) - 1
SCHEMA vector-add(x:cell,y:cell)
EFF vector(x) := vector(x) + vector(y)
POINTERS a:cell b:cell
"""

_SWAP = """\
SCHEMA swap(x:cell,y:cell)
PRE x != y
EFF vector(x) := vector(y) ; vector(y) := vector(x)
POINTERS i:cell j:cell
"""

BUILTIN_DOMAINS: dict[str, str] = {
    "sorting": "DOMAIN sorting\n" + _VECTOR + _SWAP,
    "reverse": "DOMAIN reverse\n" + _VECTOR + _SWAP,
    "select": "DOMAIN select\n" + _VECTOR + "POINTERS a:cell b:cell\n",
    "find": """\
DOMAIN find
TYPES cell counter
FUNCTION num vector(cell)
FUNCTION num count(counter)
SCHEMA accumulate(x:counter)
EFF count(x) := count(x) + 1
POINTERS i:cell t:cell a:counter
""",
    "triangular-sum": "DOMAIN triangular-sum\n" + _VECTOR + _ARITHMETIC,
    "fibonacci": "DOMAIN fibonacci\n" + _VECTOR + _ARITHMETIC,
    "corridor": """\
DOMAIN corridor
TYPES cell
FUNCTION num vector(cell)
SCHEMA vector-left(x:cell)
PRE vector(x) > 0
EFF vector(x) := vector(x) - 1
SCHEMA vector-right(x:cell)
EFF vector(x) := vector(x) + 1
POINTERS i:cell j:cell
""",
    "visitall": """\
DOMAIN visitall
TYPES row column
FUNCTION bool visited(row,column)
SCHEMA visit(x:row,y:column)
EFF visited(x,y) := 1
POINTERS i:row j:column
""",
    "gripper": """\
DOMAIN gripper
TYPES room ball gripper
FUNCTION bool at-robby(room)
FUNCTION bool at(ball,room)
FUNCTION bool free(gripper)
FUNCTION bool carry(ball,gripper)
SCHEMA move(from:room,to:room)
PRE at-robby(from) = 1
EFF at-robby(from) := 0 ; at-robby(to) := 1
SCHEMA pick(b:ball,r:room,g:gripper)
PRE at(b,r) = 1 & at-robby(r) = 1 & free(g) = 1
EFF at(b,r) := 0 ; free(g) := 0 ; carry(b,g) := 1
SCHEMA drop(b:ball,r:room,g:gripper)
PRE carry(b,g) = 1 & at-robby(r) = 1
EFF carry(b,g) := 0 ; at(b,r) := 1 ; free(g) := 1
POINTERS b1:ball r1:room r2:room g1:gripper
""",
    "blocks-ontable": """\
DOMAIN blocks-ontable
TYPES block
FUNCTION bool clear(block)
FUNCTION bool handempty()
FUNCTION bool holding(block)
FUNCTION bool on(block,block)
FUNCTION bool ontable(block)
SCHEMA unstack(x:block,y:block)
PRE clear(x) = 1 & handempty() = 1 & on(x,y) = 1
EFF clear(x) := 0 ; handempty() := 0 ; on(x,y) := 0 ; holding(x) := 1 ; clear(y) := 1
SCHEMA put-down(x:block)
PRE holding(x) = 1
EFF holding(x) := 0 ; clear(x) := 1 ; handempty() := 1 ; ontable(x) := 1
POINTERS o1:block o2:block o3:block
""",
    "sieve": """\
DOMAIN sieve
TYPES number
FUNCTION bool prime(number)
SCHEMA set-no-prime(x:number)
EFF prime(x) := 0
POINTERS i:number j:number k:number
""",
}

# 规模序列为 start + k·step（k < count）
BUILTIN_BENCHMARKS: dict[str, dict[str, Any]] = {
    "gripper": {
        "lines": 8,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 12, "count": 1000},
    },
    "corridor": {
        "lines": 8,
        "synthesis": {"start": 3, "count": 10},
        "validation": {"start": 12, "count": 1000},
    },
    "visitall": {
        "lines": 8,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 12, "count": 50},
    },
    "fibonacci": {
        "lines": 7,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 12, "count": 33},
    },
    "triangular-sum": {
        "lines": 6,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 12, "count": 44709},
    },
    "reverse": {
        "lines": 7,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 1000, "count": 102, "step": 100},
    },
    "select": {
        "lines": 7,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 1000, "count": 102, "step": 100},
    },
    "find": {
        "lines": 6,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 1000, "count": 102, "step": 100},
    },
    "sorting": {
        "lines": 11,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 12, "count": 100},
    },
    "blocks-ontable": {
        "lines": 13,
        "synthesis": {"start": 2, "count": 10},
        "validation": {"start": 12, "count": 20},
    },
    "sieve": {
        "lines": 16,
        "synthesis": {"start": 3, "count": 10},
        "validation": {"start": 12, "count": 100},
    },
}


def builtin_names() -> list[str]:
    return list(BUILTIN_DOMAINS)


@lru_cache(maxsize=None)
def builtin_domain(name: str) -> Domain:
    """解析内置领域。

    Raises:
        UnknownDomainError: 不是内置领域
    """
    text = BUILTIN_DOMAINS.get(name)
    if text is None:
        raise UnknownDomainError(f"领域 '{name}' 未找到")
    return parse_domain(text)


def builtin_extended_domain(
    name: str, pointers: Optional[Sequence[PointerSpec]] = None
) -> ExtendedDomain:
    """内置领域加指针声明；pointers 为 None 时使用领域默认指针。"""
    return build_extended_domain(builtin_domain(name), pointers)
