"""回归程序集。

每个内置领域一个已知正确的程序，以默认指针书写。
"""

from typing import Optional

from gp_synth.core.errors import UnknownProgramError
from gp_synth.domains.builtins import builtin_extended_domain
from gp_synth.model.instructions import ExtendedDomain
from gp_synth.program.program import PlanningProgram
from gp_synth.program.text import parse_program

CORPUS: dict[str, str] = {
    "corridor": """\
0. vector-right(i)
1. inc(j)
2. cmp(vector(i),vector(j))
3. goto(0, !(!Yz&Yc))
4. vector-left(i)
5. cmp(vector(i),vector(j))
6. goto(1, !(Yz&!Yc))
7. end
""",
    "fibonacci": """\
0. vector-add(a,b)
1. dec(b)
2. vector-add(a,b)
3. set(b,a)
4. inc(a)
5. goto(0, !(Yz&!Yc))
6. end
""",
    "find": """\
0. cmp(vector(i),vector(t))
1. goto(3, !(Yz&!Yc))
2. accumulate(a)
3. inc(i)
4. goto(0, !(Yz&!Yc))
5. end
""",
    "gripper": """\
0. pick(b1,r1,g1)
1. inc(r2)
2. move(r1,r2)
3. drop(b1,r2,g1)
4. move(r2,r1)
5. inc(b1)
6. goto(0, !(Yz&!Yc))
7. end
""",
    "reverse": """\
0. set(i,j)
1. swap(i,j)
2. inc(i)
3. goto(1, !(Yz&!Yc))
4. inc(j)
5. goto(0, !(Yz&!Yc))
6. end
""",
    "select": """\
0. inc(b)
1. cmp(vector(a),vector(b))
2. goto(4, !(!Yz&!Yc))
3. set(b,a)
4. inc(a)
5. goto(1, !(Yz&!Yc))
6. end
""",
    "sorting": """\
0. swap(i,j)
1. inc(i)
2. goto(0, !(Yz&!Yc))
3. cmp(vector(i),vector(j))
4. goto(7, !(!Yz&Yc))
5. dec(i)
6. goto(0, !(Yz&Yc))
7. swap(i,j)
8. dec(i)
9. goto(3, !(Yz&!Yc))
10. end
""",
    "triangular-sum": """\
0. inc(a)
1. vector-add(b,a)
2. vector-dec(a)
3. test(vector(a))
4. goto(0, !(Yz&!Yc))
5. end
""",
    "visitall": """\
0. visit(i,j)
1. inc(i)
2. goto(0, !(Yz&!Yc))
3. dec(i)
4. goto(3, !(Yz&!Yc))
5. inc(j)
6. goto(0, !(Yz&!Yc))
7. end
""",
    "blocks-ontable": """\
0. dec(o2)
1. goto(0, !(Yz&!Yc))
2. dec(o1)
3. goto(2, !(Yz&!Yc))
4. unstack(o1,o2)
5. put-down(o1)
6. inc(o1)
7. goto(4, !(Yz&!Yc))
8. inc(o2)
9. goto(2, !(Yz&!Yc))
10. inc(o3)
11. goto(0, !(Yz&!Yc))
12. end
""",
    "sieve": """\
0. inc(i)
1. inc(i)
2. set(k,i)
3. dec(j)
4. goto(3, !(Yz&!Yc))
5. inc(k)
6. goto(13, !(!Yz&Yc))
7. inc(j)
8. cmp(i,j)
9. goto(5, !(Yz&!Yc))
10. set-no-prime(k)
11. cmp(i,j)
12. goto(3, !(!Yz&Yc))
13. inc(i)
14. goto(2, !(Yz&!Yc))
15. end
""",
}


def corpus_names() -> list[str]:
    return list(CORPUS)


def corpus_text(name: str) -> str:
    """
    Raises:
        UnknownProgramError: 没有该领域的程序
    """
    if name not in CORPUS:
        raise UnknownProgramError(f"程序 '{name}' 未找到")
    return CORPUS[name]


def corpus_program(name: str, extended_domain: Optional[ExtendedDomain] = None) -> PlanningProgram:
    """解析回归程序；extended_domain 为 None 时使用内置领域的默认指针。"""
    text = corpus_text(name)
    return parse_program(text, extended_domain or builtin_extended_domain(name))
