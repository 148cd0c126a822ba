"""程序的位向量编码。

编码由三段拼接而成（不含最后的 end 行）：
动作段 (n-1)·|A′_Z|，跳转段 (n-1)·(n-2)，特征段 (n-1)·4。
位置 p 对应整数的第 length-1-p 位，十六进制输出时第 0 行在最前。
"""

from dataclasses import dataclass

from gp_synth.core.errors import MalformedEncodingError
from gp_synth.model.instructions import ExtendedDomain
from gp_synth.program.program import (
    END,
    UNDEFINED,
    ActionLine,
    Feature,
    GotoLine,
    Line,
    PlanningProgram,
)


def encoding_length(n: int, instruction_count: int) -> int:
    """(n-1)·(|A′_Z| + (n-2) + 4)。"""
    if n <= 1:
        return 0
    return (n - 1) * (instruction_count + (n - 2) + 4)


@dataclass(frozen=True)
class BitVector:
    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise MalformedEncodingError(f"位向量超出长度 {self.length}")

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, position: int) -> bool:
        return bool((self.bits >> (self.length - 1 - position)) & 1)

    def positions(self) -> list[int]:
        """置位的位置，升序。"""
        return [p for p in range(self.length) if self[p]]

    def hamming(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise MalformedEncodingError("位向量长度不一致")
        return bin(self.bits ^ other.bits).count("1")

    def to_hex(self) -> str:
        return format(self.bits, f"0{max(1, (self.length + 3) // 4)}x")

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitVector":
        try:
            return cls(int(text, 16), length)
        except ValueError as e:
            raise MalformedEncodingError(f"无法解析十六进制 '{text}'") from e


class _Layout:
    def __init__(self, n: int, instruction_count: int):
        self.n = n
        self.actions = instruction_count
        self.length = encoding_length(n, instruction_count)
        self.transition_base = (n - 1) * instruction_count
        self.feature_base = (n - 1) * (instruction_count + n - 2)

    def action(self, line: int, instruction: int) -> int:
        return line * self.actions + instruction

    def transition(self, line: int, target: int) -> int:
        slot = target if target < line else target - 2
        return self.transition_base + line * (self.n - 2) + slot

    def feature(self, line: int, feature: int) -> int:
        return self.feature_base + 4 * line + feature


def encode(program: PlanningProgram, extended_domain: ExtendedDomain) -> BitVector:
    """把程序编码为位向量。"""
    instruction_count = extended_domain.size
    layout = _Layout(program.n, instruction_count)
    bits = 0
    for i, line in enumerate(program.lines[:-1]):
        positions: tuple[int, ...] = ()
        if isinstance(line, ActionLine):
            if not 0 <= line.instruction < instruction_count:
                raise MalformedEncodingError(f"第 {i} 行的指令下标越界")
            positions = (layout.action(i, line.instruction),)
        elif isinstance(line, GotoLine):
            positions = (layout.transition(i, line.target), layout.feature(i, line.feature))
        for p in positions:
            bits |= 1 << (layout.length - 1 - p)
    return BitVector(bits, layout.length)


def decode(vector: BitVector, n: int, extended_domain: ExtendedDomain) -> PlanningProgram:
    """从位向量还原程序。

    Raises:
        MalformedEncodingError: 长度不符，或某行同时置位多个指令/跳转/特征
    """
    instruction_count = extended_domain.size
    layout = _Layout(n, instruction_count)
    if vector.length != layout.length:
        raise MalformedEncodingError(f"位向量长度应为 {layout.length}，实际为 {vector.length}")

    lines: list[Line] = []
    for i in range(n - 1):
        actions = [a for a in range(instruction_count) if vector[layout.action(i, a)]]
        targets = [t for t in range(n) if t not in (i, i + 1) and vector[layout.transition(i, t)]]
        features = [f for f in range(4) if vector[layout.feature(i, f)]]
        if len(actions) > 1 or len(targets) > 1 or len(features) > 1:
            raise MalformedEncodingError(f"第 {i} 行置位了多个值")
        if actions and (targets or features):
            raise MalformedEncodingError(f"第 {i} 行同时是动作与跳转")
        if len(targets) != len(features):
            raise MalformedEncodingError(f"第 {i} 行的跳转缺少目标或特征")
        if actions:
            lines.append(ActionLine(actions[0]))
        elif targets:
            lines.append(GotoLine(targets[0], Feature(features[0])))
        else:
            lines.append(UNDEFINED)
    lines.append(END)
    return PlanningProgram(tuple(lines))
