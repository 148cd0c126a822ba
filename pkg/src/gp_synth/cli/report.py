"""运行报告。

每个子命令生成一份 RunReport，可以写成 JSON。
"""

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

# 报告中随运行环境变化的字段
TIMING_FIELDS = frozenset({"elapsed", "cpu_time", "peak_memory"})


@dataclass
class RunReport:
    """一次命令执行的报告。

    Attributes:
        command: 子命令名
        arguments: 生效的参数
        status: 结果状态
        exit_code: 退出码
        stats: 搜索统计
        instances: 每个实例的执行结果
        solution: 找到的程序文本
    """

    command: str
    arguments: dict[str, Any] = field(default_factory=dict)
    status: str = ""
    exit_code: int = 0
    stats: Optional[dict[str, Any]] = None
    instances: list[dict[str, Any]] = field(default_factory=list)
    solution: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        result: dict[str, Any] = {
            "command": self.command,
            "arguments": self.arguments,
            "status": self.status,
            "exit_code": self.exit_code,
        }
        if self.stats is not None:
            result["stats"] = self.stats
        if self.instances:
            result["instances"] = self.instances
        if self.solution is not None:
            result["solution"] = self.solution
        return result

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def write(self, path: str) -> None:
        """写出 JSON 报告；path 为 "-" 时写到标准输出。"""
        text = self.to_json() + "\n"
        if path == "-":
            sys.stdout.write(text)
            return
        Path(path).write_text(text, encoding="utf-8")


def strip_timings(data: Any) -> Any:
    """去掉计时与内存字段，用于比较两次运行的报告。"""
    if isinstance(data, dict):
        return {k: strip_timings(v) for k, v in data.items() if k not in TIMING_FIELDS}
    if isinstance(data, list):
        return [strip_timings(v) for v in data]
    return data
