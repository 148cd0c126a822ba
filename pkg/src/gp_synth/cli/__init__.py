"""CLI 包初始化。

导出命令行接口与运行报告。
"""

from gp_synth.cli.commands import create_parser, main
from gp_synth.cli.report import RunReport, strip_timings

__all__ = [
    "main",
    "create_parser",
    "RunReport",
    "strip_timings",
]
