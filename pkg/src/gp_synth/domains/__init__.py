"""基准领域。

内置领域、实例生成器、基准配置与回归程序集。
"""

from gp_synth.domains.builtins import (
    BUILTIN_DOMAINS,
    builtin_domain,
    builtin_extended_domain,
    builtin_names,
)
from gp_synth.domains.corpus import CORPUS, corpus_names, corpus_program, corpus_text
from gp_synth.domains.generators import BUILTIN_GENERATORS, generate_instances
from gp_synth.domains.loader import BenchmarkLoader, BenchmarkSpec, SizeSchedule, benchmark_loader
from gp_synth.domains.registry import BenchmarkRegistry, InstanceGenerator, registry

__all__ = [
    "BUILTIN_DOMAINS",
    "BUILTIN_GENERATORS",
    "CORPUS",
    "BenchmarkLoader",
    "BenchmarkRegistry",
    "BenchmarkSpec",
    "InstanceGenerator",
    "SizeSchedule",
    "benchmark_loader",
    "builtin_domain",
    "builtin_extended_domain",
    "builtin_names",
    "corpus_names",
    "corpus_program",
    "corpus_text",
    "generate_instances",
    "registry",
]
