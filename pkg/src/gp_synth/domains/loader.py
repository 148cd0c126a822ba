"""基准配置加载器。

基准配置（BenchmarkSpec）描述一个领域的合成配置（行数 n、指针）
以及合成集与验证集的规模序列。配置来自 YAML 文件，缺省项取内置默认值。
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from gp_synth.core.errors import DomainDefinitionError, UnknownDomainError
from gp_synth.domains.builtins import BUILTIN_BENCHMARKS, builtin_domain
from gp_synth.model.domain import PointerDecl

logger = logging.getLogger(__name__)

INSTANCE_SETS = ("synthesis", "validation")
DEFAULT_MAX_VALUE = 100


@dataclass(frozen=True)
class SizeSchedule:
    """规模序列 start + k·step（k < count），随机值取自 [0, max_value)。"""

    start: int
    count: int
    step: int = 1
    max_value: int = DEFAULT_MAX_VALUE

    def __post_init__(self) -> None:
        if self.start < 1 or self.count < 1 or self.step < 1 or self.max_value < 1:
            raise DomainDefinitionError(f"规模序列不合法: {self}")

    def sizes(self, count: Optional[int] = None) -> list[int]:
        total = self.count if count is None else count
        return [self.start + k * self.step for k in range(total)]

    @property
    def last(self) -> int:
        return self.start + (self.count - 1) * self.step

    def to_dict(self) -> dict[str, int]:
        return {
            "start": self.start,
            "count": self.count,
            "step": self.step,
            "max_value": self.max_value,
        }


@dataclass(frozen=True)
class BenchmarkSpec:
    """一个基准的完整配置。

    Attributes:
        name: 领域名
        lines: 合成时的程序行数 n
        pointers: 指针声明；为空时使用领域默认指针
        synthesis: 合成集规模
        validation: 验证集规模
        seed: 默认随机种子
        description: 说明
    """

    name: str
    lines: int
    synthesis: SizeSchedule
    validation: SizeSchedule
    pointers: tuple[PointerDecl, ...] = ()
    seed: int = 1
    description: str = ""

    def schedule(self, instance_set: str) -> SizeSchedule:
        if instance_set == "synthesis":
            return self.synthesis
        if instance_set == "validation":
            return self.validation
        raise ValueError(f"未知实例集 '{instance_set}'，可选: {', '.join(INSTANCE_SETS)}")

    @property
    def pointer_count(self) -> int:
        return len(self.pointers)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "lines": self.lines,
            "pointers": [str(p) for p in self.pointers],
            "seed": self.seed,
            "synthesis": self.synthesis.to_dict(),
            "validation": self.validation.to_dict(),
        }


def _parse_pointers(items: Any) -> tuple[PointerDecl, ...]:
    if isinstance(items, str):
        items = items.split()
    pointers = []
    for item in items or ():
        name, sep, object_type = str(item).partition(":")
        if not sep or not name or not object_type:
            raise DomainDefinitionError(f"指针声明 '{item}' 应为 name:type")
        pointers.append(PointerDecl(name.strip(), object_type.strip()))
    return tuple(pointers)


class BenchmarkLoader:
    """基准配置加载器。

    从文件或内置默认值加载 BenchmarkSpec，并缓存结果。
    """

    def __init__(self, search_paths: Optional[list[Path]] = None) -> None:
        """初始化加载器。

        Args:
            search_paths: YAML 文件搜索路径列表
        """
        self._search_paths = search_paths or self._get_default_paths()
        self._cache: dict[str, BenchmarkSpec] = {}

    def _get_default_paths(self) -> list[Path]:
        return [
            Path.cwd() / "benchmarks",
            Path.home() / ".config" / "gp-synth" / "benchmarks",
            Path(__file__).parent / "benchmarks",
        ]

    @property
    def search_paths(self) -> list[Path]:
        return list(self._search_paths)

    def _find_file(self, name: str) -> Optional[Path]:
        path = Path(name)
        if path.suffix in (".yaml", ".yml") and path.exists():
            return path
        for base_path in self._search_paths:
            candidate = base_path / f"{name}.yaml"
            if candidate.exists():
                return candidate
        return None

    def load(self, name: str) -> BenchmarkSpec:
        """加载基准配置。

        Raises:
            UnknownDomainError: 既没有文件也不是内置基准
            DomainDefinitionError: 配置内容不合法
            yaml.YAMLError: 文件不是合法 YAML
        """
        if name in self._cache:
            return self._cache[name]

        path = self._find_file(name)
        if path is not None:
            with open(path, encoding="utf-8") as f:
                config = yaml.safe_load(f) or {}
            if not isinstance(config, dict):
                raise DomainDefinitionError(f"基准文件 '{path}' 的顶层必须是映射")
            config.setdefault("name", path.stem)
            logger.debug("从 %s 加载基准 %s", path, config["name"])
        elif name in BUILTIN_BENCHMARKS:
            config = {"name": name}
        else:
            raise UnknownDomainError(f"基准 '{name}' 未找到")

        spec = self._build(config)
        self._cache[name] = spec
        return spec

    def _build(self, config: dict[str, Any]) -> BenchmarkSpec:
        """把配置合并到内置默认值上并构造 BenchmarkSpec。"""
        name = str(config["name"])
        defaults = BUILTIN_BENCHMARKS.get(name, {})

        def schedule(key: str) -> SizeSchedule:
            merged = {**defaults.get(key, {}), **(config.get(key) or {})}
            if "start" not in merged or "count" not in merged:
                raise DomainDefinitionError(f"基准 '{name}' 缺少 {key}.start / {key}.count")
            return SizeSchedule(**{k: int(v) for k, v in merged.items()})

        lines = config.get("lines", defaults.get("lines"))
        if lines is None:
            raise DomainDefinitionError(f"基准 '{name}' 缺少 lines")
        pointers = _parse_pointers(config.get("pointers"))
        if not pointers and name in BUILTIN_BENCHMARKS:
            pointers = builtin_domain(name).default_pointers
        try:
            return BenchmarkSpec(
                name=name,
                lines=int(lines),
                synthesis=schedule("synthesis"),
                validation=schedule("validation"),
                pointers=pointers,
                seed=int(config.get("seed", 1)),
                description=str(config.get("description", "")),
            )
        except TypeError as e:
            raise DomainDefinitionError(f"基准 '{name}' 的配置不合法: {e}") from e

    def list_available(self) -> list[str]:
        """列出内置与文件中的全部基准。"""
        names: set[str] = set(BUILTIN_BENCHMARKS)
        for base_path in self._search_paths:
            if base_path.exists():
                names.update(f.stem for f in base_path.glob("*.yaml"))
        return sorted(names)

    def clear_cache(self) -> None:
        self._cache.clear()

    def reload(self, name: str) -> BenchmarkSpec:
        self._cache.pop(name, None)
        return self.load(name)


# 全局加载器实例
benchmark_loader = BenchmarkLoader()
