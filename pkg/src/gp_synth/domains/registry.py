"""实例生成器注册表。

提供实例生成器的注册、查找和管理功能。
"""

import random
from typing import Callable, Optional

from gp_synth.core.errors import DomainDefinitionError, UnknownDomainError
from gp_synth.model.domain import Instance

# (规模, 随机数发生器, 最大值, 目标形式) -> 实例
InstanceGenerator = Callable[[int, random.Random, int, str], Instance]


class BenchmarkRegistry:
    """实例生成器注册表。

    内置生成器在第一次查询时注册，reset 之后同样重新注册。
    """

    _instance: Optional["BenchmarkRegistry"] = None
    _generators: dict[str, InstanceGenerator] = {}
    _builtins_loaded: bool = False

    def __new__(cls) -> "BenchmarkRegistry":
        """单例模式。"""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @classmethod
    def reset(cls) -> None:
        """重置注册表。"""
        cls._generators.clear()
        cls._builtins_loaded = False
        cls._instance = None

    @classmethod
    def _ensure_builtins(cls) -> None:
        if cls._builtins_loaded:
            return
        cls._builtins_loaded = True
        from gp_synth.domains.generators import BUILTIN_GENERATORS

        for name, generator in BUILTIN_GENERATORS.items():
            cls._generators.setdefault(name, generator)

    @classmethod
    def register(cls, name: str, generator: InstanceGenerator) -> None:
        """注册生成器。

        Args:
            name: 领域名（唯一标识）
            generator: 生成器函数

        Raises:
            DomainDefinitionError: 名字已注册
        """
        cls._ensure_builtins()
        if name in cls._generators:
            raise DomainDefinitionError(f"生成器 '{name}' 已注册")
        cls._generators[name] = generator

    @classmethod
    def unregister(cls, name: str) -> None:
        cls._ensure_builtins()
        cls._generators.pop(name, None)

    @classmethod
    def get(cls, name: str) -> InstanceGenerator:
        """获取生成器。

        Raises:
            UnknownDomainError: 未注册
        """
        cls._ensure_builtins()
        if name not in cls._generators:
            raise UnknownDomainError(f"领域 '{name}' 未找到")
        return cls._generators[name]

    @classmethod
    def has(cls, name: str) -> bool:
        cls._ensure_builtins()
        return name in cls._generators

    @classmethod
    def list(cls) -> list[str]:
        """列出所有已注册的领域。"""
        cls._ensure_builtins()
        return list(cls._generators.keys())


# 全局注册表实例
registry = BenchmarkRegistry()
