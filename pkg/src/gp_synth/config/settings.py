"""运行配置。

默认值可以被配置文件（YAML）覆盖，再被环境变量覆盖；
命令行参数最后生效。
"""

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

from gp_synth.core.errors import SettingsError
from gp_synth.engine.evaluation import parse_eval_key

logger = logging.getLogger(__name__)


def default_settings_paths() -> list[Path]:
    return [
        Path.cwd() / "gp-synth.yaml",
        Path.home() / ".config" / "gp-synth" / "config.yaml",
    ]


# 环境变量 -> 字段名
ENV_OVERRIDES = {
    "GP_SYNTH_TIMEOUT": "timeout",
    "GP_SYNTH_MAX_NODES": "max_nodes",
    "GP_SYNTH_SYNTHESIS_BOUND": "synthesis_bound",
    "GP_SYNTH_VALIDATION_BOUND": "validation_bound",
    "GP_SYNTH_STEP_LIMIT": "step_limit",
    "GP_SYNTH_EVAL": "eval_key",
    "GP_SYNTH_SEED": "seed",
}


@dataclass(frozen=True)
class RunSettings:
    """运行配置。

    Attributes:
        synthesis_bound: 合成时的数值上界
        validation_bound: 验证时的数值上界
        timeout: 搜索时间上限（秒）
        max_nodes: open 表节点数上限
        eval_key: 评估键
        step_limit: 关闭死循环检测时的步数上限
        seed: 实例生成的随机种子
        infinite_detection_synthesis: 合成时是否检测死循环
    """

    synthesis_bound: int = 100
    validation_bound: int = 10**9
    timeout: float = 3600.0
    max_nodes: int = 5_000_000
    eval_key: tuple[str, ...] = ("f5", "f7")
    step_limit: int = 10**9
    seed: int = 1
    infinite_detection_synthesis: bool = True

    def to_dict(self) -> dict[str, Any]:
        result = asdict(self)
        result["eval_key"] = list(self.eval_key)
        return result


def _coerce(name: str, value: Any) -> Any:
    try:
        if name == "eval_key":
            return parse_eval_key(value)
        if name == "timeout":
            return float(value)
        if name == "infinite_detection_synthesis":
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        return int(value)
    except (TypeError, ValueError) as e:
        raise SettingsError(f"配置项 {name} 的值 '{value}' 不合法") from e


def apply_overrides(settings: RunSettings, values: Mapping[str, Any]) -> RunSettings:
    """用映射中的值覆盖配置；未知键被忽略，None 表示不覆盖。"""
    known = {f.name for f in fields(RunSettings)}
    updates = {
        key: _coerce(key, value)
        for key, value in values.items()
        if key in known and value is not None
    }
    return replace(settings, **updates)


def _find_settings_file(paths: list[Path]) -> Optional[Path]:
    for path in paths:
        if path.exists():
            return path
    return None


def load_settings(
    path: Optional[Path] = None, environ: Optional[Mapping[str, str]] = None
) -> RunSettings:
    """加载配置：默认值 <- 配置文件 <- 环境变量。

    Args:
        path: 指定配置文件；None 时按 default_settings_paths() 查找第一个存在的文件
        environ: 环境变量；None 时使用 os.environ

    Raises:
        SettingsError: 值不合法或文件顶层不是映射
        yaml.YAMLError: 文件不是合法 YAML
    """
    settings = RunSettings()
    settings_file = path or _find_settings_file(default_settings_paths())
    if settings_file is not None:
        with open(settings_file, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise SettingsError(f"配置文件 '{settings_file}' 的顶层必须是映射")
        settings = apply_overrides(settings, data)
        logger.debug("从 %s 加载配置", settings_file)

    env = os.environ if environ is None else environ
    from_env = {key: env[var] for var, key in ENV_OVERRIDES.items() if var in env}
    if from_env:
        settings = apply_overrides(settings, from_env)
        logger.debug("环境变量覆盖: %s", ", ".join(sorted(from_env)))
    return settings
