"""运行配置。"""

from gp_synth.config.settings import (
    ENV_OVERRIDES,
    RunSettings,
    SettingsError,
    apply_overrides,
    load_settings,
)

__all__ = ["ENV_OVERRIDES", "RunSettings", "SettingsError", "apply_overrides", "load_settings"]
