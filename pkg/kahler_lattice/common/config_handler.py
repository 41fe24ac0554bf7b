import os
from collections.abc import Mapping
from pathlib import Path
from typing import Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from kahler_lattice.common.logging_config import initialize_handlers, internal_logger
from kahler_lattice.common.error import KahlerError, Code

CACHE_DIR_ENV = "KAHLER_CACHE_DIR"


class Config(BaseModel):
    """Default configuration structure."""
    model_config = ConfigDict(extra="ignore")

    log_level: str = "WARNING"
    file_log: bool = False
    json_log: bool = False
    log_path: Optional[str] = None
    cache_dir: Optional[str] = Field(default_factory=lambda: os.environ.get(CACHE_DIR_ENV))
    degree_bound: int = Field(default=8, ge=1)
    workers: int = Field(default=1, ge=1)
    seed: int = 0
    pretty: bool = False


def deep_merge(c1: Config, c2: Config) -> Config:
    """
    Recursively merge two Config objects, giving priority to fields set on c2.
    """
    d1 = c1.model_dump()
    d2 = c2.model_dump(exclude_unset=True)

    def _merge_dicts(left, right):
        merged = left.copy()
        for key, value in right.items():
            if isinstance(value, Mapping) and isinstance(merged.get(key), Mapping):
                merged[key] = _merge_dicts(dict(merged[key]), dict(value))
            else:
                merged[key] = value
        return merged

    return Config(**_merge_dicts(d1, d2))


class ConfigHandler:
    DEFAULT_GLOBAL_CONFIG_PATH = os.path.expanduser("~/.kahler/config.yaml")

    def __init__(self, config: Optional[Config] = None, global_config_path: Optional[str] = None):
        self.global_config_path: str = global_config_path or self.DEFAULT_GLOBAL_CONFIG_PATH
        self.config: Config = config if config is not None else Config()

    def load(self) -> Config:
        """Merge built-in defaults, the global YAML file and the explicit overrides."""
        merged = Config()
        global_config = self._load_yaml(self.global_config_path)
        if global_config is not None:
            merged = deep_merge(merged, global_config)
        self.config = deep_merge(merged, self.config)
        initialize_handlers(self.config)
        return self.config

    def _load_yaml(self, path: str) -> Optional[Config]:
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (yaml.YAMLError, IOError) as e:
            raise KahlerError(Code.E0701, details=f"{path}: {e}", cause=e) from e
        if not isinstance(data, dict):
            raise KahlerError(Code.E0701, details=f"{path}: top level must be a mapping")
        try:
            config = Config(**data)
        except ValidationError as e:
            raise KahlerError(Code.E0701, details=f"{path}: {e}", cause=e) from e
        internal_logger.debug(f"Loaded configuration from {path}")
        return config

    def cache_path(self) -> Optional[Path]:
        cache_dir = self.config.cache_dir
        return Path(cache_dir).expanduser() if cache_dir else None

