"""Base configuration system for survnet settings.

Every group of user-facing settings (training hyperparameters, simulation
designs, dataset schemas, grid layouts) is a pydantic model deriving from
`ConfigModel`. The base adds loading from JSON files with precise parse
errors, construction from plain dictionaries, and merging of overrides so that
command-line flags can be layered over a configuration file.

Key features:
- Type-safe configuration through Pydantic models
- JSON file loading with line/column error reporting
- Override merging that keeps the result validated
- Immutable settings objects

Path: survnet/config/base.py
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict
from pydantic import ValidationError as PydanticValidationError

from survnet.common.errors import ConfigError, ErrorContext, ErrorCode

logger = logging.getLogger(__name__)

ConfigT = TypeVar('ConfigT', bound='ConfigModel')

class ConfigModel(BaseModel):
    """Base model for survnet settings.

    Models are frozen: a changed setting is expressed by `merged`, which
    returns a new validated instance.

    Example:
        ```python
        class MySettings(ConfigModel):
            epochs: int = 10
            rate: float = 0.1

        base = MySettings.from_file("settings.json")
        tuned = base.merged({"epochs": 50, "rate": None})  # rate kept
        ```
    """
    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False)

    @classmethod
    def from_dict(cls: Type[ConfigT], data: Dict[str, Any]) -> ConfigT:
        """Create settings from a dictionary.

        Args:
            data: Raw settings

        Returns:
            Validated settings instance

        Raises:
            ConfigError: If validation fails
        """
        try:
            return cls.model_validate(data)
        except PydanticValidationError as e:
            context = ErrorContext(
                operation="validate_config",
                error_code=ErrorCode.CONFIG_VALIDATION,
                details={
                    "model": cls.__name__,
                    "errors": "; ".join(
                        f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
                        for err in e.errors()
                    )
                }
            )
            logger.error("Configuration validation failed: %s", e)
            raise ConfigError(
                f"Invalid {cls.__name__} settings",
                context=context,
                original_error=e
            ) from e

    @classmethod
    def from_file(cls: Type[ConfigT], config_path: Path | str) -> ConfigT:
        """Create settings from a JSON file.

        Args:
            config_path: Path to configuration file

        Returns:
            Validated settings instance

        Raises:
            ConfigError: If reading, parsing or validation fails
        """
        config_path = Path(config_path)
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                config_data = json.load(f)

        except json.JSONDecodeError as e:
            context = ErrorContext(
                operation="read_config",
                error_code=ErrorCode.CONFIG_PARSE,
                path=config_path,
                details={
                    "error_line": e.lineno,
                    "error_col": e.colno,
                    "error_msg": e.msg
                }
            )
            raise ConfigError(
                f"Failed to parse configuration file: {e.msg}",
                context=context,
                original_error=e
            ) from e

        except OSError as e:
            context = ErrorContext(
                operation="load_config",
                error_code=ErrorCode.CONFIG_GENERAL,
                path=config_path
            )
            raise ConfigError(
                "Failed to load configuration file",
                context=context,
                original_error=e
            ) from e

        if not isinstance(config_data, dict):
            raise ConfigError(
                "Configuration file must contain a JSON object",
                operation="load_config",
                path=config_path
            )
        logger.debug("Loaded %s from %s", cls.__name__, config_path)
        return cls.from_dict(config_data)

    def merged(self: ConfigT, overrides: Optional[Dict[str, Any]]) -> ConfigT:
        """Return a copy with non-None overrides applied.

        Args:
            overrides: Field values to replace; None values are ignored

        Returns:
            New validated settings instance

        Raises:
            ConfigError: If the merged settings are invalid
        """
        if not overrides:
            return self
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return self.from_dict(data)
