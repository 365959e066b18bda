import logging
from pathlib import Path
from typing import Any

import toml  # type: ignore

logger = logging.getLogger(__name__)

CONFIG_TABLE = "sda"


class ConfigError(ValueError):
    pass


def load_config(path: Path) -> dict[str, Any]:
    """Option defaults from the [sda] table of a TOML file; option names may use dashes or underscores"""
    try:
        document = toml.load(path)
    except FileNotFoundError:
        logger.warning(f"Config file not found, running with command line options only: {path.absolute()}")
        return {}
    except toml.TomlDecodeError as exc:
        raise ConfigError(f"Can't parse config file {path}: {exc}") from exc
    table = document.get(CONFIG_TABLE, {})
    if not isinstance(table, dict):
        raise ConfigError(f"[{CONFIG_TABLE}] in {path} must be a table")
    return {key.replace("-", "_"): value for key, value in table.items()}
