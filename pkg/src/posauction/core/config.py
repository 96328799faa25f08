from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, TextIO

from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from .errors import InvalidInputError

logger = logging.getLogger("posauction.config")

CONFIG_DIR_ENV = "POSAUCTION_CONFIG_DIR"
LEDGER_PATH_ENV = "POSAUCTION_LEDGER_PATH"
CONFIG_FILENAME = "config.yaml"


def default_config() -> Dict[str, Any]:
    return {
        "logging": {
            "level": "WARNING",
        },
        "oracle": {
            "max_n": 10,
            "grid_max_n": 4,
            "grid_max_denominator": 15,
            "workers": 1,
        },
        "simulate": {
            "trials": 100000,
            "seed": 0,
            "chunk": 10000,
        },
        "verify": {
            "samples": 50,
            "seed": 0,
            "ledger": "ledger.jsonl",
        },
    }


def _deep_merge(base: Dict[str, Any], updates: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in updates.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def resolve_root(root: Optional[Path] = None) -> Path:
    if root is not None:
        return Path(root).expanduser()
    override = os.environ.get(CONFIG_DIR_ENV, "").strip()
    if override:
        logger.debug("Using %s for config root: %s", CONFIG_DIR_ENV, override)
        return Path(override).expanduser()
    return Path.home() / ".posauction"


def config_path(root: Optional[Path] = None) -> Path:
    return resolve_root(root) / CONFIG_FILENAME


def _read_yaml(path: Path) -> Dict[str, Any]:
    yaml = YAML(typ="safe")
    try:
        with path.open("r", encoding="utf-8") as handle:
            data = yaml.load(handle)
    except YAMLError as exc:
        raise InvalidInputError(f"{path}: invalid YAML ({exc})") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InvalidInputError(f"{path} must contain a YAML mapping at the top level.")
    return data


def load_config(root: Optional[Path] = None, path: Optional[Path] = None) -> Dict[str, Any]:
    """Defaults overlaid with the user's ``config.yaml`` (missing file is fine)."""
    target = Path(path) if path is not None else config_path(root)
    if not target.exists():
        if path is not None:
            raise InvalidInputError(f"config file not found: {target}")
        return default_config()
    logger.debug("Loading config from %s", target)
    return _deep_merge(default_config(), _read_yaml(target))


def ledger_path(config: Dict[str, Any], root: Optional[Path] = None) -> Path:
    override = os.environ.get(LEDGER_PATH_ENV, "").strip()
    if override:
        logger.debug("Using %s for ledger: %s", LEDGER_PATH_ENV, override)
        return Path(override).expanduser()
    rel = config.get("verify", {}).get("ledger", "ledger.jsonl")
    rel_path = Path(rel) if isinstance(rel, str) else Path("ledger.jsonl")
    if rel_path.is_absolute():
        return rel_path
    return resolve_root(root) / rel_path


def configure_logging(level: Any = "WARNING", stream: Optional[TextIO] = None) -> None:
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    if not isinstance(level, int):
        level = logging.WARNING
    package_logger = logging.getLogger("posauction")
    package_logger.setLevel(level)
    target = stream if stream is not None else sys.stderr
    for stale in [h for h in package_logger.handlers if getattr(h, "_posauction", False)]:
        # the previous stream may already be closed; never flush it
        package_logger.removeHandler(stale)
        try:
            stale.close()
        except Exception:
            pass
    handler = logging.StreamHandler(target)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    handler._posauction = True  # type: ignore[attr-defined]
    package_logger.addHandler(handler)
