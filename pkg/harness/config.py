"""
Experiment config loading.

Configs are YAML documents validated into ExperimentConfig. Every failure
surfaces as ConfigurationError naming the offending field and, when it can
be located, the line.
"""
import hashlib
import json
import logging
import re
from pathlib import Path
from typing import Optional, Union

import yaml
from pydantic import ValidationError as SchemaError

from core.exceptions import ConfigurationError
from schemas.experiment import ExperimentConfig

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _line_of(text: str, key: str) -> Optional[int]:
    pattern = re.compile(rf"^\s*-?\s*{re.escape(key)}\s*:")
    for line_no, line in enumerate(text.splitlines(), start=1):
        if pattern.match(line):
            return line_no
    return None


def parse_config(text: str) -> ExperimentConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ConfigurationError(f"invalid YAML: {getattr(e, 'problem', e)}", line=mark.line + 1 if mark else None)
    if not isinstance(data, dict):
        raise ConfigurationError("config must be a mapping")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ConfigurationError(
            f"unsupported schema_version {data.get('schema_version')!r}, expected {SCHEMA_VERSION}",
            field="schema_version",
            line=_line_of(text, "schema_version"),
        )
    try:
        return ExperimentConfig.model_validate(data)
    except SchemaError as e:
        error = e.errors()[0]
        loc = [str(part) for part in error["loc"]]
        keys = [part for part in loc if not part.isdigit()]
        line = _line_of(text, keys[-1]) if keys else None
        raise ConfigurationError(error["msg"], field=".".join(loc) or None, line=line)


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"cannot read config {path}: {e}")
    config = parse_config(text)
    logger.info(f"Loaded scenario '{config.scenario}' from {path}")
    return config


def config_hash(config: ExperimentConfig) -> str:
    """SHA-256 of the canonical JSON form of the validated config."""
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
