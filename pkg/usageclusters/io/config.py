"""Settings of the command-line interface read from a JSON file.

The file mirrors the command-line flags, for instance::

    {
        "include": ["*.java"],
        "exclude": ["*/generated/*"],
        "threshold": 0.9,
        "n_jobs": 4
    }

Flags given on the command line override the values of the file, which
override the defaults.
"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import json
import logging
from pathlib import Path

LOG = logging.getLogger(__name__)

DEFAULT_CONFIG_FILENAME = "usageclusters.json"

DEFAULTS = {
    "include": ["*.java"],
    "exclude": [],
    "threshold": 0.88,
    "min_height": 2,
    "dice": 0.5,
    "kind": "any",
    "arity": None,
    "format": "text",
    "context": "method",
    "n_jobs": 1,
}


class ConfigError(ValueError):
    """The configuration file cannot be read or holds invalid values."""


_FLOAT_KEYS = frozenset({"threshold", "dice"})
_INT_KEYS = frozenset({"min_height", "arity", "n_jobs"})
_STR_KEYS = frozenset({"kind", "format", "context"})
_PATTERN_KEYS = frozenset({"include", "exclude"})


def _check_value(key, value, path):
    """Return `value` in the type expected for `key`, or raise ConfigError."""
    if key in _PATTERN_KEYS:
        if isinstance(value, str):
            value = [value]
        if not isinstance(value, list) or not all(isinstance(p, str) for p in value):
            raise ConfigError(f"The value of {key!r} in {path} should be a list of glob patterns.")
        return value
    if key == "arity" and value is None:
        return None
    if key in _FLOAT_KEYS:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"The value of {key!r} in {path} should be a number. Got {value!r}.")
        return float(value)
    if key in _INT_KEYS:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"The value of {key!r} in {path} should be an integer. Got {value!r}.")
        return value
    if key in _STR_KEYS and not isinstance(value, str):
        raise ConfigError(f"The value of {key!r} in {path} should be a string. Got {value!r}.")
    return value


def load_config_file(path) -> dict:
    """Read a JSON configuration file.

    Unknown keys are ignored with a warning.

    Raises
    ------
    ConfigError
        if the file cannot be read, is not a valid JSON object, or holds a value of the wrong type
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read configuration file {path}: {e.strerror}.") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in configuration file {path}, line {e.lineno}: {e.msg}.") from None
    if not isinstance(data, dict):
        raise ConfigError(f"The configuration file {path} should contain a JSON object.")

    settings = {}
    for key, value in data.items():
        normalized_key = key.replace("-", "_")
        if normalized_key not in DEFAULTS:
            LOG.warning("Ignoring unknown key %r in configuration file %s.", key, path)
            continue
        settings[normalized_key] = _check_value(normalized_key, value, path)
    LOG.info("Loaded settings %s from %s.", sorted(settings), path)
    return settings


def resolve_settings(flags: dict, root=None, config_path=None) -> dict:
    """Merge defaults, configuration file and command-line flags.

    Parameters
    ----------
    flags: dict
        values given on the command line, None for the flags that were not given
    root: str or Path, optional
        if no `config_path` is given, a file named ``usageclusters.json`` in this directory is used if it exists
    config_path: str or Path, optional
        explicit configuration file
    """
    settings = dict(DEFAULTS)
    if config_path is None and root is not None and (Path(root) / DEFAULT_CONFIG_FILENAME).is_file():
        config_path = Path(root) / DEFAULT_CONFIG_FILENAME
    if config_path is not None:
        settings.update(load_config_file(config_path))
    for key, value in flags.items():
        if value is not None and (value != [] or key not in {"include", "exclude"}):
            settings[key] = value
    return settings
