"""
Module: config_utils.py

`config_utils.py` manages rcsp's configuration files: the packaged general
configuration and the scheme documents describing a channel, a message set,
a schedule and a radius assumption.

Scheme documents are JSON or YAML, the parser is picked from the file
extension:

    {
        "snr_db": 2.0,
        "k_bits": 16,
        "increments": [32, 8, 8, 8, 8],
        "radius_assumption": {"kind": "optimistic", "c": 1.0}
    }
"""
import json
import pathlib
from typing import Any, Optional

import yaml

from rcsp.analysis.schedule_model import (
    ChannelConfig,
    MessageSet,
    RadiusAssumption,
    SchemeConfig,
    TransmissionSchedule,
)
from rcsp.common.errors import ConfigNotFoundError, InvalidConfigError
from rcsp.guards.ext_guards import has_json_ext, has_yaml_ext
from rcsp.guards.path_guards import is_valid_path
from rcsp.utils import rcsp_paths

SCHEME_KEYS = ("snr_db", "k_bits", "increments", "radius_assumption")
RADIUS_KEYS = ("kind", "c")


def load_configs(config_path: str | pathlib.Path) -> dict:
    """Returns a dictionary of given configurations

    Parameters
    ----------
    config_path : str | Path
        path to config file

    Returns
    -------
    dict
        configuration dictionary

    Raises
    ------
    ConfigNotFoundError
        raised if provided config file paths is invalid
    InvalidConfigError
        raised if the file is not a mapping, cannot be parsed or has an
        unsupported extension
    """

    # check if config path is a valid path
    if not is_valid_path(config_path) or not pathlib.Path(config_path).is_file():
        raise ConfigNotFoundError(f"Invalid config path provided: {config_path}")
    config_path = pathlib.Path(config_path).resolve(strict=True)

    # loading in config_path with the parser matching its extension
    with open(config_path, "r") as config_contents:
        try:
            if has_json_ext(config_path):
                loaded_configs = json.load(config_contents)
            elif has_yaml_ext(config_path):
                loaded_configs = yaml.safe_load(config_contents)
            else:
                raise InvalidConfigError(
                    f"Unsupported config extension: {config_path.suffix}, "
                    "expected a JSON or YAML file"
                )
        except (json.JSONDecodeError, yaml.YAMLError) as error:
            raise InvalidConfigError(f"Unable to parse {config_path}: {error}") from error

    if not isinstance(loaded_configs, dict):
        raise InvalidConfigError(f"Config file {config_path} must contain a mapping")

    return loaded_configs


def load_general_configs() -> dict:
    """Loads rcsp's general configurations

    Returns:
    -------
    dict
        dictionary containing the rcsp general configs
    """
    return load_configs(rcsp_paths.get_general_config_path())


def scheme_from_dict(contents: dict, overrides: Optional[dict] = None) -> SchemeConfig:
    """Validates a scheme document into a `SchemeConfig`. Entries of
    `overrides` that are not None replace the document's entries.

    Parameters
    ----------
    contents : dict
        scheme document
    overrides : Optional[dict], optional
        values taking precedence over the document, by default None

    Returns
    -------
    SchemeConfig
        validated scheme

    Raises
    ------
    InvalidConfigError
        Raised on unknown or missing keys
    """
    merged = dict(contents)
    for key, value in (overrides or {}).items():
        if value is not None:
            merged[key] = value

    unknown = sorted(set(merged) - set(SCHEME_KEYS))
    if unknown:
        raise InvalidConfigError(f"Unknown scheme config keys: {unknown}")
    missing = [key for key in SCHEME_KEYS[:3] if key not in merged]
    if missing:
        raise InvalidConfigError(f"Missing scheme config keys: {missing}")

    radius = merged.get("radius_assumption") or {}
    if isinstance(radius, str):
        radius_assumption = RadiusAssumption.parse(radius)
    elif isinstance(radius, RadiusAssumption):
        radius_assumption = radius
    elif isinstance(radius, dict):
        unknown = sorted(set(radius) - set(RADIUS_KEYS))
        if unknown:
            raise InvalidConfigError(f"Unknown radius_assumption keys: {unknown}")
        radius_assumption = RadiusAssumption(**radius)
    else:
        raise InvalidConfigError(f"Invalid radius_assumption: {radius!r}")

    increments = merged["increments"]
    if not isinstance(increments, (list, tuple)):
        raise InvalidConfigError(f"increments must be a list, got: {increments!r}")

    try:
        snr_db = float(merged["snr_db"])
    except (TypeError, ValueError) as error:
        raise InvalidConfigError(
            f"snr_db must be a number, got: {merged['snr_db']!r}"
        ) from error

    return SchemeConfig(
        channel=ChannelConfig(snr_db),
        messages=MessageSet(merged["k_bits"]),
        schedule=TransmissionSchedule(tuple(increments)),
        radius=radius_assumption,
    )


def load_scheme_config(
    config_path: str | pathlib.Path, overrides: Optional[dict] = None
) -> SchemeConfig:
    """Loads and validates a scheme document, see `scheme_from_dict`"""
    return scheme_from_dict(load_configs(config_path), overrides)


def write_scheme_config(scheme: SchemeConfig, config_path: str | pathlib.Path) -> None:
    """Writes a scheme as a JSON document readable by `load_scheme_config`"""
    with open(config_path, "w") as config_file:
        json.dump(scheme.to_dict(), config_file, indent=4)


def get_config_value(configs: dict, *keys: str, default: Any = None) -> Any:
    """Nested lookup `configs[key_1][key_2]...`, `default` if a key is absent"""
    value: Any = configs
    for key in keys:
        if not isinstance(value, dict) or key not in value:
            return default
        value = value[key]
    return value
