"""
module: ext_guards.py

Checks if the correct extensions are provided for scheme configuration files
"""

import pathlib
from typing import TypeGuard

from rcsp.guards.path_guards import is_valid_path


def has_json_ext(file_name: str | pathlib.Path) -> TypeGuard[pathlib.Path]:
    """Checks if the provided file path contains a json file extension.

    Parameters
    ----------
    file_name : str | pathlib.Path
        path to file

    Returns
    -------
    TypeGuard[pathlib.Path]
        return True if it is an existing json file, else False
    """
    return (
        pathlib.Path(file_name).suffix == ".json" if is_valid_path(file_name) else False
    )


def has_yaml_ext(file_name: str | pathlib.Path) -> TypeGuard[pathlib.Path]:
    """Checks if the provided file path contains a yaml file extension.

    Parameters
    ----------
    file_name : str | pathlib.Path
        path to file

    Returns
    -------
    TypeGuard[pathlib.Path]
        return True if it is an existing yaml file, else False
    """
    return (
        pathlib.Path(file_name).suffix in [".yaml", ".yml"]
        if is_valid_path(file_name)
        else False
    )
