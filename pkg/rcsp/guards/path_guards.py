"""
Module: path_guards.py


Functions for checking paths.

This includes:
    - existing paths
    - report destinations given with `--out`
"""

import os
import pathlib
from typing import TypeGuard


def is_valid_path(val: object) -> TypeGuard[pathlib.Path]:
    """checks if provided value is a valid path

    Returns
    -------
    bool
        True if the path exists, else false
    """
    # type checking
    if not isinstance(val, (str, pathlib.Path)):
        return False

    # convert to pathlib.Path, non-strict so missing files return False
    if isinstance(val, str):
        val = pathlib.Path(val).resolve()

    return val.exists()


def is_report_destination(val: object) -> TypeGuard[pathlib.Path]:
    """Checks if a report can be written to the provided path. Missing parent
    directories are allowed as long as the closest existing one is writable.

    Parameters
    ----------
    val : object
        candidate output path

    Returns
    -------
    TypeGuard[pathlib.Path]
        True if the path is not a directory and can be created or overwritten
    """
    if not isinstance(val, (str, pathlib.Path)) or str(val) == "":
        return False

    path = pathlib.Path(val).absolute()
    if path.is_dir():
        return False
    if path.exists():
        return os.access(path, os.W_OK)

    parent = path.parent
    while not parent.exists():
        parent = parent.parent
    return parent.is_dir() and os.access(parent, os.W_OK)
