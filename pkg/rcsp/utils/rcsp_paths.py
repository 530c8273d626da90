"""
module: rcsp_paths.py

This module contains functions that handle `rcsp's` pathing
"""
import pathlib

# rcsp imports
import rcsp
from rcsp.common.errors import ConfigNotFoundError
from rcsp.guards.path_guards import is_valid_path


def get_rcsp_package_path() -> pathlib.Path:
    """Returns the path where the package is installed

    Return
    ------
    Path
        Returns absolute path of the `rcsp` package directory

    Raises
    ------
    FileNotFoundError
        Raised if the rcsp package is not found
    """

    # get path of the `__init__.py` module and check it exists
    package_path = pathlib.Path(rcsp.__path__[0]).resolve()
    if not package_path.exists():
        raise FileNotFoundError("Unable to find rcsp package path")
    return package_path


def get_config_dir_path() -> pathlib.Path:
    """Returns path to the packaged configuration folder

    Returns
    -------
    Path
        Path to config directory
    """

    config_path = get_rcsp_package_path() / "configs"
    if not is_valid_path(config_path):
        raise ConfigNotFoundError("Unable to find config directory")

    return config_path


def get_general_config_path() -> pathlib.Path:
    """Returns absolute path to rcsp's general config file.

    Returns
    -------
    pathlib.Path
        path to rcsp general config file
    """
    config_file_path = get_config_dir_path() / "configuration.yaml"
    if not is_valid_path(config_file_path):
        raise ConfigNotFoundError("Unable to find rcsp general config file")

    return config_file_path


def get_benchmarks_path(benchmark_dir: str | pathlib.Path) -> pathlib.Path:
    """Get the path to the benchmarks directory used by memory tracking. The
    directory is created if it does not exist.

    Parameters
    ----------
    benchmark_dir : str | pathlib.Path
        benchmark directory, relative paths are resolved against the current
        working directory

    Returns
    -------
    pathlib.Path
        The path to the benchmarks directory.
    """
    benchmark_path = pathlib.Path(benchmark_dir).absolute()
    benchmark_path.mkdir(parents=True, exist_ok=True)

    return benchmark_path
