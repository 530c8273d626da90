"""
Module: log_utils.py

Sets up logging for the rcsp command line interface. Library modules only emit
records through `logging`; configuring handlers is left to the entry point.
"""
import logging
import pathlib
from typing import Optional

LOG_FORMAT = "%(asctime)s.%(msecs)03d - %(levelname)s - %(thread)d - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """Configures the root logger. Records go to stderr unless a log file is
    given, stdout is reserved for reports.

    Parameters
    ----------
    level : str, optional
        logging level name, by default "INFO"
    log_file : Optional[str], optional
        path to a log file, by default None

    Raises
    ------
    ValueError
        Raised if the level name is unknown
    """
    level_name = str(level).upper()
    if not isinstance(logging.getLevelName(level_name), int):
        raise ValueError(f"Unknown logging level: {level}")

    if log_file is not None:
        log_path = pathlib.Path(log_file).absolute()
        logging.basicConfig(
            filename=log_path,
            encoding="utf-8",
            level=level_name,
            format=LOG_FORMAT,
            datefmt=LOG_DATE_FORMAT,
            force=True,
        )
    else:
        logging.basicConfig(
            level=level_name,
            format=LOG_FORMAT,
            datefmt=LOG_DATE_FORMAT,
            force=True,
        )
