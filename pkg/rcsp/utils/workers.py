"""
Module: workers.py

Worker count resolution for the Monte Carlo oracle, the decoding time
simulator, the optimizer and curve generation.
"""
import logging
import os
from typing import Optional

THREADS_ENV_VAR = "RCSP_THREADS"


def get_max_workers(requested: Optional[int] = None) -> int:
    """Returns the number of worker threads to use.

    The requested count (or 1 when None) is capped by the RCSP_THREADS
    environment variable when it is set.

    Parameters
    ----------
    requested : Optional[int], optional
        requested number of workers, by default None

    Returns
    -------
    int
        worker count, at least 1
    """
    workers = 1 if requested is None else max(1, int(requested))

    env_cap = os.environ.get(THREADS_ENV_VAR)
    if env_cap is not None:
        try:
            workers = min(workers, max(1, int(env_cap)))
        except ValueError:
            logging.warning(f"Ignoring non integer {THREADS_ENV_VAR}={env_cap!r}")

    return workers
