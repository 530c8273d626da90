"""
module: input_guards.py

This module handles the validation of numerical inputs shared by the schedule
model, the bounds and the CLI.

The checks establish what counts as a well formed increment list, information
bit count or probability before any computation starts.
"""
import math
import numbers
from typing import Sequence, TypeGuard

from rcsp.common.errors import InvalidScheduleError


def is_positive_int(value: object) -> TypeGuard[int]:
    """Checks if the value is a positive integer (booleans excluded)

    Parameters
    ----------
    value : object
        value to check

    Returns
    -------
    TypeGuard[int]
        True if value is an int greater or equal to 1
    """
    return (
        isinstance(value, numbers.Integral)
        and not isinstance(value, bool)
        and value >= 1
    )


def is_probability(value: object) -> TypeGuard[float]:
    """Checks if the value is a real number inside [0, 1]

    Parameters
    ----------
    value : object
        value to check

    Returns
    -------
    TypeGuard[float]
        True if value is a finite number in [0, 1]
    """
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        return False
    return math.isfinite(value) and 0.0 <= value <= 1.0


def check_increments(increments: Sequence[object]) -> tuple[int, ...]:
    """Checks that an increment list is non empty and contains only positive
    integers.

    Parameters
    ----------
    increments : Sequence[object]
        symbol counts I_1..I_m

    Returns
    -------
    tuple[int, ...]
        validated increments

    Raises
    ------
    InvalidScheduleError
        Raised if the list is empty or names a non positive increment. The
        message names the offending position and value.
    """
    if len(increments) == 0:
        raise InvalidScheduleError("A schedule requires at least one increment")

    for position, increment in enumerate(increments, start=1):
        if not is_positive_int(increment):
            raise InvalidScheduleError(
                f"Increment I_{position} must be a positive integer, got: {increment!r}"
            )

    return tuple(int(increment) for increment in increments)


def check_k_bits(k_bits: object) -> int:
    """Checks the information bit count log2(M)

    Parameters
    ----------
    k_bits : object
        number of information bits

    Returns
    -------
    int
        validated k_bits

    Raises
    ------
    InvalidScheduleError
        Raised if k_bits is not a positive integer
    """
    if not is_positive_int(k_bits):
        raise InvalidScheduleError(
            f"k_bits must be a positive integer, got: {k_bits!r}"
        )
    return int(k_bits)
