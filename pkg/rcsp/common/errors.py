"""
Module: errors.py

Modules containing rcsp specific exceptions

Base Exceptions:
Focuses on basic error types like incorrect values or invalid
operations.

RCSP Specific Errors:
Exceptions raised by the bound computations, the oracles and the command
line interface.

"""

import sys
from typing import Optional, Union


# ------------------------------
# Base Exceptions
# ------------------------------
class BaseValueError(ValueError):
    """Base exception if incorrect values are passed"""


class BaseFileNotFound(FileNotFoundError):
    """Raised if a requested file is not found in rcsp"""


class BaseIndexError(IndexError):
    """Base exception for out of range transmission indices"""


class BaseRuntimeError(RuntimeError):
    """Base exception related to numerical failures in runtime"""


# ------------------------------
# cli and configuration errors
# ------------------------------
class InvalidArgumentException(BaseValueError):
    """Raised when arguments requirements are not met"""


class InvalidModeException(BaseValueError):
    """Raised if in unsupported mode was passed"""


class NoArgumentsException(BaseValueError):
    """Raised if no arguments were passed in the CLI interface"""


class InvalidConfigError(BaseValueError):
    """Raised if a configuration document contains invalid or unknown entries"""


class ConfigNotFoundError(BaseFileNotFound):
    """Raised if a configuration file cannot be found"""


# ------------------------------
# model and bound errors
# ------------------------------
class InvalidScheduleError(InvalidArgumentException):
    """Raised if a transmission schedule violates its invariants, for example a
    non-positive increment"""


class DomainError(BaseValueError):
    """Raised if a function is evaluated outside of its mathematical domain"""


class PreconditionViolation(BaseValueError):
    """Raised if a bound is requested outside of its validity region. Callers
    are expected to fall back to another method"""


class InvalidSeriesError(BaseValueError):
    """Raised if a joint error probability series is malformed (P_0 != 1 or
    not nonincreasing)"""


class TransmissionIndexError(BaseIndexError):
    """Raised if a transmission index is outside of 1..m"""


class UnsupportedTransmissionCount(BaseValueError):
    """Raised if exact integration is requested for too many transmissions"""


class DegenerateSchemeError(BaseRuntimeError):
    """Raised when the scheme never terminates (P_m = 1), making the expected
    latency infinite"""


class QuadratureConvergenceError(BaseRuntimeError):
    """Raised if adaptive quadrature hits its depth limit before reaching the
    requested tolerance. The partial estimate is kept in `partial`"""

    def __init__(self, message: str, partial: float):
        super().__init__(message)
        self.partial = partial


# -----------------------
# Error handling functions
# -----------------------
def display_error(
    error: Union[BaseException, Exception],
    e_msg: Optional[Union[None, str]] = None,
    exit_code: Optional[int] = 1,
) -> None:
    """This function takes in an error type and a custom message. If the custom
    message is None, then the default string data found within the exception
    type will be used.
    The function will print the message of the error to stderr and ensures a
    non-zero exit code.

    Parameters
    ----------
    error : Union[BaseException, Exception]
        Takes in a python error object
    e_msg : Optional[Union[None, str]]
        Custom error message. Will overwrite default message from error objects.
        [default=None]
    exit_code : int
        Exit code when error is raised. Cannot be lower than 1. [Default=1]

    Return
    ------
        None

    Raises
    ------
    TypeError
        Raised if error object is not an error type
        Raised if e_msg is not a string type
        Raised if exit_code is not an integer type

    ValueError
        Raised if exit_code is a negative number or is equal to 0

    """

    if not isinstance(error, (BaseException, Exception)):
        raise TypeError("'error' must be and Exception or BaseException types")

    if not isinstance(e_msg, str) and e_msg is not None:
        raise TypeError("'e_msg' must be a string type")

    # error code checking
    if not isinstance(exit_code, int):
        raise TypeError("'exit_code', must be integer type")
    elif exit_code == 0:
        raise ValueError("exit error codes cannot be 0")
    elif exit_code < 0:
        raise ValueError("exit codes cannot be negative numbers")

    # formatting error message
    error_type = f"{error.__class__.__name__}:"

    # if no custom message provided, default to exception default message
    if e_msg is None:
        e_msg = str(error)

    print(f"{error_type} {e_msg}", file=sys.stderr)
    sys.exit(exit_code)
