"""
Documentation

cmd.py Module

Generates CLI interface in order to interact with rcsp.

Exit codes: 0 on success, 2 for invalid arguments, configurations or
schedules, 3 for degenerate schemes and 1 for any other failure.
"""
import logging
import sys
from contextlib import nullcontext

from rcsp.cli.args import CliControlPanel
from rcsp.cli.cli_docs import bounds_doc, cli_docs, curve_doc, simulate_doc
from rcsp.cli.exec.report_exec import bounds_exec, curve_exec, simulate_exec
from rcsp.common.errors import (
    ConfigNotFoundError,
    DegenerateSchemeError,
    DomainError,
    InvalidArgumentException,
    InvalidConfigError,
    InvalidModeException,
    NoArgumentsException,
    display_error,
)
from rcsp.utils import rcsp_paths
from rcsp.utils.config_utils import get_config_value, load_general_configs
from rcsp.utils.log_utils import setup_logging

USAGE_ERRORS = (
    NoArgumentsException,
    InvalidModeException,
    InvalidArgumentException,
    InvalidConfigError,
    ConfigNotFoundError,
    DomainError,
)


def memory_tracker(general_configs: dict, mode: str):
    """Returns a memray tracker writing to the benchmark directory when memory
    tracking is enabled, otherwise a null context"""
    if not get_config_value(general_configs, "enable_memory_tracking", default=False):
        return nullcontext()

    try:
        import memray
    except ImportError:
        logging.warning("Memory tracking enabled but memray is not installed")
        return nullcontext()

    benchmark_dir = rcsp_paths.get_benchmarks_path(
        get_config_value(general_configs, "benchmark_dir", default="benchmarks")
    )
    capture_file = benchmark_dir / f"{mode}_memory.bin"
    capture_file.unlink(missing_ok=True)
    logging.info(f"Memory profiling enabled, writing {capture_file}")
    return memray.Tracker(capture_file)


def __run_mode(args_handler: CliControlPanel) -> None:
    """Parses the mode arguments and executes the mode"""

    # Main mode selection function. Each match displays the mode help when
    # requested, otherwise parses the mode parameters and executes it
    match args_handler.mode:
        case "bounds":
            if args_handler.mode_help is True:
                print(bounds_doc)
                sys.exit(0)
            args = args_handler.parse_bounds_args()
            general_configs = __setup(args.log_file)
            bounds_exec(args, general_configs)

        case "curve":
            if args_handler.mode_help is True:
                print(curve_doc)
                sys.exit(0)
            args = args_handler.parse_curve_args()
            general_configs = __setup(args.log_file)
            with memory_tracker(general_configs, "curve"):
                curve_exec(args, general_configs)

        case "simulate":
            if args_handler.mode_help is True:
                print(simulate_doc)
                sys.exit(0)
            args = args_handler.parse_simulate_args()
            general_configs = __setup(args.log_file)
            simulate_exec(args, general_configs)

        # if user execute `help` help mode. CLI documentation will appear.
        case "help":
            print(cli_docs)

        # Raise an error if an invalid mode is provided
        case _:
            raise RuntimeError("Unexpected error captured in mode selection")


def __setup(log_file: str | None) -> dict:
    """Loads the general configuration and sets up logging. `log_file`
    overrides the configured log file."""
    general_configs = load_general_configs()
    setup_logging(
        level=get_config_value(general_configs, "log_level", default="INFO"),
        log_file=log_file or get_config_value(general_configs, "log_file"),
    )
    return general_configs


def run_cmd() -> None:
    """obtains all parameters and executes the selected mode

    Returns
    -------
    None
    """

    try:
        # create args handler
        # -- Cli Control Panel
        args_handler = CliControlPanel(sys.argv)

        # checking is user wanted to cli help
        if args_handler.cli_help is True:
            print(cli_docs)
            sys.exit(0)

        __run_mode(args_handler)

    except USAGE_ERRORS as error:
        display_error(error, exit_code=2)
    except DegenerateSchemeError as error:
        display_error(error, exit_code=3)
    except Exception as error:
        logging.debug("Unhandled error", exc_info=True)
        display_error(error, exit_code=1)


if __name__ == "__main__":
    run_cmd()
