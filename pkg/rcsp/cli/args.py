"""
Documentation

args.py Module

Responsible for centralizing and handling all user inputted
parameters for rcsp.

Contains different modes with their respected parameters
"""

import argparse
from dataclasses import dataclass
from typing import Union

# rcsp imports
from rcsp.analysis.joint_bounds import SeriesMethod
from rcsp.analysis.schedule_model import RadiusAssumption
from rcsp.common.errors import (
    InvalidArgumentException,
    InvalidModeException,
    InvalidScheduleError,
    NoArgumentsException,
)


# CLI helper functions
def supported_methods() -> tuple[str, ...]:
    """Returns the names of the bound methods accepted by `--methods`"""
    return tuple(method.value for method in SeriesMethod)


def _split_list(values: str) -> list[str]:
    return [value.strip() for value in values.split(",") if value.strip() != ""]


# custom argparse actions
class IntegerListAction(argparse.Action):
    """Parses a comma separated list of integers such as `32,8,8`.

    Entries that are not integers raise an `InvalidScheduleError` naming the
    position of the entry. Sign checks are left to the schedule validation
    so that the messages stay identical across inputs.
    """

    label = "Increment I"

    def __call__(self, parser, args, values, option_string=None):
        entries = _split_list(values)
        if len(entries) == 0:
            raise InvalidScheduleError(f"{option_string} requires at least one value")

        parsed = []
        for position, entry in enumerate(entries, start=1):
            try:
                parsed.append(int(entry))
            except ValueError as error:
                raise InvalidScheduleError(
                    f"{self.label}_{position} must be an integer, got: {entry!r}"
                ) from error

        setattr(args, self.dest, parsed)


class BitsListAction(IntegerListAction):
    """Comma separated list of information bit counts"""

    label = "Bits entry k"


class MethodListAction(argparse.Action):
    """Checks that every requested bound method is supported"""

    def __call__(self, parser, args, values, option_string=None):
        methods = _split_list(values)
        supported = supported_methods()
        unknown = [method for method in methods if method not in supported]
        if len(methods) == 0 or len(unknown) > 0:
            raise InvalidArgumentException(
                f"Unsupported bound methods: {unknown or values!r}. "
                f"Supported methods: {supported}"
            )
        setattr(args, self.dest, methods)


class RadiusAction(argparse.Action):
    """Parses `optimistic`, `minkowski` or `minkowski:<c>`"""

    def __call__(self, parser, args, values, option_string=None):
        setattr(args, self.dest, RadiusAssumption.parse(values))


# CLI Control Panel, controls all user inputs
@dataclass(repr=True)
class CliControlPanel:
    """

    Returns
    -------
    class CliControlPanel
        CliControlPanel Class contains all the parameters stored
        in the instances.
        The instance contains states of the provided parameters a user
        provides and provides easy logic flow for the CLI to work with.

    Raises
    ------
    NoArgumentsException
        Raised if no mode is provided
    InvalidArgumentException
        Raised if invalid arguments are provided
    InvalidModeException
        Raised if an invalid mode is provided
    """

    param_list: list[str]
    exec_path: Union[None, str] = None
    mode: Union[None, str] = None
    mode_check = False
    cli_help = False
    mode_help = False
    modes: tuple[str, ...] = ("bounds", "curve", "simulate", "help")
    formats: tuple[str, ...] = ("json", "csv")

    # ----------------------------------------
    # Metaclass class methods
    # ----------------------------------------

    # Used for setting up user parameters
    def __post_init__(self):
        self.__setup_args()

    # Class representation
    def __repr__(self) -> str:
        exec_mode = f"exec_path={self.exec_path}, mode={self.mode}"
        help_checks = f"cli_help={self.cli_help}, mode_help={self.mode_help}"
        return f"CliControlPanel({exec_mode}, {help_checks})"

    # making class printable
    def __str__(self) -> str:
        return self.__repr__()

    # ----------------------------------------
    # class in methods
    # ----------------------------------------
    def parse_bounds_args(self) -> argparse.Namespace:
        """Parses user inputs of the `bounds` mode

        Returns
        -------
        argparse.Namespace
            parsed cli parameters

        Attributes
        ----------
        snr_db : float | None
            channel SNR in dB
        bits : int | None
            information bits
        increments : list[int] | None
            increments I_1..I_m
        radius : RadiusAssumption | None
            packing assumption
        methods : list[str] | None
            bound methods
        samples : int | None
            Monte Carlo samples, 0 disables the oracle
        """
        parser = argparse.ArgumentParser(prog="rcsp bounds")
        required = parser.add_argument_group("Required Arguments")
        required.add_argument(
            "mode",
            choices=["bounds"],
            type=str,
            help="Bounds mode certifies the error series of one scheme",
        )
        self.__add_scheme_args(parser)
        self.__add_output_args(parser, default_format="json")
        args = parser.parse_args(self.param_list[1:])

        return args

    def parse_curve_args(self) -> argparse.Namespace:
        """Parses user inputs of the `curve` mode

        Returns
        -------
        argparse.Namespace
            parsed cli parameters

        Attributes
        ----------
        bits_list : list[int]
            information bit counts, one row each
        max_transmissions : int
            number of transmissions m
        optimize : bool
            optimize the increments of every row
        one_bit : bool
            use the one-bit increment schedule
        step : int | None
            constant increment of the fixed step schedule
        """
        parser = argparse.ArgumentParser(prog="rcsp curve")
        required = parser.add_argument_group("Required Arguments")
        schedule_args = parser.add_argument_group("Schedule Arguments")
        required.add_argument(
            "mode",
            choices=["curve"],
            type=str,
            help="Curve mode produces latency and throughput rows",
        )
        required.add_argument(
            "--snr-db",
            dest="snr_db",
            type=float,
            default=None,
            help="channel SNR in dB",
        )
        required.add_argument(
            "--bits-list",
            dest="bits_list",
            action=BitsListAction,
            required=True,
            help="comma separated information bit counts",
        )
        schedule_args.add_argument(
            "--max-transmissions",
            dest="max_transmissions",
            type=int,
            default=5,
            help="number of transmissions m",
        )
        schedule_kind = schedule_args.add_mutually_exclusive_group()
        schedule_kind.add_argument(
            "--optimize",
            action="store_true",
            default=False,
            help="optimize the increments of every row",
        )
        schedule_kind.add_argument(
            "--one-bit",
            dest="one_bit",
            action="store_true",
            default=False,
            help="I_1 = k followed by 2k one-symbol increments",
        )
        schedule_kind.add_argument(
            "--step",
            type=int,
            default=None,
            help="I_1 = k followed by constant steps until N_m >= 3k",
        )
        schedule_args.add_argument(
            "--budget",
            type=int,
            default=None,
            help="optimizer evaluation budget",
        )
        self.__add_common_args(parser)
        self.__add_output_args(parser, default_format="csv")
        args = parser.parse_args(self.param_list[1:])

        return args

    def parse_simulate_args(self) -> argparse.Namespace:
        """Parses user inputs of the `simulate` mode

        Returns
        -------
        argparse.Namespace
            parsed cli parameters, the scheme arguments of `bounds` plus
            `cycles`
        """
        parser = argparse.ArgumentParser(prog="rcsp simulate")
        required = parser.add_argument_group("Required Arguments")
        required.add_argument(
            "mode",
            choices=["simulate"],
            type=str,
            help="Simulate mode simulates decoding times",
        )
        self.__add_scheme_args(parser)
        parser.add_argument(
            "--cycles",
            type=int,
            default=None,
            help="number of simulated messages",
        )
        self.__add_output_args(parser, default_format="json")
        args = parser.parse_args(self.param_list[1:])

        return args

    # ----------------------------------------
    # Private formatting functions
    # ----------------------------------------

    def __setup_args(self):
        """Checks the input parameter list and updates parameter states

        Raises
        ------
        NoArgumentsException
            Raised if no mode is provided
        InvalidModeException
            Raised if the mode is not supported
        """
        self.exec_path = self.param_list[0]

        # ------------------------------
        # checking the modes parameters
        # ------------------------------
        if not len(self.param_list) > 1:
            raise NoArgumentsException("No mode has been provided, please enter a mode")

        mode = self.param_list[1]
        if mode not in self.modes:
            raise InvalidModeException(
                f"Unsupported mode: {mode!r}. Supported modes: {self.modes}"
            )
        self.mode_check = True

        if mode == "help":
            self.cli_help = True

            # checking any arguments after help
            self.__check_extra_help_args(help_flag_pos=1)

        # setting mode
        self.mode = mode

        # ------------------------------
        # checking for mode help
        # ------------------------------
        try:
            mode_help = self.param_list[2]
            if mode != "help" and mode_help == "help":
                self.__check_extra_help_args(help_flag_pos=2)
                self.mode_help = True

        # indicates that the user only placed a mode
        except IndexError:
            self.mode_help = False

    def __add_scheme_args(self, parser: argparse.ArgumentParser) -> None:
        """Scheme arguments shared by `bounds` and `simulate`"""
        scheme_args = parser.add_argument_group("Scheme Arguments")
        scheme_args.add_argument(
            "--snr-db",
            dest="snr_db",
            type=float,
            default=None,
            help="channel SNR in dB",
        )
        scheme_args.add_argument(
            "--bits",
            type=int,
            default=None,
            help="information bits per message",
        )
        scheme_args.add_argument(
            "--increments",
            action=IntegerListAction,
            default=None,
            help="comma separated increments I_1,...,I_m",
        )
        self.__add_common_args(parser)

    def __add_common_args(self, parser: argparse.ArgumentParser) -> None:
        cli_configs = parser.add_argument_group("Config Arguments")
        cli_configs.add_argument(
            "--radius",
            action=RadiusAction,
            default=None,
            help="optimistic, minkowski or minkowski:<c>",
        )
        cli_configs.add_argument(
            "--methods",
            action=MethodListAction,
            default=None,
            help=f"comma separated bound methods {supported_methods()}",
        )
        cli_configs.add_argument(
            "--samples",
            type=int,
            default=None,
            help="Monte Carlo samples, 0 disables the Monte Carlo oracle",
        )
        cli_configs.add_argument(
            "--seed",
            type=int,
            default=None,
            help="Monte Carlo seed",
        )
        cli_configs.add_argument(
            "--config",
            type=str,
            default=None,
            help="scheme document, flags take precedence over it",
        )

    def __add_output_args(
        self, parser: argparse.ArgumentParser, default_format: str
    ) -> None:
        output_args = parser.add_argument_group("Output Arguments")
        output_args.add_argument(
            "--format",
            choices=list(self.formats),
            default=default_format,
            help="report format",
        )
        output_args.add_argument(
            "--out",
            type=str,
            default=None,
            help="write the report to a file instead of stdout",
        )
        output_args.add_argument(
            "--log-file",
            dest="log_file",
            type=str,
            default=None,
            help="write logs to a file instead of stderr",
        )

    def __check_extra_help_args(self, help_flag_pos):
        """Checks arguments are help flag

        help_flag_pos : int
            index positions where the help flag is placed

        Returns
        -------
        None
            raises InvalidArgumentException if additional parameters are
            added after

        Raises
        ------
        IndexError
            Raised if the indicated help flag position is out of bounds
        InvalidArgumentException
            Raised if additional arguments are added after the help flag
        """
        extra_args = self.param_list[help_flag_pos + 1 :]
        if len(self.param_list) < help_flag_pos:
            raise IndexError(
                "Size of parameter inputs is smaller than the position of the help flag"
            )
        if len(extra_args) != 0:
            raise InvalidArgumentException(
                f"Unknown help parameters provided: {extra_args}"
            )
