"""
Module: schedule_model.py

Channel, message set, incremental redundancy schedule and the sphere-packing
decoding radii of a feedback scheme.

All value types are frozen after construction and validate their invariants
in `__post_init__`, so downstream code can rely on them. The message count
M = 2^k_bits is never formed explicitly; every power of M is computed as
exp(x * k_bits * ln 2).
"""
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum

from rcsp.common.errors import DomainError, InvalidArgumentException
from rcsp.common.errors import TransmissionIndexError
from rcsp.guards.input_guards import check_increments, check_k_bits

_LN2 = math.log(2.0)


def capacity(eta: float) -> float:
    """Capacity of the real AWGN channel in bits per symbol, 1/2 log2(1 + eta)

    Parameters
    ----------
    eta : float
        linear SNR, > 0

    Returns
    -------
    float
        capacity in bits per channel use

    Raises
    ------
    DomainError
        Raised if eta <= 0
    """
    if not eta > 0:
        raise DomainError(f"SNR must be positive, got: {eta}")
    return 0.5 * math.log1p(eta) / _LN2


@dataclass(frozen=True)
class ChannelConfig:
    """AWGN channel with unit noise variance per dimension

    Attributes
    ----------
    snr_db : float
        SNR in decibels
    eta : float
        linear SNR, derived from snr_db
    noise_variance : float
        noise variance per dimension, fixed at 1
    """

    snr_db: float
    eta: float = field(init=False)
    noise_variance: float = field(default=1.0, init=False)

    def __post_init__(self):
        if not math.isfinite(self.snr_db):
            raise DomainError(f"SNR in dB must be finite, got: {self.snr_db}")
        object.__setattr__(self, "eta", 10.0 ** (self.snr_db / 10.0))
        if not self.eta > 0:
            raise DomainError(f"SNR {self.snr_db} dB underflows to a zero linear SNR")

    @classmethod
    def from_eta(cls, eta: float) -> "ChannelConfig":
        """Builds the channel from a linear SNR"""
        if not eta > 0:
            raise DomainError(f"SNR must be positive, got: {eta}")
        return cls(10.0 * math.log10(eta))

    @property
    def capacity(self) -> float:
        return capacity(self.eta)


@dataclass(frozen=True)
class MessageSet:
    """Message set of M = 2^k_bits messages, stored through k_bits only

    Attributes
    ----------
    k_bits : int
        information bits per message, log2(M)
    """

    k_bits: int

    def __post_init__(self):
        object.__setattr__(self, "k_bits", check_k_bits(self.k_bits))

    def log_m(self) -> float:
        """Natural log of the message count"""
        return self.k_bits * _LN2


@dataclass(frozen=True)
class TransmissionSchedule:
    """Incremental redundancy schedule

    Attributes
    ----------
    increments : tuple[int, ...]
        symbols sent at each transmission, I_1..I_m
    """

    increments: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "increments", check_increments(self.increments))

    @property
    def m(self) -> int:
        return len(self.increments)

    @property
    def cumulative(self) -> tuple[int, ...]:
        """Cumulative blocklengths N_1..N_m"""
        totals = []
        running = 0
        for increment in self.increments:
            running += increment
            totals.append(running)
        return tuple(totals)

    @property
    def total(self) -> int:
        """Terminal blocklength N_m"""
        return sum(self.increments)

    def blocklength(self, i: int) -> int:
        """Cumulative blocklength N_i, 1-based"""
        self._check_index(i)
        return self.cumulative[i - 1]

    def prefix(self, i: int) -> "TransmissionSchedule":
        """Schedule of the first i transmissions"""
        self._check_index(i)
        return TransmissionSchedule(self.increments[:i])

    def select(self, indices: Sequence[int]) -> "TransmissionSchedule":
        """Reduced schedule observing only the given decoding attempts.

        The first increment of the reduced schedule is N_{i_1} and the next
        ones are the differences of consecutive selected blocklengths.

        Parameters
        ----------
        indices : Sequence[int]
            strictly increasing 1-based attempt indices

        Returns
        -------
        TransmissionSchedule
            reduced schedule with len(indices) attempts
        """
        _check_selection(indices, self.m)
        cumulative = self.cumulative
        selected = [cumulative[i - 1] for i in indices]
        increments = [selected[0]] + [
            later - earlier for earlier, later in zip(selected[:-1], selected[1:])
        ]
        return TransmissionSchedule(tuple(increments))

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.m:
            raise TransmissionIndexError(
                f"Transmission index must be in 1..{self.m}, got: {i}"
            )


class RadiusKind(str, Enum):
    """Packing assumptions behind the decoding radii"""

    OPTIMISTIC = "optimistic"
    MINKOWSKI = "minkowski"


@dataclass(frozen=True)
class RadiusAssumption:
    """Packing assumption and, for Minkowski packings, the density constant c

    Attributes
    ----------
    kind : RadiusKind
        packing assumption
    c : float
        packing density constant of the Minkowski radii, > 0
    """

    kind: RadiusKind = RadiusKind.OPTIMISTIC
    c: float = 1.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", RadiusKind(self.kind))
        except ValueError as error:
            raise InvalidArgumentException(
                f"Unknown radius assumption: {self.kind!r}, "
                f"supported: {[kind.value for kind in RadiusKind]}"
            ) from error
        if not (isinstance(self.c, (int, float)) and self.c > 0 and math.isfinite(self.c)):
            raise DomainError(f"Packing constant c must be positive, got: {self.c!r}")

    @classmethod
    def parse(cls, value: str) -> "RadiusAssumption":
        """Parses `optimistic`, `minkowski` or `minkowski:<c>`"""
        kind, _, constant = value.partition(":")
        if constant == "":
            return cls(kind)
        try:
            c = float(constant)
        except ValueError as error:
            raise InvalidArgumentException(
                f"Invalid packing constant in radius assumption: {value!r}"
            ) from error
        return cls(kind, c)

    def label(self) -> str:
        if self.kind is RadiusKind.OPTIMISTIC:
            return self.kind.value
        return f"{self.kind.value}:{self.c:g}"


@dataclass(frozen=True)
class DecodingRadii:
    """Squared decoding radii r_1^2..r_m^2

    Zero and infinite radii are accepted: they model attempts that always fail
    and always succeed respectively.

    Attributes
    ----------
    r_squared : tuple[float, ...]
        squared radii per decoding attempt
    """

    r_squared: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(value) for value in self.r_squared)
        if len(values) == 0:
            raise DomainError("At least one decoding radius is required")
        for position, value in enumerate(values, start=1):
            if math.isnan(value) or value < 0:
                raise DomainError(
                    f"Squared radius r_{position}^2 must be nonnegative, got: {value}"
                )
        object.__setattr__(self, "r_squared", values)

    @property
    def m(self) -> int:
        return len(self.r_squared)

    def prefix(self, i: int) -> "DecodingRadii":
        if not 1 <= i <= self.m:
            raise TransmissionIndexError(
                f"Transmission index must be in 1..{self.m}, got: {i}"
            )
        return DecodingRadii(self.r_squared[:i])

    def select(self, indices: Sequence[int]) -> "DecodingRadii":
        """Radii of the given 1-based decoding attempts"""
        _check_selection(indices, self.m)
        return DecodingRadii(tuple(self.r_squared[i - 1] for i in indices))


@dataclass(frozen=True)
class SchemeConfig:
    """Complete description of a scheme under analysis

    Attributes
    ----------
    channel : ChannelConfig
        channel setting
    messages : MessageSet
        message set
    schedule : TransmissionSchedule
        increments
    radius : RadiusAssumption
        packing assumption for the radii
    """

    channel: ChannelConfig
    messages: MessageSet
    schedule: TransmissionSchedule
    radius: RadiusAssumption = field(default_factory=RadiusAssumption)

    def radii(self) -> DecodingRadii:
        return decoding_radii(self.channel, self.messages, self.schedule, self.radius)

    def to_dict(self) -> dict:
        return {
            "snr_db": self.channel.snr_db,
            "k_bits": self.messages.k_bits,
            "increments": list(self.schedule.increments),
            "radius_assumption": {"kind": self.radius.kind.value, "c": self.radius.c},
        }


# ------------------------------
# decoding radii
# ------------------------------
def optimistic_radii(
    config: ChannelConfig, msgs: MessageSet, sched: TransmissionSchedule
) -> DecodingRadii:
    """Radii of a perfect packing of M spheres in the received power ball,
    r_i^2 = N_i (1 + eta) M^(-2 / N_i)

    Parameters
    ----------
    config : ChannelConfig
        channel
    msgs : MessageSet
        message set
    sched : TransmissionSchedule
        schedule

    Returns
    -------
    DecodingRadii
        squared radii per attempt
    """
    log_one_plus_eta = math.log1p(config.eta)
    r_squared = tuple(
        math.exp(math.log(n) + log_one_plus_eta - 2.0 * msgs.log_m() / n)
        for n in sched.cumulative
    )
    return DecodingRadii(r_squared)


def minkowski_radii(
    config: ChannelConfig,
    msgs: MessageSet,
    sched: TransmissionSchedule,
    assumption: RadiusAssumption,
) -> DecodingRadii:
    """Pessimistic radii guaranteed by a packing of density at least c 2^-n,
    r_i^2 = c N_i (1 + eta) / (2 M^(2 / N_i)).

    Raises
    ------
    InvalidArgumentException
        Raised if the assumption is not a Minkowski assumption
    """
    if assumption.kind is not RadiusKind.MINKOWSKI:
        raise InvalidArgumentException(
            f"Minkowski radii require a minkowski assumption, got: {assumption.kind.value}"
        )
    scale = 0.5 * assumption.c
    optimistic = optimistic_radii(config, msgs, sched)
    return DecodingRadii(tuple(scale * value for value in optimistic.r_squared))


def decoding_radii(
    config: ChannelConfig,
    msgs: MessageSet,
    sched: TransmissionSchedule,
    assumption: RadiusAssumption,
) -> DecodingRadii:
    """Dispatches to the radii of the given packing assumption"""
    match assumption.kind:
        case RadiusKind.OPTIMISTIC:
            return optimistic_radii(config, msgs, sched)
        case RadiusKind.MINKOWSKI:
            return minkowski_radii(config, msgs, sched, assumption)
        case _:
            raise InvalidArgumentException(f"Unknown radius kind: {assumption.kind}")


def per_transmission_rate(msgs: MessageSet, sched: TransmissionSchedule, i: int) -> float:
    """Rate k_bits / N_i of the i-th decoding attempt in bits per symbol"""
    return msgs.k_bits / sched.blocklength(i)


def _check_selection(indices: Sequence[int], m: int) -> None:
    if len(indices) == 0:
        raise TransmissionIndexError("At least one transmission index is required")
    for position, index in enumerate(indices):
        if not 1 <= index <= m:
            raise TransmissionIndexError(
                f"Transmission index must be in 1..{m}, got: {index}"
            )
        if position > 0 and index <= indices[position - 1]:
            raise TransmissionIndexError(
                f"Transmission indices must be strictly increasing, got: {list(indices)}"
            )
