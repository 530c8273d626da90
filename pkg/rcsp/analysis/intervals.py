"""
Module: intervals.py

Interval types shared by the bound, oracle and performance modules.

`BoundInterval` is the core result type: a certified [lower, upper] enclosure
of a probability together with the method that produced each end.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum

from rcsp.common.errors import DomainError


class BoundMethod(str, Enum):
    """Provenance tags of bound ends. Declaration order is the cost order used
    to break ties between equal bound values (cheapest first)."""

    TRIVIAL_SINGLE = "TrivialSingle"
    CHERNOFF_PAIR = "ChernoffPair"
    UNION_LOWER = "UnionLower"
    GENERAL_CHERNOFF = "GeneralChernoff"
    DECOMPOSITION = "Decomposition"
    INGLOT_SINGLE = "InglotSingle"
    INGLOT_PAIR = "InglotPair"
    EXACT = "Exact"
    MONTE_CARLO = "MonteCarlo"

    @property
    def cost_rank(self) -> int:
        return list(BoundMethod).index(self)


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lower, upper]

    Attributes
    ----------
    lower : float
        lower end
    upper : float
        upper end
    """

    lower: float
    upper: float

    def __post_init__(self):
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise DomainError("Interval ends cannot be NaN")
        if self.lower > self.upper:
            raise DomainError(
                f"Interval lower end {self.lower} exceeds upper end {self.upper}"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack


@dataclass(frozen=True)
class BoundInterval:
    """Certified enclosure of a probability

    Attributes
    ----------
    lower : float
        lower bound, in [0, 1]
    upper : float
        upper bound, in [lower, 1]
    method_lower : BoundMethod
        method that produced the lower end
    method_upper : BoundMethod
        method that produced the upper end
    clamp_events : int
        number of clamping operations applied while forming the interval
    """

    lower: float
    upper: float
    method_lower: BoundMethod
    method_upper: BoundMethod
    clamp_events: int = 0

    def __post_init__(self):
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise DomainError(
                f"BoundInterval requires 0 <= lower <= upper <= 1, "
                f"got [{self.lower}, {self.upper}]"
            )

    @classmethod
    def from_raw(
        cls,
        lower: float,
        upper: float,
        method_lower: BoundMethod,
        method_upper: BoundMethod,
    ) -> "BoundInterval":
        """Builds an interval from raw bound values, clamping them into
        0 <= lower <= upper <= 1 and counting each clamping event.

        Parameters
        ----------
        lower : float
            raw lower bound
        upper : float
            raw upper bound
        method_lower : BoundMethod
            provenance of the lower bound
        method_upper : BoundMethod
            provenance of the upper bound

        Returns
        -------
        BoundInterval
            clamped interval
        """
        events = 0
        if upper > 1.0:
            upper = 1.0
            events += 1
        if lower < 0.0:
            lower = 0.0
            events += 1
        if upper < 0.0:
            upper = 0.0
            events += 1
        if lower > upper:
            logging.debug(
                f"Clamping crossed interval [{lower:.6e}, {upper:.6e}] "
                f"({method_lower.value}/{method_upper.value})"
            )
            lower = upper
            events += 1

        return cls(lower, upper, method_lower, method_upper, events)

    @classmethod
    def point(cls, value: float, method: BoundMethod) -> "BoundInterval":
        """Degenerate interval [value, value]"""
        return cls.from_raw(value, value, method, method)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= value <= self.upper + slack

    def as_interval(self) -> Interval:
        return Interval(self.lower, self.upper)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "method_lower": self.method_lower.value,
            "method_upper": self.method_upper.value,
            "clamp_events": self.clamp_events,
        }
