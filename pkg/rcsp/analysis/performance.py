"""
Module: performance.py

Expected latency and throughput of the zero-error retransmission scheme,
as point values, as certified intervals propagated from bound series and as
Monte Carlo bands, plus an empirical decoding time simulator.

With P_i = Pr(zeta_1 n ... n zeta_i) and P_0 = 1 the expected latency is

    E[L] = sum_{i=1}^{m} I_i P_{i-1} / (1 - P_m)

and the throughput is k_bits / E[L]. E[L] is nondecreasing in every P_i, so
the interval of the latency is obtained from the two ends of the series.
"""
import logging
import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rcsp.analysis.intervals import BoundInterval, Interval
from rcsp.analysis.oracle import DEFAULT_CHUNK_SIZE, McEstimate
from rcsp.analysis.schedule_model import DecodingRadii, TransmissionSchedule
from rcsp.common.errors import (
    DegenerateSchemeError,
    DomainError,
    InvalidArgumentException,
    InvalidSeriesError,
)
from rcsp.guards.input_guards import (
    check_increments,
    is_positive_int,
    is_probability,
)
from rcsp.utils.workers import get_max_workers

_SERIES_ATOL = 1.0e-12


@dataclass(frozen=True)
class PerformanceEstimate:
    """Certified latency and throughput intervals

    Attributes
    ----------
    latency : Interval
        expected latency in symbols
    throughput : Interval
        expected throughput in bits per symbol
    series_used : tuple[BoundInterval, ...]
        joint error series the intervals were propagated from
    vacuous : bool
        True if the throughput upper end exceeds the channel capacity
    """

    latency: Interval
    throughput: Interval
    series_used: tuple[BoundInterval, ...]
    vacuous: bool = False

    def to_dict(self) -> dict:
        return {
            "latency": {"lower": self.latency.lower, "upper": self.latency.upper},
            "throughput": {
                "lower": self.throughput.lower,
                "upper": self.throughput.upper,
            },
            "vacuous": self.vacuous,
        }


@dataclass(frozen=True)
class McPerformance:
    """Latency and throughput computed from a Monte Carlo series

    Attributes
    ----------
    latency : float
        expected latency at the estimated series
    throughput : float
        expected throughput at the estimated series
    latency_band : Interval
        latency at the series shifted by -/+ sigmas standard errors
    throughput_band : Interval
        throughput image of the latency band
    """

    latency: float
    throughput: float
    latency_band: Interval
    throughput_band: Interval


@dataclass(frozen=True)
class DecodingTimeSample:
    """Outcome of one simulated message

    Attributes
    ----------
    tau : int
        decoding attempts until the first success, counted over restarts
    latency_symbols : int
        symbols consumed until the first success
    """

    tau: int
    latency_symbols: int


@dataclass(frozen=True, eq=False)
class DecodingTimeResult:
    """Per-message outcomes of `simulate_decoding_time`

    Attributes
    ----------
    tau : np.ndarray
        attempts until success, restarts * m + i
    restarts : np.ndarray
        number of restarts per message
    latency : np.ndarray
        symbols consumed per message
    seed : int
        root seed
    """

    tau: np.ndarray
    restarts: np.ndarray
    latency: np.ndarray
    seed: int

    @property
    def cycles(self) -> int:
        return int(self.latency.size)

    @property
    def mean_latency(self) -> float:
        return float(self.latency.mean())

    @property
    def std_error(self) -> float:
        if self.cycles < 2:
            return 0.0
        return float(self.latency.std(ddof=1) / math.sqrt(self.cycles))

    @property
    def mean_restarts(self) -> float:
        return float(self.restarts.mean())

    def percentiles(self, quantiles: Sequence[float] = (50, 90, 99)) -> dict[str, float]:
        values = np.percentile(self.latency, quantiles)
        return {f"p{q:g}": float(value) for q, value in zip(quantiles, values)}

    def tau_histogram(self) -> dict[int, int]:
        values, counts = np.unique(self.tau, return_counts=True)
        return {int(value): int(count) for value, count in zip(values, counts)}

    def samples(self) -> Iterator[DecodingTimeSample]:
        for tau, latency in zip(self.tau, self.latency):
            yield DecodingTimeSample(int(tau), int(latency))

    def summary(self) -> dict:
        return {
            "cycles": self.cycles,
            "seed": self.seed,
            "mean_latency": self.mean_latency,
            "std_error": self.std_error,
            "percentiles": self.percentiles(),
            "mean_restarts": self.mean_restarts,
            "tau_histogram": self.tau_histogram(),
        }


# ------------------------------
# point values
# ------------------------------
def _latency_formula(series: Sequence[float], increments: Sequence[int]) -> float:
    """sum I_i P_{i-1} / (1 - P_m) without validation, inf when P_m >= 1"""
    denominator = 1.0 - series[-1]
    if denominator <= 0.0:
        return math.inf
    numerator = math.fsum(
        increment * p_prev for increment, p_prev in zip(increments, series[:-1])
    )
    return numerator / denominator


def _check_series(series: Sequence[float], m: int) -> None:
    if len(series) != m + 1:
        raise InvalidSeriesError(
            f"A series for {m} transmissions needs {m + 1} values, got: {len(series)}"
        )
    if abs(series[0] - 1.0) > _SERIES_ATOL:
        raise InvalidSeriesError(f"P_0 must equal 1, got: {series[0]}")
    for i, value in enumerate(series):
        if not is_probability(value):
            raise InvalidSeriesError(f"P_{i} must lie in [0, 1], got: {value}")
    for i in range(1, len(series)):
        if series[i] > series[i - 1] + _SERIES_ATOL:
            raise InvalidSeriesError(
                f"Series must be nonincreasing, P_{i}={series[i]} > P_{i - 1}={series[i - 1]}"
            )


def expected_latency(series: Sequence[float], increments: Sequence[int]) -> float:
    """Expected latency of the zero-error scheme

    Parameters
    ----------
    series : Sequence[float]
        joint error probabilities P_0..P_m with P_0 = 1
    increments : Sequence[int]
        increments I_1..I_m

    Returns
    -------
    float
        expected latency in symbols

    Raises
    ------
    InvalidSeriesError
        Raised if the series is malformed
    DegenerateSchemeError
        Raised if P_m = 1, the scheme never terminates
    """
    increments = check_increments(increments)
    _check_series(series, len(increments))
    if series[-1] >= 1.0:
        raise DegenerateSchemeError(
            "P_m = 1: every attempt fails and the expected latency is infinite"
        )
    return _latency_formula(series, increments)


def expected_throughput(k_bits: int, latency: float) -> float:
    """k_bits / latency in bits per symbol"""
    if not latency > 0:
        raise DomainError(f"Latency must be positive, got: {latency}")
    return k_bits / latency


# ------------------------------
# intervals
# ------------------------------
def performance_interval(
    series_bounds: Sequence[BoundInterval],
    increments: Sequence[int],
    k_bits: int,
    capacity: Optional[float] = None,
) -> PerformanceEstimate:
    """Propagates a bound series to latency and throughput intervals.

    The latency upper end uses every upper end of the series and the lower
    end every lower end. The throughput interval is k_bits over the latency
    interval with its ends swapped.

    Parameters
    ----------
    series_bounds : Sequence[BoundInterval]
        intervals for P_0..P_m
    increments : Sequence[int]
        increments I_1..I_m
    k_bits : int
        information bits
    capacity : Optional[float], optional
        channel capacity used to flag vacuous throughput upper bounds

    Returns
    -------
    PerformanceEstimate
        latency and throughput intervals

    Raises
    ------
    DegenerateSchemeError
        Raised if the upper end of P_m is 1
    """
    increments = check_increments(increments)
    if len(series_bounds) != len(increments) + 1:
        raise InvalidSeriesError(
            f"A series for {len(increments)} transmissions needs "
            f"{len(increments) + 1} intervals, got: {len(series_bounds)}"
        )
    if abs(series_bounds[0].lower - 1.0) > _SERIES_ATOL:
        raise InvalidSeriesError(f"P_0 must equal 1, got: {series_bounds[0].lower}")
    if series_bounds[-1].upper >= 1.0:
        raise DegenerateSchemeError(
            "Upper bound of P_m is 1: the latency upper bound is infinite"
        )

    latency_upper = _latency_formula([b.upper for b in series_bounds], increments)
    latency_lower = _latency_formula([b.lower for b in series_bounds], increments)
    latency = Interval(latency_lower, latency_upper)
    throughput = Interval(k_bits / latency_upper, k_bits / latency_lower)

    vacuous = capacity is not None and throughput.upper > capacity
    if vacuous:
        logging.info(
            f"Throughput upper bound {throughput.upper:.4f} exceeds capacity "
            f"{capacity:.4f}, flagged as vacuous"
        )
    return PerformanceEstimate(latency, throughput, tuple(series_bounds), vacuous)


def mc_performance(
    increments: Sequence[int],
    series: Sequence[McEstimate],
    k_bits: int,
    sigmas: float = 3.0,
) -> McPerformance:
    """Latency and throughput from a Monte Carlo series P_1..P_m, with a band
    from the series shifted by -/+ sigmas standard errors.

    Raises
    ------
    DegenerateSchemeError
        Raised if the estimate of P_m is 1
    """
    increments = check_increments(increments)
    means = [1.0] + [estimate.mean for estimate in series]
    latency = expected_latency(means, increments)

    low = [1.0] + [estimate.band(sigmas).lower for estimate in series]
    high = [1.0] + [estimate.band(sigmas).upper for estimate in series]
    latency_band = Interval(_latency_formula(low, increments), _latency_formula(high, increments))
    throughput_band = Interval(
        k_bits / latency_band.upper if math.isfinite(latency_band.upper) else 0.0,
        k_bits / latency_band.lower,
    )
    return McPerformance(
        latency=latency,
        throughput=expected_throughput(k_bits, latency),
        latency_band=latency_band,
        throughput_band=throughput_band,
    )


# ------------------------------
# decoding time simulation
# ------------------------------
def _simulate_chunk(
    increments: tuple[int, ...],
    r_squared: np.ndarray,
    size: int,
    seed_seq: np.random.SeedSequence,
    max_rounds: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Simulates `size` messages, restarting failed cycles with fresh noise"""
    rng = np.random.default_rng(seed_seq)
    m = len(increments)
    n_m = sum(increments)

    tau = np.zeros(size, dtype=np.int64)
    restarts = np.zeros(size, dtype=np.int64)
    latency = np.zeros(size, dtype=np.int64)
    pending = np.arange(size)
    cumulative = np.cumsum(increments)

    rounds = 0
    while pending.size > 0:
        if rounds >= max_rounds:
            raise DegenerateSchemeError(
                f"{pending.size} messages undecoded after {max_rounds} restart "
                "cycles, the scheme does not terminate"
            )
        energy = np.zeros(pending.size)
        decoded_at = np.zeros(pending.size, dtype=np.int64)
        for i, increment in enumerate(increments, start=1):
            energy += rng.chisquare(increment, size=pending.size)
            newly = (decoded_at == 0) & (energy <= r_squared[i - 1])
            decoded_at[newly] = i

        done = decoded_at > 0
        finished = pending[done]
        attempt = decoded_at[done]
        tau[finished] = restarts[finished] * m + attempt
        latency[finished] = restarts[finished] * n_m + cumulative[attempt - 1]

        restarts[pending[~done]] += 1
        pending = pending[~done]
        rounds += 1

    return tau, restarts, latency


def simulate_decoding_time(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    cycles: int,
    seed: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    threads: Optional[int] = None,
    max_rounds: int = 100_000,
) -> DecodingTimeResult:
    """Simulates the decoding time of `cycles` messages.

    Attempt i succeeds when the noise energy of the first N_i symbols is at
    most r_i^2. After m failures the transmitter restarts with fresh noise
    and the latency keeps accumulating.

    Parameters
    ----------
    sched : TransmissionSchedule
        schedule
    radii : DecodingRadii
        squared radii
    cycles : int
        number of simulated messages
    seed : int
        root seed
    chunk_size : int, optional
        messages per substream, by default 2^16
    threads : Optional[int], optional
        requested worker threads, capped by RCSP_THREADS
    max_rounds : int, optional
        restart cycles after which the scheme is declared degenerate

    Returns
    -------
    DecodingTimeResult
        per-message decoding times and latencies

    Raises
    ------
    DegenerateSchemeError
        Raised if some message is still undecoded after `max_rounds` cycles
    """
    if sched.m != radii.m:
        raise InvalidArgumentException(
            f"Schedule has {sched.m} transmissions but {radii.m} radii were given"
        )
    if not is_positive_int(cycles):
        raise InvalidArgumentException(f"cycles must be a positive integer, got: {cycles!r}")

    cycles = int(cycles)
    n_chunks = math.ceil(cycles / chunk_size)
    sizes = [chunk_size] * (n_chunks - 1) + [cycles - chunk_size * (n_chunks - 1)]
    seed_seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    r_squared = np.asarray(radii.r_squared, dtype=float)

    workers = get_max_workers(threads)
    logging.debug(f"Simulating {cycles} messages in {n_chunks} chunks on {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        chunks = list(
            executor.map(
                lambda args: _simulate_chunk(
                    sched.increments, r_squared, *args, max_rounds=max_rounds
                ),
                zip(sizes, seed_seqs),
            )
        )

    tau = np.concatenate([chunk[0] for chunk in chunks])
    restarts = np.concatenate([chunk[1] for chunk in chunks])
    latency = np.concatenate([chunk[2] for chunk in chunks])
    return DecodingTimeResult(tau, restarts, latency, seed)
