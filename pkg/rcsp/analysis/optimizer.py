"""
Module: optimizer.py

Increment schedule search and the fixed schedules used for comparison.

`optimize_increments` runs a deterministic coordinate descent over integer
increments. Each coordinate is tried with steps -/+1, 2, 4, ... and the best
neighbor is accepted only if it strictly improves the objective. Evaluations are
cached per schedule and count against the budget.
"""
import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from rcsp.analysis.joint_bounds import (
    SeriesMethod,
    SeriesPolicy,
    UnionParameter,
    joint_series_bounds,
)
from rcsp.analysis.oracle import mc_joint_series
from rcsp.analysis.performance import (
    expected_latency,
    expected_throughput,
    performance_interval,
)
from rcsp.analysis.schedule_model import (
    ChannelConfig,
    MessageSet,
    RadiusAssumption,
    TransmissionSchedule,
    decoding_radii,
)
from rcsp.common.errors import DegenerateSchemeError, InvalidArgumentException
from rcsp.guards.input_guards import check_k_bits, is_positive_int
from rcsp.utils.workers import get_max_workers

# policy for schedules with tiny steps, where pair and recursion lower bounds
# degenerate and the single-event tails carry the upper ends
FIXED_STEP_POLICY = SeriesPolicy(
    methods=frozenset(
        {SeriesMethod.TRIVIAL, SeriesMethod.DECOMPOSITION, SeriesMethod.UNION}
    ),
    union_parameter=UnionParameter.FIXED,
)


class OptimizationObjective(str, Enum):
    """Throughput estimator driving the search"""

    BOUND_LOWER = "BoundLower"
    MC_ESTIMATE = "McEstimate"


@dataclass(frozen=True)
class OptimizationResult:
    """Outcome of `optimize_increments`

    Attributes
    ----------
    schedule : TransmissionSchedule
        best schedule found
    objective : float
        throughput of the schedule under `method`
    method : OptimizationObjective
        estimator used by the search
    evaluations : int
        distinct schedules evaluated
    budget_exhausted : bool
        True if the search stopped on the evaluation budget
    """

    schedule: TransmissionSchedule
    objective: float
    method: OptimizationObjective
    evaluations: int
    budget_exhausted: bool = False


# ------------------------------
# fixed schedules
# ------------------------------
def one_bit_scheme(k_bits: int) -> TransmissionSchedule:
    """I_1 = k_bits followed by 2 k_bits one-symbol increments, so the final
    rate is 1/3"""
    k_bits = check_k_bits(k_bits)
    return TransmissionSchedule(tuple([k_bits] + [1] * (2 * k_bits)))


def fixed_step_scheme(k_bits: int, step: int) -> TransmissionSchedule:
    """I_1 = k_bits followed by constant steps until N_m >= 3 k_bits"""
    k_bits = check_k_bits(k_bits)
    if not is_positive_int(step):
        raise InvalidArgumentException(f"step must be a positive integer, got: {step!r}")
    n_steps = math.ceil(2 * k_bits / step)
    return TransmissionSchedule(tuple([k_bits] + [int(step)] * n_steps))


def uniform_scheme(
    k_bits: int,
    m: int,
    channel: ChannelConfig,
    rate_factor: float = 0.9,
) -> TransmissionSchedule:
    """Starting schedule of the search: I_1 = round(rate_factor k_bits / C),
    so the first attempt runs slightly above capacity, then m - 1 equal
    increments of ceil(I_1 / (2m)) symbols"""
    k_bits = check_k_bits(k_bits)
    if not is_positive_int(m):
        raise InvalidArgumentException(f"m must be a positive integer, got: {m!r}")
    first = max(1, round(rate_factor * k_bits / channel.capacity))
    step = max(1, math.ceil(first / (2 * m)))
    return TransmissionSchedule(tuple([first] + [step] * (m - 1)))


# ------------------------------
# objectives
# ------------------------------
def bound_lower_throughput(
    sched: TransmissionSchedule,
    channel: ChannelConfig,
    msgs: MessageSet,
    radius: RadiusAssumption,
    policy: SeriesPolicy,
) -> float:
    """Certified throughput lower bound of a schedule, 0 for degenerate
    schemes"""
    radii = decoding_radii(channel, msgs, sched, radius)
    series = joint_series_bounds(sched, radii, policy)
    try:
        estimate = performance_interval(series, sched.increments, msgs.k_bits)
    except DegenerateSchemeError:
        return 0.0
    return estimate.throughput.lower


def mc_throughput(
    sched: TransmissionSchedule,
    channel: ChannelConfig,
    msgs: MessageSet,
    radius: RadiusAssumption,
    samples: int,
    seed: int,
    threads: Optional[int] = None,
) -> float:
    """Monte Carlo throughput estimate of a schedule, 0 for degenerate schemes"""
    radii = decoding_radii(channel, msgs, sched, radius)
    estimates = mc_joint_series(sched, radii, samples, seed, threads=threads)
    series = [1.0] + [estimate.mean for estimate in estimates]
    try:
        latency = expected_latency(series, sched.increments)
    except DegenerateSchemeError:
        return 0.0
    return expected_throughput(msgs.k_bits, latency)


# ------------------------------
# search
# ------------------------------
def _candidates(current: tuple[int, ...], j: int) -> list[tuple[int, ...]]:
    """Neighbors of `current` along coordinate j with steps -/+1, 2, 4, ..."""
    limit = max(8, sum(current))
    neighbors = []
    step = 1
    while step <= limit:
        for sign in (-1, 1):
            value = current[j] + sign * step
            if value >= 1:
                neighbors.append(current[:j] + (value,) + current[j + 1 :])
        step *= 2
    return neighbors


def optimize_increments(
    k_bits: int,
    m: int,
    channel: ChannelConfig,
    objective: OptimizationObjective = OptimizationObjective.BOUND_LOWER,
    budget: int = 300,
    radius: Optional[RadiusAssumption] = None,
    policy: Optional[SeriesPolicy] = None,
    samples: int = 100_000,
    seed: int = 20120903,
    seed_schedule: Optional[Sequence[int]] = None,
    rate_factor: float = 0.9,
    threads: Optional[int] = None,
) -> OptimizationResult:
    """Searches the increments maximizing the throughput of an m-transmission
    scheme.

    Parameters
    ----------
    k_bits : int
        information bits
    m : int
        number of transmissions
    channel : ChannelConfig
        channel
    objective : OptimizationObjective, optional
        certified lower bound or Monte Carlo estimate, by default BoundLower
    budget : int, optional
        maximum number of distinct schedules evaluated, by default 300
    radius : Optional[RadiusAssumption], optional
        packing assumption, by default optimistic
    policy : Optional[SeriesPolicy], optional
        bound methods of the BoundLower objective
    samples : int, optional
        Monte Carlo samples of the McEstimate objective
    seed : int, optional
        Monte Carlo seed, fixed for every evaluation
    seed_schedule : Optional[Sequence[int]], optional
        starting increments, by default `uniform_scheme`
    rate_factor : float, optional
        rate factor of the default starting schedule
    threads : Optional[int], optional
        worker threads for candidate evaluation, capped by RCSP_THREADS

    Returns
    -------
    OptimizationResult
        best schedule, its objective value and the evaluation count
    """
    msgs = MessageSet(k_bits)
    if not is_positive_int(m):
        raise InvalidArgumentException(f"m must be a positive integer, got: {m!r}")
    if not is_positive_int(budget):
        raise InvalidArgumentException(f"budget must be a positive integer, got: {budget!r}")
    objective = OptimizationObjective(objective)
    radius = radius or RadiusAssumption()
    policy = (policy or SeriesPolicy()).with_k_bits(msgs.k_bits)

    if seed_schedule is not None:
        start = TransmissionSchedule(tuple(seed_schedule))
        if start.m != m:
            raise InvalidArgumentException(
                f"Seed schedule has {start.m} transmissions, expected {m}"
            )
    else:
        start = uniform_scheme(msgs.k_bits, m, channel, rate_factor)

    cache: dict[tuple[int, ...], float] = {}

    def evaluate(increments: tuple[int, ...]) -> float:
        sched = TransmissionSchedule(increments)
        match objective:
            case OptimizationObjective.BOUND_LOWER:
                return bound_lower_throughput(sched, channel, msgs, radius, policy)
            case OptimizationObjective.MC_ESTIMATE:
                return mc_throughput(sched, channel, msgs, radius, samples, seed)

    workers = get_max_workers(threads)

    def evaluate_all(batch: list[tuple[int, ...]]) -> None:
        todo = [increments for increments in batch if increments not in cache]
        if workers > 1 and len(todo) > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                values = list(executor.map(evaluate, todo))
        else:
            values = [evaluate(increments) for increments in todo]
        cache.update(zip(todo, values))

    current = start.increments
    evaluate_all([current])
    best = cache[current]
    exhausted = False
    logging.info(f"Optimizer start {list(current)}: throughput {best:.6f}")

    improved = True
    while improved and not exhausted:
        improved = False
        for j in range(m):
            neighbors = _candidates(current, j)
            remaining = budget - len(cache)
            unseen = [n for n in neighbors if n not in cache]
            if len(unseen) > remaining:
                unseen = unseen[: max(0, remaining)]
                exhausted = True
            evaluate_all(unseen)

            scored = [(cache[n], n) for n in neighbors if n in cache]
            if scored:
                # first best neighbor in trial order
                value, winner = max(scored, key=lambda item: item[0])
                if value > best:
                    logging.info(
                        f"Optimizer accepted {list(winner)}: throughput {value:.6f}"
                    )
                    current, best = winner, value
                    improved = True
            if exhausted:
                break

    if exhausted:
        logging.warning(f"Optimizer budget of {budget} evaluations exhausted")

    return OptimizationResult(
        schedule=TransmissionSchedule(current),
        objective=best,
        method=objective,
        evaluations=len(cache),
        budget_exhausted=exhausted,
    )
