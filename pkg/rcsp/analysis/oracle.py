"""
Module: oracle.py

Ground truth for joint error probabilities Pr(zeta_1 n ... n zeta_i), where
zeta_i is the event that the noise energy over the first N_i symbols exceeds
r_i^2.

Two estimators are provided:

- nested adaptive quadrature over the chi-square increments, used for up to
  three transmissions
- seeded Monte Carlo over any number of transmissions. Samples are drawn in
  chunks of 2^16 from independent substreams spawned from one
  `numpy.random.SeedSequence`, so results do not depend on the worker count.
"""
import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rcsp.analysis.intervals import Interval
from rcsp.analysis.quadrature import adaptive_simpson
from rcsp.analysis.schedule_model import DecodingRadii, TransmissionSchedule
from rcsp.analysis.special_functions import chi2_pdf, chi2_tail
from rcsp.common.errors import (
    DomainError,
    InvalidArgumentException,
    UnsupportedTransmissionCount,
)
from rcsp.guards.input_guards import is_positive_int
from rcsp.utils.workers import get_max_workers

DEFAULT_CHUNK_SIZE = 2**16
PAIR_TOLERANCE = 1.0e-11
JOINT_TOLERANCE = 1.0e-9
MAX_EXACT_TRANSMISSIONS = 3


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of a probability

    Attributes
    ----------
    mean : float
        fraction of samples in the event
    std_error : float
        binomial standard error sqrt(mean (1 - mean) / samples)
    samples : int
        number of samples
    seed : int
        root seed of the estimate
    """

    mean: float
    std_error: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError(f"An estimate needs at least one sample, got: {self.samples}")
        if not 0.0 <= self.mean <= 1.0:
            raise DomainError(f"Estimate out of range: {self.mean}")

    @classmethod
    def from_count(cls, count: int, samples: int, seed: int) -> "McEstimate":
        mean = count / samples
        return cls(mean, math.sqrt(mean * (1.0 - mean) / samples), samples, seed)

    def band(self, sigmas: float = 3.0) -> Interval:
        """mean -/+ sigmas standard errors, clipped to [0, 1]"""
        half_width = sigmas * self.std_error
        return Interval(max(0.0, self.mean - half_width), min(1.0, self.mean + half_width))


# ------------------------------
# quadrature oracle
# ------------------------------
def joint_tail_integral(
    dofs: Sequence[int],
    thresholds: Sequence[float],
    tol: float = JOINT_TOLERANCE,
    max_depth: int = 60,
) -> float:
    """Pr(S_1 > c_1, ..., S_n > c_n) where S_j is the sum of the first j
    independent chi-square variables with the given degrees of freedom.

    With X the first variable, the probability is

        int_{c_1}^{T} f_X(t) P(rest | c - t) dt + Pr(X > max(c_1, T))

    where T = max(c_2..c_n) and the conditional probability is 1 beyond T.

    Parameters
    ----------
    dofs : Sequence[int]
        degrees of freedom of the increments
    thresholds : Sequence[float]
        thresholds c_1..c_n on the cumulative sums
    tol : float, optional
        absolute tolerance of every quadrature, by default 1e-9
    max_depth : int, optional
        bisection depth limit, by default 60

    Returns
    -------
    float
        joint tail probability

    Raises
    ------
    QuadratureConvergenceError
        Raised if a quadrature does not converge
    """
    if len(dofs) != len(thresholds) or len(dofs) == 0:
        raise InvalidArgumentException(
            "Degrees of freedom and thresholds must be non empty and of equal length"
        )
    if any(math.isinf(c) and c > 0 for c in thresholds):
        return 0.0
    if all(c <= 0 for c in thresholds):
        return 1.0

    first_dof, first_threshold = dofs[0], thresholds[0]
    if len(dofs) == 1:
        return chi2_tail(first_dof, first_threshold).value

    # the first constraint holds surely, merge the first two increments
    if first_threshold <= 0:
        merged = [first_dof + dofs[1], *dofs[2:]]
        return joint_tail_integral(merged, thresholds[1:], tol, max_depth)

    rest_dofs = list(dofs[1:])
    rest_thresholds = list(thresholds[1:])
    horizon = max(rest_thresholds)
    beyond = chi2_tail(first_dof, max(first_threshold, horizon)).value
    if horizon <= first_threshold:
        return beyond

    def integrand(t: float) -> float:
        density = chi2_pdf(first_dof, t)
        if density == 0.0:
            return 0.0
        shifted = [c - t for c in rest_thresholds]
        return density * joint_tail_integral(rest_dofs, shifted, tol, max_depth)

    # split at the density peak and at the kinks of the conditional part
    breakpoints = [float(first_dof - 2), *rest_thresholds]
    result = adaptive_simpson(
        integrand,
        first_threshold,
        horizon,
        abs_tol=tol,
        max_depth=max_depth,
        breakpoints=breakpoints,
        smooth_ends=True,
    )
    return min(1.0, max(0.0, result.value + beyond))


def exact_pair_integral(
    n1: int, i2: int, r1_sq: float, r2_sq: float, tol: float = PAIR_TOLERANCE
) -> float:
    """Pr(zeta_1 n zeta_2) of a two-transmission scheme

    Parameters
    ----------
    n1 : int
        first blocklength N_1
    i2 : int
        second increment I_2
    r1_sq : float
        first squared radius
    r2_sq : float
        second squared radius
    tol : float, optional
        absolute tolerance, by default 1e-11

    Returns
    -------
    float
        joint error probability in [0, 1]
    """
    return joint_tail_integral((n1, i2), (r1_sq, r2_sq), tol=tol)


def exact_joint_integral(
    sched: TransmissionSchedule, radii: DecodingRadii, tol: float = JOINT_TOLERANCE
) -> float:
    """Pr(zeta_1 n ... n zeta_m) by nested quadrature, m <= 3

    Raises
    ------
    UnsupportedTransmissionCount
        Raised if the schedule has more than three transmissions
    """
    if sched.m > MAX_EXACT_TRANSMISSIONS:
        raise UnsupportedTransmissionCount(
            f"Exact integration supports at most {MAX_EXACT_TRANSMISSIONS} "
            f"transmissions, got: {sched.m}"
        )
    _check_lengths(sched, radii)
    return joint_tail_integral(sched.increments, radii.r_squared, tol=tol)


# ------------------------------
# Monte Carlo oracle
# ------------------------------
def _count_chunk(
    increments: tuple[int, ...],
    r_squared: np.ndarray,
    size: int,
    seed_seq: np.random.SeedSequence,
) -> np.ndarray:
    """Counts the samples of one chunk lying in each joint event"""
    rng = np.random.default_rng(seed_seq)
    energy = np.zeros(size)
    alive = np.ones(size, dtype=bool)
    counts = np.zeros(len(increments), dtype=np.int64)
    for i, increment in enumerate(increments):
        # sum of `increment` squared standard normals
        energy += rng.chisquare(increment, size=size)
        alive &= energy > r_squared[i]
        counts[i] = np.count_nonzero(alive)
    return counts


def mc_joint_series(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    samples: int,
    seed: int,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    threads: Optional[int] = None,
) -> list[McEstimate]:
    """Monte Carlo estimates of Pr(zeta_1 n ... n zeta_i) for i = 1..m.

    Every sample path is shared by all indices, so the estimates are
    nonincreasing in i.

    Parameters
    ----------
    sched : TransmissionSchedule
        schedule
    radii : DecodingRadii
        squared radii
    samples : int
        number of noise realizations
    seed : int
        root seed
    chunk_size : int, optional
        samples per substream, by default 2^16
    threads : Optional[int], optional
        requested worker threads, capped by RCSP_THREADS

    Returns
    -------
    list[McEstimate]
        estimates for attempts 1..m
    """
    _check_lengths(sched, radii)
    if not is_positive_int(samples):
        raise InvalidArgumentException(f"samples must be a positive integer, got: {samples!r}")
    if samples < 1000:
        logging.warning(f"Monte Carlo with only {samples} samples is unreliable")

    n_chunks = math.ceil(samples / chunk_size)
    sizes = [chunk_size] * (n_chunks - 1) + [samples - chunk_size * (n_chunks - 1)]
    seed_seqs = np.random.SeedSequence(seed).spawn(n_chunks)
    r_squared = np.asarray(radii.r_squared, dtype=float)

    workers = get_max_workers(threads)
    logging.debug(
        f"Monte Carlo: {samples} samples in {n_chunks} chunks on {workers} workers"
    )
    with ThreadPoolExecutor(max_workers=workers) as executor:
        chunk_counts = list(
            executor.map(
                lambda args: _count_chunk(sched.increments, r_squared, *args),
                zip(sizes, seed_seqs),
            )
        )

    # fixed reduction order over chunks
    counts = np.zeros(sched.m, dtype=np.int64)
    for chunk in chunk_counts:
        counts += chunk

    return [McEstimate.from_count(int(count), samples, seed) for count in counts]


def _check_lengths(sched: TransmissionSchedule, radii: DecodingRadii) -> None:
    if sched.m != radii.m:
        raise InvalidArgumentException(
            f"Schedule has {sched.m} transmissions but {radii.m} radii were given"
        )
