"""
Module: joint_bounds.py

Certified bounds on the joint error probabilities Pr(zeta_1 n ... n zeta_i)
of an incremental redundancy scheme, where zeta_i is the event that the noise
energy over the first N_i symbols exceeds r_i^2.

Bound families:

- two-transmission Chernoff bounds, their closed form at the suboptimal
  parameter u* and the Inglot based two-transmission bounds
- the m-transmission Chernoff recursion (upper) and its complement form
  (lower)
- the combination inequalities: union lower bound, trivial single-event
  upper bound and the three-term decomposition upper bound

`joint_series_bounds` evaluates every enabled method for each prefix of the
schedule and keeps the tightest ends.

Every Chernoff parameter gives a valid bound, so the infimum searches only
need to be good, not exact. All exponents are handled in the log domain.
"""
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
from scipy import optimize, special

from rcsp.analysis.intervals import BoundInterval, BoundMethod
from rcsp.analysis.oracle import McEstimate, exact_joint_integral, mc_joint_series
from rcsp.analysis.quadrature import adaptive_simpson
from rcsp.analysis.schedule_model import DecodingRadii, TransmissionSchedule
from rcsp.analysis.special_functions import chi2_head, chi2_tail
from rcsp.common.errors import (
    DomainError,
    InvalidArgumentException,
    PreconditionViolation,
    QuadratureConvergenceError,
    TransmissionIndexError,
)
from rcsp.guards.input_guards import is_positive_int

# upper end of every Chernoff parameter search
U_MAX = 0.5 - 1.0e-9

_GRID_POINTS = 24
_INGLOT_GRID_POINTS = 9
_BIG = 1.0e300
_SWEEPS = 3
_SWEEP_RTOL = 1.0e-10
_INGLOT_TOLERANCE = 1.0e-12
_LOG_SQRT_PI = 0.5 * math.log(math.pi)


class ChernoffExponent(str, Enum):
    """Exponent used by the recursion factor (1 - 2h)^(-I/2) of step i.

    `lagged` uses h_{i-1}, `cumulative` uses h_i. The cumulative form is a
    valid bound for every parameter vector, the lagged form is validated
    against a Monte Carlo certificate when more than u_1 is optimized.
    """

    LAGGED = "lagged"
    CUMULATIVE = "cumulative"


class UnionParameter(str, Enum):
    """Parameter choice of the union lower bound"""

    FIXED = "fixed"
    INFIMUM = "infimum"


class SeriesMethod(str, Enum):
    """Bound families that can be enabled in a `SeriesPolicy`"""

    TRIVIAL = "trivial"
    CHERNOFF = "chernoff"
    GENERAL = "general"
    UNION = "union"
    DECOMPOSITION = "decomposition"
    INGLOT = "inglot"
    EXACT = "exact"


DEFAULT_METHODS = frozenset(
    {
        SeriesMethod.TRIVIAL,
        SeriesMethod.CHERNOFF,
        SeriesMethod.GENERAL,
        SeriesMethod.UNION,
        SeriesMethod.DECOMPOSITION,
    }
)


@dataclass(frozen=True)
class ChernoffParams:
    """Parameters and derived quantities of the Chernoff recursion

    Attributes
    ----------
    u : tuple[float, ...]
        auxiliary parameters u_1..u_{m-1}, each in [0, 1/2)
    h : tuple[float, ...]
        h_1..h_{m-1}
    one_minus_2h : tuple[float, ...]
        1 - 2h_i computed as the product of (1 - 2u_j), j <= i
    log_g : tuple[float, ...]
        log g_1..log g_{m-1}
    exponent : ChernoffExponent
        exponent variant used for g
    v : Optional[tuple[float, ...]]
        lower bound parameters where applicable
    """

    u: tuple[float, ...]
    h: tuple[float, ...]
    one_minus_2h: tuple[float, ...]
    log_g: tuple[float, ...]
    exponent: ChernoffExponent = ChernoffExponent.LAGGED
    v: Optional[tuple[float, ...]] = None


@dataclass(frozen=True)
class InglotAuxiliaries:
    """Constants of the Inglot based two-transmission bounds

    Attributes
    ----------
    n1 : int
        first blocklength
    i2 : int
        second increment, >= 2
    r1_sq : float
        first squared radius
    r2_sq : float
        second squared radius
    log_k : float
        log K(r_2, I_2, N_1)
    delta_low : float
        (I_2 - 2) / r_2^2
    delta_high : float
        (r_2^2 - r_1^2) / r_2^2
    """

    n1: int
    i2: int
    r1_sq: float
    r2_sq: float
    log_k: float
    delta_low: float
    delta_high: float

    @classmethod
    def from_instance(
        cls, n1: int, i2: int, r1_sq: float, r2_sq: float
    ) -> "InglotAuxiliaries":
        log_k = (
            -0.5 * (r2_sq - i2)
            - 0.5 * n1 * math.log(2.0)
            - _LOG_SQRT_PI
            - 0.5 * (i2 - 1) * math.log(i2)
            - special.gammaln(0.5 * n1)
        )
        return cls(
            n1=n1,
            i2=i2,
            r1_sq=r1_sq,
            r2_sq=r2_sq,
            log_k=log_k,
            delta_low=(i2 - 2) / r2_sq,
            delta_high=(r2_sq - r1_sq) / r2_sq,
        )

    @property
    def valid(self) -> bool:
        return self.delta_low < self.delta_high

    @property
    def pole(self) -> float:
        """Singular point r_2^2 - I_2 + 2 of g"""
        return self.r2_sq - self.i2 + 2.0

    def log_g(self, t: float) -> float:
        """log g(t) = (N_1/2 - 1) log t + (I_2/2) log(r_2^2 - t) - log(pole - t)"""
        return (
            special.xlogy(0.5 * self.n1 - 1.0, t)
            + special.xlogy(0.5 * self.i2, self.r2_sq - t)
            - math.log(self.pole - t)
        )

    def log_lower_density(self, t: float) -> float:
        """log of (sqrt(pi) K / 2) t^(N_1/2 - 1) (r_2^2 - t)^(I_2/2 - 1)"""
        return (
            self.log_k
            + _LOG_SQRT_PI
            - math.log(2.0)
            + special.xlogy(0.5 * self.n1 - 1.0, t)
            + special.xlogy(0.5 * self.i2 - 1.0, self.r2_sq - t)
        )


@dataclass(frozen=True)
class SeriesPolicy:
    """Methods and options used by `joint_series_bounds`

    Attributes
    ----------
    methods : frozenset[SeriesMethod]
        enabled bound families
    exponent : ChernoffExponent
        recursion exponent variant
    union_parameter : UnionParameter
        fixed parameter or per-term infimum for the union lower bound
    k_bits : Optional[int]
        information bits, needed by the fixed union parameter
    certificate_samples : int
        Monte Carlo samples certifying the lagged recursion, 0 disables
    certificate_seed : int
        seed of the certificate
    certificate_sigmas : float
        standard errors of slack granted to the certificate
    joint_tolerance : float
        quadrature tolerance of the exact method
    """

    methods: frozenset = DEFAULT_METHODS
    exponent: ChernoffExponent = ChernoffExponent.LAGGED
    union_parameter: UnionParameter = UnionParameter.FIXED
    k_bits: Optional[int] = None
    certificate_samples: int = 0
    certificate_seed: int = 20120903
    certificate_sigmas: float = 3.0
    joint_tolerance: float = 1.0e-9
    threads: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        try:
            methods = frozenset(SeriesMethod(method) for method in self.methods)
            exponent = ChernoffExponent(self.exponent)
            union_parameter = UnionParameter(self.union_parameter)
        except ValueError as error:
            raise InvalidArgumentException(f"Invalid series policy: {error}") from error
        if self.k_bits is not None and not is_positive_int(self.k_bits):
            raise InvalidArgumentException(
                f"k_bits must be a positive integer, got: {self.k_bits!r}"
            )
        if not isinstance(self.certificate_samples, int) or self.certificate_samples < 0:
            raise InvalidArgumentException(
                f"certificate_samples must be a nonnegative integer, "
                f"got: {self.certificate_samples!r}"
            )
        object.__setattr__(self, "methods", methods)
        object.__setattr__(self, "exponent", exponent)
        object.__setattr__(self, "union_parameter", union_parameter)

    @classmethod
    def from_config(
        cls,
        bounds_config: dict,
        oracle_config: Optional[dict] = None,
        k_bits: Optional[int] = None,
        methods: Optional[Iterable[str]] = None,
    ) -> "SeriesPolicy":
        """Builds a policy from the `bounds` and `oracle` sections of the
        general configuration. `methods` overrides the configured methods."""
        oracle_config = oracle_config or {}
        return cls(
            methods=frozenset(methods or bounds_config.get("methods", DEFAULT_METHODS)),
            exponent=bounds_config.get("chernoff_exponent", ChernoffExponent.LAGGED),
            union_parameter=bounds_config.get("union_parameter", UnionParameter.FIXED),
            k_bits=k_bits,
            certificate_samples=int(bounds_config.get("certificate_samples", 0)),
            certificate_seed=int(oracle_config.get("seed", 20120903)),
            certificate_sigmas=float(oracle_config.get("sigmas", 3.0)),
            joint_tolerance=float(oracle_config.get("joint_tolerance", 1.0e-9)),
        )

    def with_k_bits(self, k_bits: int) -> "SeriesPolicy":
        return SeriesPolicy(
            methods=self.methods,
            exponent=self.exponent,
            union_parameter=self.union_parameter,
            k_bits=k_bits,
            certificate_samples=self.certificate_samples,
            certificate_seed=self.certificate_seed,
            certificate_sigmas=self.certificate_sigmas,
            joint_tolerance=self.joint_tolerance,
            threads=self.threads,
        )


# ------------------------------
# helpers
# ------------------------------
def _scaled(u: float, r_sq: float) -> float:
    """u * r_sq with 0 * inf taken as 0"""
    return 0.0 if u == 0.0 else u * r_sq


def _finite(value: float) -> float:
    """Replaces NaN and +inf objective values so bounded searches stay stable"""
    if math.isnan(value) or value > _BIG:
        return _BIG
    return value


def _minimize(
    objective: Callable[[float], float],
    lo: float,
    hi: float,
    seeds: Iterable[float] = (),
    grid_points: int = _GRID_POINTS,
) -> tuple[float, float]:
    """Minimizes a scalar objective on [lo, hi]: grid and seed scan, then a
    bounded Brent search inside the best grid cell.

    Returns
    -------
    tuple[float, float]
        argmin and minimum found
    """
    if hi <= lo:
        return lo, objective(lo)

    candidates = [float(x) for x in np.linspace(lo, hi, grid_points)]
    candidates += [min(hi, max(lo, float(seed))) for seed in seeds]
    values = [_finite(objective(x)) for x in candidates]

    best = min(range(len(candidates)), key=lambda index: values[index])
    best_x, best_value = candidates[best], values[best]
    if not math.isfinite(best_value) or best_value >= _BIG:
        return best_x, best_value

    step = (hi - lo) / (grid_points - 1)
    a, b = max(lo, best_x - step), min(hi, best_x + step)
    if b > a:
        result = optimize.minimize_scalar(
            lambda x: _finite(objective(x)),
            bounds=(a, b),
            method="bounded",
            options={"xatol": 1.0e-12},
        )
        if result.fun < best_value:
            best_x, best_value = float(result.x), float(result.fun)

    return best_x, best_value


def _prob(log_value: float) -> float:
    """exp of a log bound, capped at 1"""
    if log_value >= 0.0:
        return 1.0
    return math.exp(log_value)


def _check_pair(n_prev: int, i_next: int, r_prev_sq: float, r_next_sq: float) -> None:
    if not is_positive_int(n_prev) or not is_positive_int(i_next):
        raise DomainError(
            f"Blocklengths must be positive integers, got: {n_prev!r}, {i_next!r}"
        )
    if math.isnan(r_prev_sq) or math.isnan(r_next_sq) or r_prev_sq < 0 or r_next_sq < 0:
        raise DomainError(
            f"Squared radii must be nonnegative, got: {r_prev_sq}, {r_next_sq}"
        )


def _check_scheme(sched: TransmissionSchedule, radii: DecodingRadii) -> None:
    if sched.m != radii.m:
        raise InvalidArgumentException(
            f"Schedule has {sched.m} transmissions but {radii.m} radii were given"
        )


# ------------------------------
# two-transmission Chernoff bounds
# ------------------------------
def suboptimal_u_star(n_total: int, r_sq: float) -> float:
    """u* = (1 - N / r^2) / 2 clamped to [0, 1/2). Positive exactly when
    c_2 = r^2 / N exceeds 1."""
    if not r_sq > 0:
        raise DomainError(f"Squared radius must be positive, got: {r_sq}")
    return min(U_MAX, max(0.0, 0.5 * (1.0 - n_total / r_sq)))


def _log_pair_upper_at(
    u: float, n_prev: int, n_total: int, r_prev_sq: float, r_next_sq: float
) -> float:
    scale = 1.0 - 2.0 * u
    return (
        -_scaled(u, r_next_sq)
        - 0.5 * n_total * math.log(scale)
        + chi2_tail(n_prev, scale * r_prev_sq).log_value
    )


def chernoff_pair_upper(
    n_prev: int, i_next: int, r_prev_sq: float, r_next_sq: float
) -> float:
    """Upper bound on Pr(zeta_prev n zeta_next):

        inf_u e^(-u r_next^2) Pr(chi2_{N_prev} > (1 - 2u) r_prev^2) / (1 - 2u)^(N/2)

    with N = N_prev + I_next and u in [0, 1/2).

    Parameters
    ----------
    n_prev : int
        blocklength of the earlier attempt
    i_next : int
        symbols added before the later attempt
    r_prev_sq : float
        squared radius of the earlier attempt
    r_next_sq : float
        squared radius of the later attempt

    Returns
    -------
    float
        upper bound, at most 1
    """
    _check_pair(n_prev, i_next, r_prev_sq, r_next_sq)
    if math.isinf(r_prev_sq) or math.isinf(r_next_sq):
        return 0.0

    n_total = n_prev + i_next
    seeds = [0.0]
    if r_next_sq > 0:
        seeds.append(suboptimal_u_star(n_total, r_next_sq))

    _, log_value = _minimize(
        lambda u: _log_pair_upper_at(u, n_prev, n_total, r_prev_sq, r_next_sq),
        0.0,
        U_MAX,
        seeds=seeds,
    )
    return _prob(log_value)


def complement_pair_upper(
    n_prev: int,
    n_total: int,
    r_prev_sq: float,
    r_next_sq: float,
    fixed_v: Optional[float] = None,
    seeds: Iterable[float] = (),
) -> float:
    """Upper bound on Pr(zeta_prev^c n zeta_next), the Chernoff bound

        e^(-v r_next^2) Pr(chi2_{N_prev} <= (1 - 2v) r_prev^2) / (1 - 2v)^(N/2)

    at `fixed_v` or minimized over v in [0, 1/2).

    Parameters
    ----------
    n_prev : int
        blocklength of the earlier attempt
    n_total : int
        blocklength of the later attempt
    r_prev_sq : float
        squared radius of the earlier attempt
    r_next_sq : float
        squared radius of the later attempt
    fixed_v : Optional[float], optional
        evaluate at this parameter instead of searching
    seeds : Iterable[float], optional
        extra starting points of the search

    Returns
    -------
    float
        upper bound, at most 1
    """
    if r_prev_sq <= 0 or math.isinf(r_next_sq):
        return 0.0

    def log_bound(v: float) -> float:
        scale = 1.0 - 2.0 * v
        return (
            -_scaled(v, r_next_sq)
            - 0.5 * n_total * math.log(scale)
            + chi2_head(n_prev, scale * r_prev_sq).log_value
        )

    if fixed_v is not None:
        return _prob(log_bound(min(U_MAX, max(0.0, fixed_v))))

    search_seeds = [0.0, *seeds]
    if r_next_sq > 0:
        search_seeds.append(suboptimal_u_star(n_total, r_next_sq))
    _, log_value = _minimize(log_bound, 0.0, U_MAX, seeds=search_seeds)
    return _prob(log_value)


def _surplus_pair_upper(
    n_prev: int, n_total: int, r_prev_sq: float, r_next_sq: float
) -> float:
    """Upper bound on Pr(zeta_prev n zeta_next^c), minimized over v >= 0 of

    e^(v r_next^2) Pr(chi2_{N_prev} > (1 + 2v) r_prev^2) / (1 + 2v)^(N/2)
    """
    # zeta_prev implies zeta_next
    if r_next_sq <= r_prev_sq:
        return 0.0
    if math.isinf(r_prev_sq):
        return 0.0

    i_next = n_total - n_prev
    gap = r_next_sq - r_prev_sq
    v_seed = max(0.0, 0.5 * ((i_next + 2.0) / gap - 1.0))
    v_max = max(1.0, 2.0 * v_seed, (n_total + 2.0) / gap)

    def log_bound(v: float) -> float:
        scale = 1.0 + 2.0 * v
        return (
            _scaled(v, r_next_sq)
            - 0.5 * n_total * math.log(scale)
            + chi2_tail(n_prev, scale * r_prev_sq).log_value
        )

    _, log_value = _minimize(log_bound, 0.0, v_max, seeds=(0.0, v_seed))
    return _prob(log_value)


def chernoff_pair_lower(
    n_prev: int, i_next: int, r_prev_sq: float, r_next_sq: float
) -> float:
    """Lower bound on Pr(zeta_prev n zeta_next):

        max(0, Pr(zeta_prev) - w_1, Pr(zeta_next) - w_2)

    where w_1 bounds Pr(zeta_prev n zeta_next^c) and w_2 bounds
    Pr(zeta_prev^c n zeta_next).

    Parameters
    ----------
    n_prev : int
        blocklength of the earlier attempt
    i_next : int
        symbols added before the later attempt
    r_prev_sq : float
        squared radius of the earlier attempt
    r_next_sq : float
        squared radius of the later attempt

    Returns
    -------
    float
        lower bound, at least 0
    """
    _check_pair(n_prev, i_next, r_prev_sq, r_next_sq)
    n_total = n_prev + i_next

    p_prev = chi2_tail(n_prev, r_prev_sq).value
    p_next = chi2_tail(n_total, r_next_sq).value
    w1 = _surplus_pair_upper(n_prev, n_total, r_prev_sq, r_next_sq)
    w2 = complement_pair_upper(n_prev, n_total, r_prev_sq, r_next_sq)

    return max(0.0, p_prev - w1, p_next - w2)


def closed_form_pair_upper(
    n_prev: int, i_next: int, r_prev_sq: float, r_next_sq: float
) -> float:
    """Pair upper bound at u = u*:

        exp(-N (c_2 - 1 - ln c_2) / 2) Pr(chi2_{N_prev} > r_prev^2 / c_2)

    with c_2 = r_next^2 / N. For c_2 <= 1 the parameter u = 0 is used, which
    gives Pr(zeta_prev).
    """
    _check_pair(n_prev, i_next, r_prev_sq, r_next_sq)
    if math.isinf(r_prev_sq) or math.isinf(r_next_sq):
        return 0.0

    n_total = n_prev + i_next
    c2 = r_next_sq / n_total
    if c2 <= 1.0:
        return chi2_tail(n_prev, r_prev_sq).value

    log_value = (
        -0.5 * n_total * (c2 - 1.0 - math.log(c2))
        + chi2_tail(n_prev, r_prev_sq / c2).log_value
    )
    return _prob(log_value)


# ------------------------------
# Inglot two-transmission bounds
# ------------------------------
def _chi2_mass(dof: int, a: float, b: float) -> float:
    """Pr(a < chi2_dof <= b)"""
    if b <= a:
        return 0.0
    if a > dof:
        return max(0.0, chi2_tail(dof, a).value - chi2_tail(dof, b).value)
    return max(0.0, chi2_head(dof, b).value - chi2_head(dof, a).value)


def inglot_pair_bounds(
    n1: int,
    i2: int,
    r1_sq: float,
    r2_sq: float,
    tol: float = _INGLOT_TOLERANCE,
) -> BoundInterval:
    """Two-transmission bounds from the Inglot sandwich of the chi-square tail.

    Writing p = Pr(chi2_{N_1} > r_2^2), the lower bound is

        p + int (sqrt(pi) K / 2) t^(N_1/2 - 1) (r_2^2 - t)^(I_2/2 - 1) dt

    over the part of [r_1^2, r_2^2] where the envelope is valid, plus the
    tail at I_2 - 2 over the remainder. The upper bound is

        p + inf_delta [ K int_{r_1^2}^{(1-delta) r_2^2} g(t) dt
                        + Pr((1-delta) r_2^2 < chi2_{N_1} <= r_2^2) ]

    with delta in (delta_low, delta_high). Quadrature error estimates are
    added to the upper end and subtracted from the lower end.

    Parameters
    ----------
    n1 : int
        first blocklength
    i2 : int
        second increment, >= 2
    r1_sq : float
        first squared radius
    r2_sq : float
        second squared radius
    tol : float, optional
        absolute quadrature tolerance, by default 1e-12

    Returns
    -------
    BoundInterval
        enclosure of Pr(zeta_1 n zeta_2)

    Raises
    ------
    PreconditionViolation
        Raised if I_2 < 2 or delta_low >= delta_high
    """
    _check_pair(n1, i2, r1_sq, r2_sq)
    if i2 < 2:
        raise PreconditionViolation(f"Inglot pair bounds require I_2 >= 2, got: {i2}")
    if r1_sq >= r2_sq:
        # zeta_1 implies zeta_2
        return BoundInterval.point(chi2_tail(n1, r1_sq).value, BoundMethod.EXACT)
    if math.isinf(r2_sq):
        return BoundInterval.point(0.0, BoundMethod.EXACT)

    aux = InglotAuxiliaries.from_instance(n1, i2, r1_sq, r2_sq)
    if not aux.valid:
        raise PreconditionViolation(
            f"Inglot pair bounds require delta_low < delta_high, got "
            f"{aux.delta_low:.6g} >= {aux.delta_high:.6g}"
        )

    p = chi2_tail(n1, r2_sq).value
    peak = [float(n1 - 2)]

    # lower end
    envelope_end = min(r2_sq, aux.pole)
    lower_integral = 0.0
    if envelope_end > r1_sq:
        result = adaptive_simpson(
            lambda t: math.exp(aux.log_lower_density(t)),
            r1_sq,
            envelope_end,
            abs_tol=tol,
            breakpoints=peak,
            smooth_ends=True,
        )
        lower_integral = result.value - result.error
    remainder = chi2_tail(i2, i2 - 2.0).value * _chi2_mass(
        n1, max(r1_sq, aux.pole), r2_sq
    )
    lower = p + lower_integral + remainder

    # upper end
    def upper_objective(delta: float) -> float:
        end = (1.0 - delta) * r2_sq
        mass = _chi2_mass(n1, end, r2_sq)
        if end <= r1_sq:
            return mass
        try:
            result = adaptive_simpson(
                lambda t: math.exp(aux.log_k + aux.log_g(t)),
                r1_sq,
                end,
                abs_tol=tol,
                breakpoints=peak,
                smooth_ends=True,
            )
        except QuadratureConvergenceError:
            return math.inf
        return result.value + result.error + mass

    delta_lo = aux.delta_low + 1.0e-9 * max(1.0, aux.delta_high - aux.delta_low)
    _, best = _minimize(
        upper_objective,
        delta_lo,
        aux.delta_high,
        seeds=(aux.delta_high,),
        grid_points=_INGLOT_GRID_POINTS,
    )
    upper = p + best

    return BoundInterval.from_raw(
        lower, upper, BoundMethod.INGLOT_PAIR, BoundMethod.INGLOT_PAIR
    )


# ------------------------------
# m-transmission recursion
# ------------------------------
def chernoff_recursion(
    u: Sequence[float],
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    exponent: ChernoffExponent = ChernoffExponent.LAGGED,
) -> ChernoffParams:
    """Evaluates the recursion

        h_1 = u_1,  h_i = h_{i-1} + u_i (1 - 2h_{i-1})
        g_1 = e^(-u_1 r_m^2) (1 - 2u_1)^(-I_m/2)
        g_i = g_{i-1} e^(-u_i (1 - 2h_{i-1}) r_{m-i+1}^2) (1 - 2h_e)^(-I_{m-i+1}/2)

    with h_e = h_{i-1} for the lagged exponent and h_i for the cumulative
    one.

    Parameters
    ----------
    u : Sequence[float]
        parameters u_1..u_{m-1}
    sched : TransmissionSchedule
        schedule with m >= 2 transmissions
    radii : DecodingRadii
        squared radii
    exponent : ChernoffExponent, optional
        exponent variant, by default lagged

    Returns
    -------
    ChernoffParams
        parameters with h_i, 1 - 2h_i and log g_i
    """
    _check_scheme(sched, radii)
    m = sched.m
    if len(u) != m - 1:
        raise DomainError(f"Expected {m - 1} recursion parameters, got: {len(u)}")
    for position, value in enumerate(u, start=1):
        if not 0.0 <= value < 0.5:
            raise DomainError(f"u_{position} must lie in [0, 1/2), got: {value}")
    exponent = ChernoffExponent(exponent)

    h: list[float] = []
    one_minus_2h: list[float] = []
    log_g: list[float] = []
    prev_h, prev_scale = 0.0, 1.0
    for i, u_i in enumerate(u, start=1):
        # event visited at step i
        event = m - i
        increment = sched.increments[event]
        r_sq = radii.r_squared[event]

        scale = prev_scale * (1.0 - 2.0 * u_i)
        if i == 1:
            step = -_scaled(u_i, r_sq) - 0.5 * increment * math.log(scale)
        else:
            base = prev_scale if exponent is ChernoffExponent.LAGGED else scale
            step = (
                log_g[-1]
                - _scaled(u_i * prev_scale, r_sq)
                - 0.5 * increment * math.log(base)
            )

        h.append(prev_h + u_i * prev_scale)
        one_minus_2h.append(scale)
        log_g.append(step)
        prev_h, prev_scale = h[-1], scale

    return ChernoffParams(
        u=tuple(float(value) for value in u),
        h=tuple(h),
        one_minus_2h=tuple(one_minus_2h),
        log_g=tuple(log_g),
        exponent=exponent,
    )


def _log_recursion_bound(
    params: ChernoffParams,
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    complement: bool = False,
) -> float:
    """log of g_{m-1} Pr(chi2_{I_1} > (1-2h) r_1^2) / (1-2h)^(I_1/2), with the
    lower tail instead when `complement` is set"""
    scale = params.one_minus_2h[-1]
    first = sched.increments[0]
    r1_sq = radii.r_squared[0]
    tail = chi2_head if complement else chi2_tail
    return (
        params.log_g[-1]
        + tail(first, scale * r1_sq).log_value
        - 0.5 * first * math.log(scale)
    )


def _optimize_recursion(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    exponent: ChernoffExponent,
    complement: bool = False,
    certificate: Optional[McEstimate] = None,
    sigmas: float = 3.0,
) -> tuple[ChernoffParams, float]:
    """Coordinate descent over u, 3 sweeps or relative improvement < 1e-10.

    The lagged exponent without a certificate only searches u_1, where both
    exponent variants coincide. With a certificate, parameter vectors whose
    bound falls below mean - sigmas * std_error are excluded.
    """
    m = sched.m
    if exponent is ChernoffExponent.CUMULATIVE or (
        certificate is not None and not complement
    ):
        free = list(range(m - 1))
    else:
        free = [0]

    floor = None
    if certificate is not None and not complement and exponent is ChernoffExponent.LAGGED:
        floor = certificate.mean - sigmas * certificate.std_error
    excluded = 0

    def objective(u_vec: Sequence[float]) -> float:
        nonlocal excluded
        params = chernoff_recursion(u_vec, sched, radii, exponent)
        value = _log_recursion_bound(params, sched, radii, complement)
        if floor is not None and floor > 0 and value < math.log(floor):
            excluded += 1
            return math.inf
        return value

    u = [0.0] * (m - 1)
    r_last = radii.r_squared[-1]
    if 0 < r_last < math.inf:
        u[0] = suboptimal_u_star(sched.total, r_last)
    best = _finite(objective(u))
    zero_value = _finite(objective([0.0] * (m - 1)))
    if zero_value < best:
        u, best = [0.0] * (m - 1), zero_value

    for _ in range(_SWEEPS):
        previous = best
        for j in free:

            def coordinate(x: float, j: int = j) -> float:
                trial = list(u)
                trial[j] = x
                return objective(trial)

            x, value = _minimize(coordinate, 0.0, U_MAX, seeds=(u[j],))
            if value < best:
                u[j], best = x, value
        if abs(previous - best) <= _SWEEP_RTOL * max(1.0, abs(previous)):
            break

    if excluded:
        logging.debug(f"Certificate excluded {excluded} recursion parameter vectors")

    return chernoff_recursion(u, sched, radii, exponent), best


def general_chernoff_upper(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    params: Optional[ChernoffParams] = None,
    exponent: ChernoffExponent = ChernoffExponent.LAGGED,
    certificate: Optional[McEstimate] = None,
    sigmas: float = 3.0,
) -> float:
    """Upper bound on Pr(zeta_1 n ... n zeta_m) from the Chernoff recursion.

    Parameters
    ----------
    sched : TransmissionSchedule
        schedule
    radii : DecodingRadii
        squared radii
    params : Optional[ChernoffParams], optional
        evaluate at these parameters instead of minimizing
    exponent : ChernoffExponent, optional
        exponent variant of the search, by default lagged
    certificate : Optional[McEstimate], optional
        Monte Carlo estimate of the same probability used to validate the
        lagged recursion beyond u_1
    sigmas : float, optional
        certificate slack in standard errors, by default 3

    Returns
    -------
    float
        upper bound, at most 1
    """
    _check_scheme(sched, radii)
    if sched.m == 1:
        return chi2_tail(sched.increments[0], radii.r_squared[0]).value
    if any(math.isinf(r_sq) for r_sq in radii.r_squared):
        return 0.0

    if params is not None:
        return _prob(_log_recursion_bound(params, sched, radii))

    _, log_value = _optimize_recursion(
        sched, radii, ChernoffExponent(exponent), certificate=certificate, sigmas=sigmas
    )
    if log_value >= _BIG:
        return chi2_tail(sched.increments[0], radii.r_squared[0]).value
    return _prob(log_value)


def general_chernoff_lower(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    exponent: ChernoffExponent = ChernoffExponent.LAGGED,
) -> float:
    """Lower bound on Pr(zeta_1 n ... n zeta_m):

        Pr(zeta_2 n ... n zeta_m) - upper bound of Pr(zeta_1^c n zeta_2 n ... n zeta_m)

    The first term is bounded below recursively on the schedule observed at
    attempts 2..m, the second by the recursion with the lower chi-square tail
    as last factor.
    """
    _check_scheme(sched, radii)
    m = sched.m
    if m == 1:
        return chi2_tail(sched.increments[0], radii.r_squared[0]).value
    if math.isinf(radii.r_squared[-1]):
        return 0.0

    rest = list(range(2, m + 1))
    inner = general_chernoff_lower(sched.select(rest), radii.select(rest), exponent)
    if inner <= 0.0:
        return 0.0
    if radii.r_squared[0] <= 0.0:
        return inner
    if any(math.isinf(r_sq) for r_sq in radii.r_squared):
        return 0.0

    _, log_value = _optimize_recursion(
        sched, radii, ChernoffExponent(exponent), complement=True
    )
    return max(0.0, inner - _prob(log_value))


# ------------------------------
# combination inequalities
# ------------------------------
def union_fixed_u(
    sched: TransmissionSchedule, radii: DecodingRadii, k_bits: int
) -> float:
    """Fixed union bound parameter u = 1/2 - N_m / (2 r_m^2 + 2 k_bits),
    clamped to [0, 1/2)"""
    denominator = 2.0 * radii.r_squared[-1] + 2.0 * k_bits
    return min(U_MAX, max(0.0, 0.5 - sched.total / denominator))


def union_lower(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    fixed_u: Optional[float] = None,
    extra_seeds: Iterable[float] = (),
) -> float:
    """Union lower bound

        Pr(zeta_1 n ... n zeta_m) >= Pr(zeta_m) - sum_{i<m} Pr(zeta_m n zeta_i^c)

    with each term bounded by `complement_pair_upper`, at `fixed_u` or at the
    per-term infimum.

    Parameters
    ----------
    sched : TransmissionSchedule
        schedule
    radii : DecodingRadii
        squared radii
    fixed_u : Optional[float], optional
        common parameter of every term, by default the per-term infimum
    extra_seeds : Iterable[float], optional
        extra starting points of the infimum searches

    Returns
    -------
    float
        lower bound, at least 0
    """
    _check_scheme(sched, radii)
    cumulative = sched.cumulative
    n_m, r_m = cumulative[-1], radii.r_squared[-1]
    p_m = chi2_tail(n_m, r_m).value
    if sched.m == 1 or p_m == 0.0:
        return p_m

    extra_seeds = tuple(extra_seeds)
    total = 0.0
    for n_i, r_i in zip(cumulative[:-1], radii.r_squared[:-1]):
        total += complement_pair_upper(
            n_i, n_m, r_i, r_m, fixed_v=fixed_u, seeds=extra_seeds
        )
        if total >= p_m:
            return 0.0
    return max(0.0, p_m - total)


def trivial_upper(sched: TransmissionSchedule, radii: DecodingRadii) -> float:
    """min over i of Pr(zeta_i), each single event containing the joint one"""
    _check_scheme(sched, radii)
    return min(
        chi2_tail(n_i, r_i).value for n_i, r_i in zip(sched.cumulative, radii.r_squared)
    )


def decomposition_upper(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    j: int,
    exponent: ChernoffExponent = ChernoffExponent.LAGGED,
) -> float:
    """Three-term upper bound on Pr(zeta_1 n ... n zeta_j):

        Pr(zeta_m n zeta_j) + Pr(zeta_j n zeta_{j-1}) - Pr(zeta_{j-1} n zeta_j n zeta_m)

    with pair Chernoff upper bounds on the first two terms and the recursion
    lower bound on the third.

    Raises
    ------
    TransmissionIndexError
        Raised if j is outside of 2..m
    """
    _check_scheme(sched, radii)
    m = sched.m
    if not 2 <= j <= m:
        raise TransmissionIndexError(f"Decomposition index must be in 2..{m}, got: {j}")

    n = sched.cumulative
    r = radii.r_squared
    if j == m:
        term_last = chi2_tail(n[m - 1], r[m - 1]).value
    else:
        term_last = chernoff_pair_upper(n[j - 1], n[m - 1] - n[j - 1], r[j - 1], r[m - 1])
    term_pair = chernoff_pair_upper(n[j - 2], n[j - 1] - n[j - 2], r[j - 2], r[j - 1])

    indices = sorted({j - 1, j, m})
    triple = general_chernoff_lower(sched.select(indices), radii.select(indices), exponent)

    return min(1.0, max(0.0, term_last + term_pair - triple))


# ------------------------------
# series aggregation
# ------------------------------
def _select_upper(candidates: list[tuple[float, BoundMethod]]) -> tuple[float, BoundMethod]:
    return min(candidates, key=lambda item: (item[0], item[1].cost_rank))


def _select_lower(candidates: list[tuple[float, BoundMethod]]) -> tuple[float, BoundMethod]:
    return min(candidates, key=lambda item: (-item[0], item[1].cost_rank))


def _prefix_bounds(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    policy: SeriesPolicy,
    certificate: Optional[McEstimate],
    full_sched: TransmissionSchedule,
    full_radii: DecodingRadii,
) -> BoundInterval:
    """Combined interval for Pr(zeta_1 n ... n zeta_i), i = sched.m >= 2.

    `sched` and `radii` are the prefix of `full_sched` and `full_radii`. The
    decomposition bound uses the last attempt of the full schedule.
    """
    i = sched.m
    methods = policy.methods
    n = sched.cumulative
    r = radii.r_squared

    uppers: list[tuple[float, BoundMethod]] = [(1.0, BoundMethod.TRIVIAL_SINGLE)]
    lowers: list[tuple[float, BoundMethod]] = [(0.0, BoundMethod.TRIVIAL_SINGLE)]

    if SeriesMethod.TRIVIAL in methods:
        uppers.append((trivial_upper(sched, radii), BoundMethod.TRIVIAL_SINGLE))

    if SeriesMethod.CHERNOFF in methods:
        args = (n[i - 2], n[i - 1] - n[i - 2], r[i - 2], r[i - 1])
        uppers.append((chernoff_pair_upper(*args), BoundMethod.CHERNOFF_PAIR))
        if i == 2:
            lowers.append((chernoff_pair_lower(*args), BoundMethod.CHERNOFF_PAIR))

    if SeriesMethod.GENERAL in methods:
        upper = general_chernoff_upper(
            sched,
            radii,
            exponent=policy.exponent,
            certificate=certificate,
            sigmas=policy.certificate_sigmas,
        )
        uppers.append((upper, BoundMethod.GENERAL_CHERNOFF))
        lowers.append(
            (general_chernoff_lower(sched, radii, policy.exponent), BoundMethod.GENERAL_CHERNOFF)
        )

    if SeriesMethod.UNION in methods:
        fixed_u = None
        seeds: tuple[float, ...] = ()
        if policy.k_bits is not None:
            fixed_candidate = union_fixed_u(sched, radii, policy.k_bits)
            if policy.union_parameter is UnionParameter.FIXED:
                fixed_u = fixed_candidate
            else:
                seeds = (fixed_candidate,)
        lowers.append(
            (union_lower(sched, radii, fixed_u=fixed_u, extra_seeds=seeds), BoundMethod.UNION_LOWER)
        )

    if SeriesMethod.DECOMPOSITION in methods:
        uppers.append(
            (
                decomposition_upper(full_sched, full_radii, i, policy.exponent),
                BoundMethod.DECOMPOSITION,
            )
        )

    if SeriesMethod.INGLOT in methods:
        try:
            inglot = inglot_pair_bounds(n[i - 2], n[i - 1] - n[i - 2], r[i - 2], r[i - 1])
            uppers.append((inglot.upper, BoundMethod.INGLOT_PAIR))
            if i == 2:
                lowers.append((inglot.lower, BoundMethod.INGLOT_PAIR))
        except (PreconditionViolation, QuadratureConvergenceError) as error:
            logging.debug(f"Inglot bounds skipped at i={i}: {error}")

    if SeriesMethod.EXACT in methods and i <= 3:
        try:
            value = exact_joint_integral(sched, radii, tol=policy.joint_tolerance)
            uppers.append((value, BoundMethod.EXACT))
            lowers.append((value, BoundMethod.EXACT))
        except QuadratureConvergenceError as error:
            logging.warning(f"Exact integration failed at i={i}: {error}")

    upper, method_upper = _select_upper(uppers)
    lower, method_lower = _select_lower(lowers)
    return BoundInterval.from_raw(lower, upper, method_lower, method_upper)


def _with_ends(
    interval: BoundInterval,
    lower: float,
    upper: float,
    method_lower: BoundMethod,
    method_upper: BoundMethod,
    events: int,
) -> BoundInterval:
    rebuilt = BoundInterval.from_raw(lower, upper, method_lower, method_upper)
    return BoundInterval(
        rebuilt.lower,
        rebuilt.upper,
        rebuilt.method_lower,
        rebuilt.method_upper,
        rebuilt.clamp_events + interval.clamp_events + events,
    )


def _enforce_monotone(series: list[BoundInterval]) -> list[BoundInterval]:
    """Running minimum of the upper ends, then a backward maximum of the lower
    ends. Both use P_i <= P_{i-1}."""
    result = list(series)
    for i in range(1, len(result)):
        current, previous = result[i], result[i - 1]
        if current.upper > previous.upper:
            logging.debug(
                f"Upper bound at i={i} lowered to {previous.upper:.6e} by the running minimum"
            )
            result[i] = _with_ends(
                current,
                current.lower,
                previous.upper,
                current.method_lower,
                previous.method_upper,
                1,
            )

    for i in range(len(result) - 1, 0, -1):
        current, previous = result[i], result[i - 1]
        if current.lower > previous.lower:
            result[i - 1] = _with_ends(
                previous,
                current.lower,
                previous.upper,
                current.method_lower,
                previous.method_upper,
                0,
            )
    return result


def joint_series_bounds(
    sched: TransmissionSchedule,
    radii: DecodingRadii,
    policy: Optional[SeriesPolicy] = None,
) -> list[BoundInterval]:
    """Certified intervals for P_0..P_m, P_i = Pr(zeta_1 n ... n zeta_i).

    P_0 = [1, 1] and P_1 is evaluated exactly. For i >= 2 the upper end is the
    minimum and the lower end the maximum over the enabled methods, ties
    going to the cheaper method. Upper ends are made nonincreasing with a
    running minimum.

    Parameters
    ----------
    sched : TransmissionSchedule
        schedule
    radii : DecodingRadii
        squared radii
    policy : Optional[SeriesPolicy], optional
        enabled methods and options, by default `SeriesPolicy()`

    Returns
    -------
    list[BoundInterval]
        intervals for indices 0..m
    """
    _check_scheme(sched, radii)
    policy = policy or SeriesPolicy()

    certificates: Optional[list[McEstimate]] = None
    if (
        policy.certificate_samples > 0
        and SeriesMethod.GENERAL in policy.methods
        and policy.exponent is ChernoffExponent.LAGGED
    ):
        certificates = mc_joint_series(
            sched,
            radii,
            policy.certificate_samples,
            policy.certificate_seed,
            threads=policy.threads,
        )

    series = [BoundInterval(1.0, 1.0, BoundMethod.EXACT, BoundMethod.EXACT)]
    first = chi2_tail(sched.increments[0], radii.r_squared[0]).value
    series.append(BoundInterval.point(first, BoundMethod.EXACT))

    for i in range(2, sched.m + 1):
        certificate = certificates[i - 1] if certificates is not None else None
        series.append(
            _prefix_bounds(
                sched.prefix(i), radii.prefix(i), policy, certificate, sched, radii
            )
        )

    series = _enforce_monotone(series)
    clamps = sum(interval.clamp_events for interval in series)
    if clamps:
        logging.debug(f"Series bounds required {clamps} clamping events")
    return series
