"""
Module: special_functions.py

Chi-square densities, distribution functions and tails, plus the Inglot
two-sided envelope of the central chi-square tail.

Linear-domain values come from the regularized incomplete gamma functions in
`scipy.special`. Whenever those underflow (tails below 1e-300, which happens
for squared radii in the thousands) the logarithm is computed directly with
the series / continued fraction split: series for x < a + 1, continued
fraction otherwise.
"""
import math
from dataclasses import dataclass

from scipy import special

from rcsp.analysis.intervals import BoundInterval, BoundMethod
from rcsp.common.errors import DomainError, PreconditionViolation
from rcsp.guards.input_guards import is_positive_int

# convergence controls of the log-domain incomplete gamma routines
_EPS = 1.0e-16
_FPMIN = 1.0e-300
_MAX_ITERATIONS = 100_000

# below this the linear-domain value is no longer trusted
_TINY = 1.0e-300

_LOG_SQRT_PI = 0.5 * math.log(math.pi)


@dataclass(frozen=True)
class TailProbability:
    """A probability together with its natural logarithm

    Attributes
    ----------
    value : float
        probability in [0, 1]
    log_value : float
        natural log of value, may be -inf
    """

    value: float
    log_value: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise DomainError(f"Probability out of range: {self.value}")

    @classmethod
    def from_log(cls, log_value: float) -> "TailProbability":
        log_value = min(log_value, 0.0)
        return cls(math.exp(log_value), log_value)


# ------------------------------
# log-domain incomplete gamma
# ------------------------------
def _log_prefactor(a: float, x: float) -> float:
    """log of x^a e^{-x} / Gamma(a)"""
    return a * math.log(x) - x - special.gammaln(a)


def _lower_series(a: float, x: float) -> float:
    """Series sum of the lower regularized incomplete gamma function, without
    the prefactor"""
    ap = a
    delta = 1.0 / a
    total = delta
    for _ in range(_MAX_ITERATIONS):
        ap += 1.0
        delta *= x / ap
        total += delta
        if abs(delta) < abs(total) * _EPS:
            break
    return total


def _upper_continued_fraction(a: float, x: float) -> float:
    """Continued fraction of the upper regularized incomplete gamma function
    (modified Lentz), without the prefactor"""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITERATIONS + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def log_regularized_upper_gamma(a: float, x: float) -> float:
    """Natural log of Q(a, x) = Gamma(a, x) / Gamma(a)

    Parameters
    ----------
    a : float
        shape, a > 0
    x : float
        argument

    Returns
    -------
    float
        log Q(a, x), 0 for x <= 0
    """
    if a <= 0:
        raise DomainError(f"Incomplete gamma shape must be positive, got: {a}")
    if x <= 0:
        return 0.0

    if x < a + 1.0:
        log_p = math.log(_lower_series(a, x)) + _log_prefactor(a, x)
        if log_p >= 0.0:
            return -math.inf
        return math.log1p(-math.exp(log_p))

    return math.log(_upper_continued_fraction(a, x)) + _log_prefactor(a, x)


def log_regularized_lower_gamma(a: float, x: float) -> float:
    """Natural log of P(a, x) = gamma(a, x) / Gamma(a)

    Parameters
    ----------
    a : float
        shape, a > 0
    x : float
        argument

    Returns
    -------
    float
        log P(a, x), -inf for x <= 0
    """
    if a <= 0:
        raise DomainError(f"Incomplete gamma shape must be positive, got: {a}")
    if x <= 0:
        return -math.inf

    if x < a + 1.0:
        return math.log(_lower_series(a, x)) + _log_prefactor(a, x)

    log_q = math.log(_upper_continued_fraction(a, x)) + _log_prefactor(a, x)
    if log_q >= 0.0:
        return -math.inf
    return math.log1p(-math.exp(log_q))


# ------------------------------
# chi-square functions
# ------------------------------
def _check_dof(dof: object) -> int:
    if not is_positive_int(dof):
        raise DomainError(f"Degrees of freedom must be a positive integer, got: {dof}")
    return dof


def chi2_tail(dof: int, x: float) -> TailProbability:
    """Upper tail Pr(chi2_dof > x) = Q(dof/2, x/2)

    Parameters
    ----------
    dof : int
        degrees of freedom, >= 1
    x : float
        threshold, negative thresholds give probability 1

    Returns
    -------
    TailProbability
        tail probability and its logarithm
    """
    _check_dof(dof)
    if x <= 0:
        return TailProbability(1.0, 0.0)
    if math.isinf(x):
        return TailProbability(0.0, -math.inf)

    value = float(special.gammaincc(0.5 * dof, 0.5 * x))
    if value > _TINY:
        return TailProbability(value, math.log(value))

    return TailProbability.from_log(log_regularized_upper_gamma(0.5 * dof, 0.5 * x))


def chi2_head(dof: int, x: float) -> TailProbability:
    """Lower tail Pr(chi2_dof <= x) = P(dof/2, x/2) with its logarithm

    Parameters
    ----------
    dof : int
        degrees of freedom, >= 1
    x : float
        threshold, thresholds <= 0 give probability 0

    Returns
    -------
    TailProbability
        lower tail probability and its logarithm
    """
    _check_dof(dof)
    if x <= 0:
        return TailProbability(0.0, -math.inf)
    if math.isinf(x):
        return TailProbability(1.0, 0.0)

    value = float(special.gammainc(0.5 * dof, 0.5 * x))
    if value > _TINY:
        return TailProbability(value, math.log(value))

    return TailProbability.from_log(log_regularized_lower_gamma(0.5 * dof, 0.5 * x))


def chi2_cdf(dof: int, x: float) -> float:
    """Distribution function of chi2_dof, 0 for x <= 0"""
    _check_dof(dof)
    if x <= 0:
        return 0.0
    return float(special.gammainc(0.5 * dof, 0.5 * x))


def log_chi2_pdf(dof: int, x: float) -> float:
    """Log density of chi2_dof at x > 0"""
    half = 0.5 * dof
    return (half - 1.0) * math.log(x) - 0.5 * x - half * math.log(2.0) - special.gammaln(
        half
    )


def chi2_pdf(dof: int, x: float) -> float:
    """Density of chi2_dof, 0 for x < 0

    At x = 0 the density is +inf for one degree of freedom, 1/2 for two and 0
    above.
    """
    _check_dof(dof)
    if x < 0:
        return 0.0
    if x == 0:
        if dof == 1:
            return math.inf
        return 0.5 if dof == 2 else 0.0
    return math.exp(log_chi2_pdf(dof, x))


# ------------------------------
# Inglot envelope and sandwich
# ------------------------------
def log_inglot_envelope(k: int, r: float) -> float:
    """log E_k(r) = -1/2 [r - k - (k - 2) log(r / k) + log k]

    Parameters
    ----------
    k : int
        degrees of freedom, >= 2
    r : float
        threshold, > 0

    Returns
    -------
    float
        log of the envelope

    Raises
    ------
    DomainError
        Raised if k < 2 or r <= 0
    """
    if not is_positive_int(k) or k < 2:
        raise DomainError(f"Inglot envelope requires integer k >= 2, got: {k}")
    if r <= 0:
        raise DomainError(f"Inglot envelope requires r > 0, got: {r}")
    return -0.5 * (r - k - (k - 2) * math.log(r / k) + math.log(k))


def inglot_envelope(k: int, r: float) -> float:
    """E_k(r), see `log_inglot_envelope`"""
    return math.exp(log_inglot_envelope(k, r))


def inglot_tail_bounds(k: int, r: float) -> BoundInterval:
    """Two-sided bound on Pr(chi2_k > r) valid for k >= 2 and r > k - 2:

        1/2 E_k(r) <= Pr(chi2_k > r) <= r / (sqrt(pi) (r - k + 2)) E_k(r)

    Parameters
    ----------
    k : int
        degrees of freedom, >= 2
    r : float
        threshold

    Returns
    -------
    BoundInterval
        enclosure of the tail, upper end clamped to 1

    Raises
    ------
    DomainError
        Raised if k < 2
    PreconditionViolation
        Raised if r <= k - 2, the caller must fall back to the exact tail
    """
    if not is_positive_int(k) or k < 2:
        raise DomainError(f"Inglot bounds require integer k >= 2, got: {k}")
    if r <= k - 2:
        raise PreconditionViolation(
            f"Inglot bounds require r > k - 2, got k={k}, r={r}"
        )

    log_e = log_inglot_envelope(k, r)
    lower = 0.5 * math.exp(log_e)
    upper = math.exp(log_e + math.log(r / (r - k + 2)) - _LOG_SQRT_PI)
    return BoundInterval.from_raw(
        lower, upper, BoundMethod.INGLOT_SINGLE, BoundMethod.INGLOT_SINGLE
    )
