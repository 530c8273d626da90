"""
Module: quadrature.py

Adaptive Simpson integration with Richardson correction, used by the exact
oracles and by the Inglot two-transmission bounds.

The interval is first split at the supplied breakpoints (density peaks,
kinks of the integrand) and the absolute tolerance is shared between the
pieces in proportion to their length.

With `smooth_ends` every piece [a, b] is mapped from [0, 1] through the
smoothstep t(w) = a + (b - a)(3w^2 - 2w^3). The Jacobian vanishes at both
ends, which turns square-root kinks and t^(-1/2) singularities at the piece
ends into smooth integrands.
"""
import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass

from rcsp.common.errors import QuadratureConvergenceError

# bisections forced before the error estimate is trusted
_MIN_DEPTH = 4


@dataclass(frozen=True)
class QuadratureResult:
    """Result of an adaptive integration

    Attributes
    ----------
    value : float
        integral estimate
    error : float
        accumulated error estimate
    evaluations : int
        number of integrand evaluations
    """

    value: float
    error: float
    evaluations: int


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    """h/3 * (f(a) + 4*f(m) + f(b)) with h the half width"""
    return h / 3.0 * (fa + 4.0 * fm + fb)


class _AdaptiveSimpson:
    """Recursive adaptive Simpson state for one integrand"""

    def __init__(self, f: Callable[[float], float], max_depth: int):
        self.f = f
        self.max_depth = max_depth
        self.evaluations = 0
        self.exhausted = False

    def evaluate(self, x: float) -> float:
        self.evaluations += 1
        return self.f(x)

    def integrate(
        self,
        a: float,
        b: float,
        fa: float,
        fm: float,
        fb: float,
        s_whole: float,
        tol: float,
        depth: int,
    ) -> tuple[float, float]:
        m = 0.5 * (a + b)
        h = 0.5 * (b - a)
        flm = self.evaluate(0.5 * (a + m))
        frm = self.evaluate(0.5 * (m + b))

        s_left = _simpson(fa, flm, fm, 0.5 * h)
        s_right = _simpson(fm, frm, fb, 0.5 * h)
        s_combined = s_left + s_right
        error_estimate = (s_combined - s_whole) / 15.0

        if depth >= _MIN_DEPTH and abs(error_estimate) <= tol:
            return s_combined + error_estimate, abs(error_estimate)
        if depth >= self.max_depth:
            self.exhausted = True
            return s_combined + error_estimate, abs(error_estimate)

        left, left_err = self.integrate(
            a, m, fa, flm, fm, s_left, 0.5 * tol, depth + 1
        )
        right, right_err = self.integrate(
            m, b, fm, frm, fb, s_right, 0.5 * tol, depth + 1
        )
        return left + right, left_err + right_err


def _smoothstep(
    f: Callable[[float], float], a: float, b: float
) -> Callable[[float], float]:
    """f(t(w)) t'(w) with t the smoothstep map of [0, 1] onto [a, b]"""
    width = b - a

    def mapped(w: float) -> float:
        jacobian = 6.0 * width * w * (1.0 - w)
        if jacobian == 0.0:
            return 0.0
        return f(a + width * w * w * (3.0 - 2.0 * w)) * jacobian

    return mapped


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = 1.0e-11,
    max_depth: int = 60,
    breakpoints: Iterable[float] = (),
    smooth_ends: bool = False,
) -> QuadratureResult:
    """Integrates f over [a, b] with adaptive Simpson's rule.

    Parameters
    ----------
    f : Callable[[float], float]
        integrand, must be finite on [a, b]
    a : float
        lower limit
    b : float
        upper limit
    abs_tol : float, optional
        absolute error tolerance, by default 1e-11
    max_depth : int, optional
        maximum bisection depth, by default 60
    breakpoints : Iterable[float], optional
        interior points where the interval is split first
    smooth_ends : bool, optional
        integrate every piece through the smoothstep map, by default False

    Returns
    -------
    QuadratureResult
        value, error estimate and evaluation count

    Raises
    ------
    QuadratureConvergenceError
        Raised if a branch reaches `max_depth` before meeting its tolerance.
        The partial estimate is attached to the exception.
    """
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if a > b:
        flipped = adaptive_simpson(
            f, b, a, abs_tol, max_depth, breakpoints, smooth_ends
        )
        return QuadratureResult(-flipped.value, flipped.error, flipped.evaluations)

    # split points inside the open interval
    nodes = [a] + sorted({p for p in breakpoints if a < p < b}) + [b]
    length = b - a

    total = 0.0
    total_error = 0.0
    evaluations = 0
    exhausted = False
    for left, right in zip(nodes[:-1], nodes[1:]):
        piece_tol = abs_tol * (right - left) / length
        if smooth_ends:
            state = _AdaptiveSimpson(_smoothstep(f, left, right), max_depth)
            lo, hi = 0.0, 1.0
        else:
            state = _AdaptiveSimpson(f, max_depth)
            lo, hi = left, right

        fa = state.evaluate(lo)
        fb = state.evaluate(hi)
        fm = state.evaluate(0.5 * (lo + hi))
        s_whole = _simpson(fa, fm, fb, 0.5 * (hi - lo))
        value, error = state.integrate(lo, hi, fa, fm, fb, s_whole, piece_tol, 0)
        total += value
        total_error += error
        evaluations += state.evaluations
        exhausted = exhausted or state.exhausted

    if exhausted:
        raise QuadratureConvergenceError(
            f"Adaptive Simpson reached depth {max_depth} on [{a}, {b}] "
            f"before tolerance {abs_tol}",
            partial=total,
        )

    logging.debug(
        "Integrated [%.6g, %.6g] in %d pieces with %d evaluations",
        a,
        b,
        len(nodes) - 1,
        evaluations,
    )
    return QuadratureResult(total, total_error, evaluations)
