"""
Testing Module for oracle.py
"""
import math

import pytest

from rcsp.analysis.oracle import (
    McEstimate,
    exact_joint_integral,
    exact_pair_integral,
    joint_tail_integral,
    mc_joint_series,
)
from rcsp.analysis.schedule_model import DecodingRadii, TransmissionSchedule
from rcsp.analysis.special_functions import chi2_tail
from rcsp.common.errors import (
    DomainError,
    InvalidArgumentException,
    UnsupportedTransmissionCount,
)


def _exponential_pair(a: float, b: float) -> float:
    """Pr(X > a, X + Y > b) for X, Y chi-square with 2 degrees of freedom"""
    if b <= a:
        return math.exp(-a / 2.0)
    return math.exp(-b / 2.0) * (1.0 + (b - a) / 2.0)


@pytest.mark.positive
def test_mc_estimate_from_count():
    estimate = McEstimate.from_count(250, 1000, seed=1)
    assert estimate.mean == 0.25
    assert estimate.std_error == pytest.approx(math.sqrt(0.25 * 0.75 / 1000), rel=1e-15)

    band = estimate.band(2.0)
    assert band.lower == pytest.approx(0.25 - 2.0 * estimate.std_error)
    assert McEstimate.from_count(0, 10, seed=1).band().lower == 0.0


@pytest.mark.negative
def test_mc_estimate_invalid():
    with pytest.raises(DomainError):
        McEstimate(0.5, 0.1, 0, seed=1)
    with pytest.raises(DomainError):
        McEstimate(1.5, 0.1, 10, seed=1)


@pytest.mark.positive
def test_joint_tail_integral_degenerate_thresholds():
    assert joint_tail_integral((4,), (3.0,)) == chi2_tail(4, 3.0).value
    assert joint_tail_integral((4, 2), (-1.0, 0.0)) == 1.0
    assert joint_tail_integral((4, 2), (3.0, math.inf)) == 0.0

    # a sure first event merges the first two increments
    assert joint_tail_integral((2, 2), (0.0, 6.0)) == pytest.approx(
        chi2_tail(4, 6.0).value, rel=1e-12
    )


@pytest.mark.positive
@pytest.mark.parametrize("a, b", [(1.0, 5.0), (0.2, 12.0), (6.0, 6.5), (8.0, 3.0)])
def test_exact_pair_matches_closed_form(a, b):
    assert exact_pair_integral(2, 2, a, b) == pytest.approx(_exponential_pair(a, b), abs=1e-10)


@pytest.mark.positive
def test_exact_joint_matches_mc():
    sched = TransmissionSchedule((8, 4, 4))
    radii = DecodingRadii((10.0, 16.0, 22.0))
    exact = exact_joint_integral(sched, radii)
    estimate = mc_joint_series(sched, radii, 400_000, seed=20120903)[-1]
    assert abs(exact - estimate.mean) <= 3.0 * estimate.std_error + 3.0 / estimate.samples


@pytest.mark.negative
def test_exact_joint_transmission_limit():
    sched = TransmissionSchedule((4, 4, 4, 4))
    with pytest.raises(UnsupportedTransmissionCount):
        exact_joint_integral(sched, DecodingRadii((1.0, 2.0, 3.0, 4.0)))
    with pytest.raises(InvalidArgumentException):
        exact_joint_integral(TransmissionSchedule((4, 4)), DecodingRadii((1.0,)))


@pytest.mark.positive
def test_mc_series_is_nonincreasing_and_deterministic(two_db_scheme):
    sched, radii = two_db_scheme
    first = mc_joint_series(sched, radii, 100_000, seed=5)
    second = mc_joint_series(sched, radii, 100_000, seed=5)
    assert first == second

    means = [estimate.mean for estimate in first]
    assert means == sorted(means, reverse=True)
    assert first[0].mean == pytest.approx(
        chi2_tail(32, radii.r_squared[0]).value, abs=4.0 * first[0].std_error
    )


@pytest.mark.positive
def test_mc_series_independent_of_workers(two_db_scheme, monkeypatch):
    monkeypatch.delenv("RCSP_THREADS", raising=False)
    sched, radii = two_db_scheme
    single = mc_joint_series(sched, radii, 150_000, seed=9, threads=1)
    pooled = mc_joint_series(sched, radii, 150_000, seed=9, threads=4)
    assert single == pooled


@pytest.mark.positive
def test_mc_series_extreme_radii():
    sched = TransmissionSchedule((3, 3, 3))
    estimates = mc_joint_series(sched, DecodingRadii((0.0, 0.0, math.inf)), 5_000, seed=2)
    assert [estimate.mean for estimate in estimates] == [1.0, 1.0, 0.0]


@pytest.mark.negative
@pytest.mark.parametrize("samples", [0, -3, 2.5])
def test_mc_series_invalid_samples(samples):
    with pytest.raises(InvalidArgumentException):
        mc_joint_series(TransmissionSchedule((2,)), DecodingRadii((1.0,)), samples, seed=1)
