"""
Testing Module for performance.py

Latency and throughput point values, interval propagation and the decoding
time simulator.
"""
import math

import numpy as np
import pytest

from rcsp.analysis.intervals import BoundInterval, BoundMethod
from rcsp.analysis.joint_bounds import joint_series_bounds
from rcsp.analysis.oracle import McEstimate, mc_joint_series
from rcsp.analysis.performance import (
    DecodingTimeSample,
    expected_latency,
    expected_throughput,
    mc_performance,
    performance_interval,
    simulate_decoding_time,
)
from rcsp.analysis.schedule_model import DecodingRadii, TransmissionSchedule
from rcsp.analysis.special_functions import chi2_tail
from rcsp.common.errors import (
    DegenerateSchemeError,
    DomainError,
    InvalidArgumentException,
    InvalidSeriesError,
)


def _interval(lower: float, upper: float) -> BoundInterval:
    return BoundInterval(lower, upper, BoundMethod.TRIVIAL_SINGLE, BoundMethod.TRIVIAL_SINGLE)


# ------------------------------
# point values
# ------------------------------
@pytest.mark.positive
def test_expected_latency_values():
    assert expected_latency([1.0, 0.1], [100]) == pytest.approx(111.111, abs=1e-3)
    assert expected_latency([1.0, 0.0, 0.0, 0.0], [10, 5, 5]) == 10.0
    assert expected_latency([1.0, 0.5, 0.25], [4, 4]) == pytest.approx(6.0 / 0.75, rel=1e-15)


@pytest.mark.positive
def test_expected_throughput_values():
    assert expected_throughput(64, 100.0) == 0.64
    assert expected_throughput(64, 64.0) == 1.0


@pytest.mark.positive
def test_latency_nondecreasing_in_each_probability():
    base = [1.0, 0.4, 0.2, 0.1]
    increments = [8, 4, 4]
    reference = expected_latency(base, increments)
    for i in range(1, len(base)):
        bumped = list(base)
        bumped[i] = min(bumped[i - 1], bumped[i] + 0.05)
        assert expected_latency(bumped, increments) >= reference


@pytest.mark.negative
def test_expected_latency_degenerate():
    with pytest.raises(DegenerateSchemeError):
        expected_latency([1.0, 1.0, 1.0], [4, 4])


@pytest.mark.negative
@pytest.mark.parametrize(
    "series",
    [
        [1.0, 0.5],
        [0.9, 0.5, 0.2],
        [1.0, 0.2, 0.5],
        [1.0, 0.5, -0.1],
        [1.0, math.nan, 0.1],
    ],
)
def test_expected_latency_invalid_series(series):
    with pytest.raises(InvalidSeriesError):
        expected_latency(series, [4, 4])


@pytest.mark.negative
@pytest.mark.parametrize("latency", [0.0, -1.0])
def test_expected_throughput_domain(latency):
    with pytest.raises(DomainError):
        expected_throughput(8, latency)


# ------------------------------
# intervals
# ------------------------------
@pytest.mark.positive
def test_performance_interval_contains_inner_series():
    bounds = [_interval(1.0, 1.0), _interval(0.3, 0.5), _interval(0.1, 0.3), _interval(0.0, 0.2)]
    increments = [10, 5, 5]
    estimate = performance_interval(bounds, increments, k_bits=8)

    rng = np.random.default_rng(13)
    for _ in range(50):
        series = [1.0]
        for interval in bounds[1:]:
            value = rng.uniform(interval.lower, interval.upper)
            series.append(min(series[-1], value))
        # clipping to the previous value can leave the interval
        if not all(b.lower <= p for b, p in zip(bounds, series)):
            continue
        latency = expected_latency(series, increments)
        assert estimate.latency.contains(latency, slack=1e-12)
        assert estimate.throughput.contains(8 / latency, slack=1e-12)

    assert estimate.latency.lower == pytest.approx(expected_latency([1.0, 0.3, 0.1, 0.0], increments))
    assert estimate.latency.upper == pytest.approx(expected_latency([1.0, 0.5, 0.3, 0.2], increments))
    assert not estimate.vacuous


@pytest.mark.positive
def test_performance_interval_flags_vacuous_throughput():
    bounds = [_interval(1.0, 1.0), _interval(0.0, 0.1)]
    estimate = performance_interval(bounds, [8], k_bits=8, capacity=0.5)
    assert estimate.vacuous
    assert estimate.to_dict()["throughput"]["upper"] == 1.0
    assert estimate.to_dict()["vacuous"] is True


@pytest.mark.negative
def test_performance_interval_degenerate():
    bounds = [_interval(1.0, 1.0), _interval(0.2, 1.0)]
    with pytest.raises(DegenerateSchemeError):
        performance_interval(bounds, [8], k_bits=8)


@pytest.mark.negative
def test_performance_interval_wrong_length():
    with pytest.raises(InvalidSeriesError):
        performance_interval([_interval(1.0, 1.0)], [8], k_bits=8)


@pytest.mark.positive
def test_mc_performance_band(two_db_scheme):
    sched, radii = two_db_scheme
    series = mc_joint_series(sched, radii, 100_000, seed=3)
    result = mc_performance(sched.increments, series, k_bits=16)

    means = [1.0] + [estimate.mean for estimate in series]
    assert result.latency == pytest.approx(expected_latency(means, sched.increments))
    assert result.latency_band.contains(result.latency)
    assert result.throughput_band.contains(result.throughput)


@pytest.mark.negative
def test_mc_performance_degenerate():
    series = [McEstimate(1.0, 0.0, 100, seed=1)]
    with pytest.raises(DegenerateSchemeError):
        mc_performance([4], series, k_bits=4)


# ------------------------------
# decoding time simulation
# ------------------------------
@pytest.mark.positive
def test_simulation_with_huge_radii():
    sched = TransmissionSchedule((5, 3))
    result = simulate_decoding_time(sched, DecodingRadii((1e9, 1e9)), cycles=1_000, seed=1)
    assert result.cycles == 1_000
    assert np.all(result.tau == 1)
    assert np.all(result.latency == 5)
    assert result.mean_restarts == 0.0
    assert next(result.samples()) == DecodingTimeSample(1, 5)


@pytest.mark.positive
def test_simulation_single_transmission_is_geometric():
    sched = TransmissionSchedule((10,))
    radii = DecodingRadii((10.0,))
    fail = chi2_tail(10, 10.0).value
    result = simulate_decoding_time(sched, radii, cycles=100_000, seed=20120903)

    assert np.all(result.latency % 10 == 0)
    assert np.array_equal(result.tau, result.restarts + 1)
    assert abs(result.mean_latency - 10.0 / (1.0 - fail)) <= 4.0 * result.std_error
    assert result.mean_restarts == pytest.approx(fail / (1.0 - fail), abs=0.02)


@pytest.mark.positive
def test_simulation_within_latency_bounds(two_db_scheme):
    sched, radii = two_db_scheme
    estimate = performance_interval(joint_series_bounds(sched, radii), sched.increments, 16)
    result = simulate_decoding_time(sched, radii, cycles=100_000, seed=7)
    assert estimate.latency.contains(result.mean_latency, slack=4.0 * result.std_error)


@pytest.mark.positive
def test_simulation_deterministic_across_workers(two_db_scheme, monkeypatch):
    monkeypatch.delenv("RCSP_THREADS", raising=False)
    sched, radii = two_db_scheme
    single = simulate_decoding_time(sched, radii, 70_000, seed=4, threads=1)
    pooled = simulate_decoding_time(sched, radii, 70_000, seed=4, threads=3)
    assert np.array_equal(single.latency, pooled.latency)
    assert single.summary() == pooled.summary()


@pytest.mark.positive
def test_simulation_summary(two_db_scheme):
    sched, radii = two_db_scheme
    summary = simulate_decoding_time(sched, radii, 5_000, seed=2).summary()
    assert set(summary) == {
        "cycles",
        "seed",
        "mean_latency",
        "std_error",
        "percentiles",
        "mean_restarts",
        "tau_histogram",
    }
    assert set(summary["percentiles"]) == {"p50", "p90", "p99"}
    assert sum(summary["tau_histogram"].values()) == 5_000


@pytest.mark.negative
def test_simulation_never_decoding():
    sched = TransmissionSchedule((2, 2))
    with pytest.raises(DegenerateSchemeError):
        simulate_decoding_time(sched, DecodingRadii((0.0, 0.0)), 100, seed=1, max_rounds=5)


@pytest.mark.negative
def test_simulation_invalid_arguments():
    sched = TransmissionSchedule((2, 2))
    with pytest.raises(InvalidArgumentException):
        simulate_decoding_time(sched, DecodingRadii((1.0, 2.0)), 0, seed=1)
    with pytest.raises(InvalidArgumentException):
        simulate_decoding_time(sched, DecodingRadii((1.0,)), 10, seed=1)
