"""
Testing Module for joint_bounds.py

Every bound is checked against an oracle: the quadrature value for two and
three transmissions and the Monte Carlo estimate with a slack of three
standard errors plus 3 / samples.
"""
import itertools
import math

import numpy as np
import pytest

from rcsp.analysis.intervals import BoundMethod
from rcsp.analysis.joint_bounds import (
    ChernoffExponent,
    SeriesMethod,
    SeriesPolicy,
    UnionParameter,
    chernoff_pair_lower,
    chernoff_pair_upper,
    chernoff_recursion,
    closed_form_pair_upper,
    decomposition_upper,
    general_chernoff_lower,
    general_chernoff_upper,
    inglot_pair_bounds,
    joint_series_bounds,
    complement_pair_upper,
    suboptimal_u_star,
    trivial_upper,
    union_fixed_u,
    union_lower,
)
from rcsp.analysis.oracle import exact_joint_integral, exact_pair_integral, mc_joint_series
from rcsp.analysis.schedule_model import (
    ChannelConfig,
    DecodingRadii,
    MessageSet,
    TransmissionSchedule,
    optimistic_radii,
)
from rcsp.analysis.special_functions import chi2_head, chi2_tail
from rcsp.common.errors import (
    DomainError,
    InvalidArgumentException,
    PreconditionViolation,
    QuadratureConvergenceError,
    TransmissionIndexError,
)

MC_SAMPLES = 200_000
MC_SEED = 20120903


def _mc_slack(estimate) -> float:
    return 3.0 * estimate.std_error + 3.0 / estimate.samples


def _pair_args(sched, radii):
    n = sched.cumulative
    return n[0], n[1] - n[0], radii.r_squared[0], radii.r_squared[1]


# ------------------------------
# two-transmission bounds
# ------------------------------
@pytest.mark.positive
@pytest.mark.parametrize(
    "n_total, r_sq, expected", [(64, 64.0, 0.0), (64, 128.0, 0.25), (64, 32.0, 0.0)]
)
def test_suboptimal_u_star(n_total, r_sq, expected):
    assert suboptimal_u_star(n_total, r_sq) == expected


@pytest.mark.negative
def test_suboptimal_u_star_requires_positive_radius():
    with pytest.raises(DomainError):
        suboptimal_u_star(10, 0.0)


@pytest.mark.positive
def test_pair_upper_below_single_event():
    """u = 0 gives Pr(zeta_prev), so the infimum cannot exceed it"""
    for args in [(32, 16, 41.358, 86.2), (10, 4, 12.0, 11.0), (20, 5, 10.0, 30.0)]:
        single = chi2_tail(args[0], args[2]).value
        assert chernoff_pair_upper(*args) <= single * (1.0 + 1e-12)


@pytest.mark.positive
def test_pair_upper_with_sure_first_event():
    """r_prev^2 = 0 reduces the pair bound to the single event Chernoff bound,
    whose optimum is the closed form at u*"""
    infimum = chernoff_pair_upper(20, 12, 0.0, 48.0)
    closed = closed_form_pair_upper(20, 12, 0.0, 48.0)
    assert infimum == pytest.approx(closed, rel=1e-9)
    assert infimum >= chi2_tail(32, 48.0).value


@pytest.mark.positive
def test_closed_form_single_event_value():
    value = closed_form_pair_upper(2, 2, 0.0, 8.0)
    assert value == pytest.approx(math.exp(-2.0 * (1.0 - math.log(2.0))), rel=1e-12)
    assert value >= 5.0 * math.exp(-4.0)


@pytest.mark.positive
def test_closed_form_above_capacity_falls_back_to_first_event():
    assert closed_form_pair_upper(30, 10, 25.0, 35.0) == chi2_tail(30, 25.0).value


@pytest.mark.positive
def test_pair_upper_known_instance_above_exact():
    exact = exact_pair_integral(32, 16, 41.358, 86.2)
    assert chernoff_pair_upper(32, 16, 41.358, 86.2) >= exact - 1e-11


@pytest.mark.positive
def test_pair_lower_special_cases():
    # the first event is sure, w2 vanishes and the lower bound is exact
    assert chernoff_pair_lower(12, 8, 0.0, 30.0) == pytest.approx(
        chi2_tail(20, 30.0).value, rel=1e-12
    )
    assert chernoff_pair_lower(12, 8, 10.0, 1e12) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.positive
def test_complement_pair_upper(random_instances):
    """Pr(zeta_1^c n zeta_2) = Pr(zeta_2) - Pr(zeta_1 n zeta_2) is bounded"""
    for sched, radii in random_instances(50, (2,), seed=5):
        n1, i2, r1_sq, r2_sq = _pair_args(sched, radii)
        complement = chi2_tail(n1 + i2, r2_sq).value - exact_pair_integral(
            n1, i2, r1_sq, r2_sq, tol=1e-11
        )
        bound = complement_pair_upper(n1, n1 + i2, r1_sq, r2_sq)
        assert complement <= bound + 1e-9
        assert bound <= 1.0

    # v = 0 leaves the head of the first attempt
    assert complement_pair_upper(16, 24, 20.0, 30.0, fixed_v=0.0) == pytest.approx(
        chi2_head(16, 20.0).value, rel=1e-9
    )
    assert complement_pair_upper(16, 24, 0.0, 30.0) == 0.0


@pytest.mark.positive
def test_pair_sandwich_random_instances(random_instances):
    """chernoff_pair_lower <= exact <= chernoff_pair_upper <= closed form"""
    for sched, radii in random_instances(200, (2,), seed=11):
        args = _pair_args(sched, radii)
        exact = exact_pair_integral(*args, tol=1e-11)
        lower = chernoff_pair_lower(*args)
        upper = chernoff_pair_upper(*args)

        assert lower <= exact + 1e-9, args
        assert exact <= upper + 1e-9, args
        assert upper <= closed_form_pair_upper(*args) * (1.0 + 1e-9) + 1e-300, args


@pytest.mark.positive
def test_inglot_pair_sandwich(two_db_channel):
    """Where its preconditions hold the Inglot interval brackets the exact
    value"""
    checked = 0
    for n1, i2, k_bits in itertools.product((16, 32, 48), (4, 8, 16), (8, 16, 24)):
        sched = TransmissionSchedule((n1, i2))
        radii = optimistic_radii(two_db_channel, MessageSet(k_bits), sched)
        args = _pair_args(sched, radii)
        try:
            bounds = inglot_pair_bounds(*args)
        except (PreconditionViolation, QuadratureConvergenceError):
            continue
        exact = exact_pair_integral(*args, tol=1e-11)
        assert bounds.contains(exact, slack=1e-9), args
        checked += 1
    assert checked > 0


@pytest.mark.positive
def test_inglot_pair_two_db_instance(two_db_channel):
    sched = TransmissionSchedule((32, 16))
    radii = optimistic_radii(two_db_channel, MessageSet(16), sched)
    args = _pair_args(sched, radii)
    bounds = inglot_pair_bounds(*args)
    assert bounds.contains(exact_pair_integral(*args), slack=1e-9)
    assert bounds.method_upper is BoundMethod.INGLOT_PAIR


@pytest.mark.positive
def test_inglot_pair_nested_radii_is_exact():
    bounds = inglot_pair_bounds(20, 6, 30.0, 25.0)
    assert bounds.lower == bounds.upper == chi2_tail(20, 30.0).value
    assert bounds.method_lower is BoundMethod.EXACT


@pytest.mark.negative
def test_inglot_pair_preconditions():
    with pytest.raises(PreconditionViolation):
        inglot_pair_bounds(20, 1, 20.0, 30.0)
    # delta_low = 10 / 12 exceeds delta_high = 2 / 12
    with pytest.raises(PreconditionViolation):
        inglot_pair_bounds(20, 12, 10.0, 12.0)


# ------------------------------
# m-transmission recursion
# ------------------------------
@pytest.mark.positive
def test_recursion_product_identity(random_instances):
    rng = np.random.default_rng(3)
    for sched, radii in random_instances(20, (3, 5, 8), seed=5):
        u = rng.uniform(0.0, 0.45, size=sched.m - 1)
        params = chernoff_recursion(list(u), sched, radii)
        assert params.h[0] == u[0]
        for i in range(len(u)):
            assert params.one_minus_2h[i] == pytest.approx(
                float(np.prod(1.0 - 2.0 * u[: i + 1])), rel=1e-12
            )
            assert 1.0 - 2.0 * params.h[i] == pytest.approx(params.one_minus_2h[i], abs=1e-12)


@pytest.mark.positive
def test_recursion_reduces_to_pair_bound(random_instances):
    """At m = 2 the recursion bound is the pair Chernoff bound at u_1"""
    rng = np.random.default_rng(17)
    for sched, radii in random_instances(100, (2,), seed=29):
        u = float(rng.uniform(0.0, 0.49))
        n1, i2, r1, r2 = _pair_args(sched, radii)
        if math.isinf(r1) or math.isinf(r2):
            continue
        params = chernoff_recursion([u], sched, radii)
        scale = 1.0 - 2.0 * u
        log_expected = (
            -u * r2 - 0.5 * (n1 + i2) * math.log(scale) + chi2_tail(n1, scale * r1).log_value
        )
        expected = 1.0 if log_expected >= 0 else math.exp(log_expected)
        assert general_chernoff_upper(sched, radii, params=params) == pytest.approx(
            expected, rel=1e-12, abs=1e-300
        )


@pytest.mark.negative
def test_recursion_parameter_checks(two_db_scheme):
    sched, radii = two_db_scheme
    with pytest.raises(DomainError):
        chernoff_recursion([0.1, 0.1], sched, radii)
    with pytest.raises(DomainError):
        chernoff_recursion([0.1, 0.5, 0.0, 0.0], sched, radii)


@pytest.mark.positive
@pytest.mark.parametrize("exponent", list(ChernoffExponent))
def test_general_bounds_bracket_three_transmission_exact(two_db_channel, exponent):
    for increments, k_bits in [((24, 8, 8), 12), ((30, 6, 10), 16), ((12, 12, 12), 10)]:
        sched = TransmissionSchedule(increments)
        radii = optimistic_radii(two_db_channel, MessageSet(k_bits), sched)
        exact = exact_joint_integral(sched, radii, tol=1e-10)
        upper = general_chernoff_upper(sched, radii, exponent=exponent)
        lower = general_chernoff_lower(sched, radii, exponent=exponent)
        assert lower <= exact + 1e-8
        assert exact <= upper + 1e-8


@pytest.mark.positive
def test_general_bounds_contain_mc(two_db_scheme):
    sched, radii = two_db_scheme
    estimates = mc_joint_series(sched, radii, MC_SAMPLES, MC_SEED)
    for i in range(2, sched.m + 1):
        estimate = estimates[i - 1]
        prefix, prefix_radii = sched.prefix(i), radii.prefix(i)
        assert general_chernoff_upper(prefix, prefix_radii) >= estimate.mean - _mc_slack(estimate)
        assert general_chernoff_lower(prefix, prefix_radii) <= estimate.mean + _mc_slack(estimate)


@pytest.mark.positive
def test_general_upper_with_certificate(two_db_scheme):
    """A Monte Carlo certificate lets the lagged recursion search every u_i;
    the result must stay above the certified floor"""
    sched, radii = two_db_scheme
    certificate = mc_joint_series(sched, radii, MC_SAMPLES, MC_SEED)[-1]
    certified = general_chernoff_upper(sched, radii, certificate=certificate)
    assert certified >= certificate.mean - 3.0 * certificate.std_error


@pytest.mark.positive
def test_general_bounds_single_transmission():
    sched = TransmissionSchedule((10,))
    radii = DecodingRadii((12.0,))
    exact = chi2_tail(10, 12.0).value
    assert general_chernoff_upper(sched, radii) == exact
    assert general_chernoff_lower(sched, radii) == exact


# ------------------------------
# combination inequalities
# ------------------------------
@pytest.mark.positive
def test_trivial_upper_is_min_single_tail(two_db_scheme):
    sched, radii = two_db_scheme
    tails = [chi2_tail(n, r).value for n, r in zip(sched.cumulative, radii.r_squared)]
    assert trivial_upper(sched, radii) == min(tails)


@pytest.mark.positive
def test_union_lower_below_exact(two_db_channel):
    for increments in [(32, 8), (24, 8, 8), (16, 16)]:
        sched = TransmissionSchedule(increments)
        radii = optimistic_radii(two_db_channel, MessageSet(16), sched)
        exact = exact_joint_integral(sched, radii, tol=1e-10)
        fixed = union_fixed_u(sched, radii, 16)
        assert 0.0 <= fixed < 0.5
        assert union_lower(sched, radii, fixed_u=fixed) <= exact + 1e-8
        assert union_lower(sched, radii) <= exact + 1e-8


@pytest.mark.positive
def test_union_lower_infimum_beats_fixed_parameter(two_db_scheme):
    sched, radii = two_db_scheme
    fixed = union_fixed_u(sched, radii, 16)
    infimum = union_lower(sched, radii, extra_seeds=(fixed,))
    assert infimum >= union_lower(sched, radii, fixed_u=fixed) - 1e-15


@pytest.mark.positive
def test_decomposition_upper_above_mc(two_db_scheme):
    sched, radii = two_db_scheme
    estimates = mc_joint_series(sched, radii, MC_SAMPLES, MC_SEED)
    for j in (2, 3, 5):
        estimate = estimates[j - 1]
        assert decomposition_upper(sched, radii, j) >= estimate.mean - _mc_slack(estimate)


@pytest.mark.positive
def test_series_decomposition_uses_last_attempt(two_db_scheme):
    """The series evaluates the decomposition against zeta_m of the whole
    schedule, which is tighter than its prefix form for j < m"""
    sched, radii = two_db_scheme
    policy = SeriesPolicy(methods=frozenset({SeriesMethod.DECOMPOSITION}))
    series = joint_series_bounds(sched, radii, policy)

    full = {j: decomposition_upper(sched, radii, j) for j in range(2, sched.m + 1)}
    prefix_form = decomposition_upper(sched.prefix(2), radii.prefix(2), 2)
    assert full[2] < prefix_form

    running = series[1].upper
    for j in range(2, sched.m + 1):
        running = min(running, full[j])
        assert series[j].upper == pytest.approx(running, rel=1e-12)


@pytest.mark.negative
@pytest.mark.parametrize("j", [1, 6])
def test_decomposition_index(two_db_scheme, j):
    sched, radii = two_db_scheme
    with pytest.raises(TransmissionIndexError):
        decomposition_upper(sched, radii, j)


# ------------------------------
# series aggregation
# ------------------------------
@pytest.mark.positive
def test_series_contains_mc(two_db_scheme):
    sched, radii = two_db_scheme
    series = joint_series_bounds(sched, radii, SeriesPolicy(k_bits=16))
    estimates = mc_joint_series(sched, radii, MC_SAMPLES, MC_SEED)

    assert len(series) == sched.m + 1
    assert series[0].lower == series[0].upper == 1.0
    assert series[1].lower == series[1].upper == chi2_tail(32, radii.r_squared[0]).value
    for interval, estimate in zip(series[1:], estimates):
        assert interval.contains(estimate.mean, slack=_mc_slack(estimate))

    uppers = [interval.upper for interval in series]
    lowers = [interval.lower for interval in series]
    assert uppers == sorted(uppers, reverse=True)
    assert lowers == sorted(lowers, reverse=True)


@pytest.mark.positive
def test_series_exact_and_inglot_methods(two_db_channel):
    sched = TransmissionSchedule((32, 16, 8))
    radii = optimistic_radii(two_db_channel, MessageSet(16), sched)
    policy = SeriesPolicy(
        methods=frozenset({SeriesMethod.EXACT, SeriesMethod.INGLOT, SeriesMethod.CHERNOFF})
    )
    series = joint_series_bounds(sched, radii, policy)
    for i in (2, 3):
        exact = exact_joint_integral(sched.prefix(i), radii.prefix(i))
        assert series[i].contains(exact, slack=1e-8)
    assert series[3].method_upper is BoundMethod.EXACT or series[3].width < 1e-6


@pytest.mark.positive
def test_series_trivial_only(two_db_scheme):
    sched, radii = two_db_scheme
    policy = SeriesPolicy(methods=frozenset({SeriesMethod.TRIVIAL}))
    series = joint_series_bounds(sched, radii, policy)
    for i in range(2, sched.m + 1):
        assert series[i].lower == 0.0
        assert series[i].method_upper is BoundMethod.TRIVIAL_SINGLE
        assert series[i].upper == pytest.approx(
            trivial_upper(sched.prefix(i), radii.prefix(i)), rel=1e-15
        )


@pytest.mark.positive
def test_series_random_instances_contain_mc(random_instances):
    """Series intervals contain the Monte Carlo estimate on random schemes"""
    outside = 0
    total = 0
    for sched, radii in random_instances(6, (3, 4, 5, 8), seed=41):
        series = joint_series_bounds(sched, radii, SeriesPolicy())
        estimates = mc_joint_series(sched, radii, 50_000, MC_SEED)
        for interval, estimate in zip(series[1:], estimates):
            total += 1
            if not interval.contains(estimate.mean, slack=5.0 * estimate.std_error + 3.0 / 50_000):
                outside += 1
    assert outside == 0, f"{outside} of {total} indices outside"


@pytest.mark.slow
@pytest.mark.positive
def test_series_contain_mc_at_scale(random_instances):
    """50 random schemes against 10^6 Monte Carlo samples: at most 1% of the
    indices may leave the 3 sigma band, none may leave a 5 sigma band"""
    samples = 1_000_000
    outside_band = 0
    outside_wide = 0
    total = 0
    for sched, radii in random_instances(50, (3, 4, 5, 8), seed=97):
        series = joint_series_bounds(sched, radii, SeriesPolicy())
        estimates = mc_joint_series(sched, radii, samples, MC_SEED, threads=4)
        for interval, estimate in zip(series[1:], estimates):
            total += 1
            floor = 3.0 / samples
            if not interval.contains(estimate.mean, slack=3.0 * estimate.std_error + floor):
                outside_band += 1
            if not interval.contains(estimate.mean, slack=5.0 * estimate.std_error + floor):
                outside_wide += 1

    assert outside_wide == 0, f"{outside_wide} of {total} indices outside 5 sigma"
    assert outside_band <= 0.01 * total, f"{outside_band} of {total} indices outside 3 sigma"


@pytest.mark.negative
def test_series_policy_rejects_unknown_method():
    with pytest.raises(InvalidArgumentException):
        SeriesPolicy(methods=frozenset({"chernoff", "magic"}))
    with pytest.raises(InvalidArgumentException):
        SeriesPolicy(union_parameter="median")


@pytest.mark.positive
def test_series_policy_from_config():
    policy = SeriesPolicy.from_config(
        {"chernoff_exponent": "cumulative", "union_parameter": "infimum", "methods": ["trivial"]},
        {"seed": 5, "sigmas": 2.0},
        k_bits=8,
    )
    assert policy.exponent is ChernoffExponent.CUMULATIVE
    assert policy.union_parameter is UnionParameter.INFIMUM
    assert policy.methods == frozenset({SeriesMethod.TRIVIAL})
    assert policy.certificate_seed == 5
    assert policy.with_k_bits(12).k_bits == 12


@pytest.mark.negative
def test_series_length_mismatch():
    with pytest.raises(InvalidArgumentException):
        joint_series_bounds(TransmissionSchedule((4, 4)), DecodingRadii((3.0,)))


@pytest.mark.positive
def test_series_above_capacity_stays_valid():
    """At rates above capacity the Chernoff bounds collapse to their u = 0
    values, the intervals stay valid"""
    channel = ChannelConfig(0.0)
    sched = TransmissionSchedule((8, 2, 2))
    radii = optimistic_radii(channel, MessageSet(8), sched)
    series = joint_series_bounds(sched, radii)
    exact = exact_joint_integral(sched, radii, tol=1e-10)
    assert series[-1].contains(exact, slack=1e-8)
