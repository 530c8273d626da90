"""
report_exec.py

Module containing the functions executed by rcsp's CLI modes. Each mode
builds a report (a dictionary or a list of rows) and writes it as JSON or
CSV to a file or to stdout.

Reports contain no timestamps, so identical inputs and seeds produce
byte-identical output.
"""
import dataclasses
import json
import logging
import math
import pathlib
from argparse import Namespace
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import pandas as pd

from rcsp.analysis.joint_bounds import SeriesPolicy, joint_series_bounds
from rcsp.analysis.oracle import (
    MAX_EXACT_TRANSMISSIONS,
    exact_joint_integral,
    mc_joint_series,
)
from rcsp.analysis.optimizer import (
    FIXED_STEP_POLICY,
    OptimizationObjective,
    fixed_step_scheme,
    one_bit_scheme,
    optimize_increments,
    uniform_scheme,
)
from rcsp.analysis.performance import (
    expected_latency,
    mc_performance,
    performance_interval,
    simulate_decoding_time,
)
from rcsp.analysis.schedule_model import (
    ChannelConfig,
    MessageSet,
    RadiusAssumption,
    SchemeConfig,
    TransmissionSchedule,
    decoding_radii,
)
from rcsp.common.errors import (
    DegenerateSchemeError,
    InvalidArgumentException,
    QuadratureConvergenceError,
)
from rcsp.guards.path_guards import is_report_destination
from rcsp.utils.config_utils import get_config_value, load_configs, scheme_from_dict
from rcsp.utils.workers import get_max_workers

# rows with at most this many transmissions get a quadrature latency
EXACT_CURVE_TRANSMISSIONS = 2


@dataclass(frozen=True)
class CurveRow:
    """One row of the latency/throughput curve, columns in output order"""

    k_bits: int
    m: int
    increments: str
    latency_lower: float
    latency_upper: float
    latency_exact_or_mc: float
    throughput_lower: float
    throughput_upper: float
    capacity: float
    flags: str


@dataclass(frozen=True)
class CurveSettings:
    """Options shared by every row of a curve

    Attributes
    ----------
    channel : ChannelConfig
        channel
    radius : RadiusAssumption
        packing assumption
    policy : SeriesPolicy
        bound methods for uniform and optimized schedules
    fixed_policy : SeriesPolicy
        bound methods for one-bit and fixed step schedules
    m : int
        transmissions of uniform and optimized schedules
    schedule_kind : str
        one of `uniform`, `optimize`, `one_bit`, `step`
    step : Optional[int]
        increment of the fixed step schedule
    budget : int
        optimizer evaluation budget
    samples : int
        Monte Carlo samples, 0 disables the Monte Carlo column
    seed : int
        Monte Carlo seed
    rate_factor : float
        rate factor of the uniform starting schedule
    threads : Optional[int]
        requested worker threads
    """

    channel: ChannelConfig
    radius: RadiusAssumption
    policy: SeriesPolicy
    fixed_policy: SeriesPolicy
    m: int = 5
    schedule_kind: str = "uniform"
    step: Optional[int] = None
    budget: int = 300
    samples: int = 100_000
    seed: int = 20120903
    rate_factor: float = 0.9
    threads: Optional[int] = None


# ------------------------------
# shared helpers
# ------------------------------
def resolve_samples(args: Namespace, general_configs: dict) -> int:
    """Monte Carlo sample count from the flags or the oracle configuration"""
    samples = args.samples
    if samples is None:
        samples = get_config_value(general_configs, "oracle", "samples", default=100_000)
    if not isinstance(samples, int) or samples < 0:
        raise InvalidArgumentException(
            f"samples must be a nonnegative integer, got: {samples!r}"
        )
    return samples


def resolve_seed(args: Namespace, general_configs: dict) -> int:
    if args.seed is not None:
        return args.seed
    return int(get_config_value(general_configs, "oracle", "seed", default=20120903))


def resolve_policy(
    general_configs: dict,
    k_bits: Optional[int],
    methods: Optional[list[str]] = None,
) -> SeriesPolicy:
    """Series policy from the `bounds` and `oracle` configuration sections"""
    policy = SeriesPolicy.from_config(
        get_config_value(general_configs, "bounds", default={}),
        get_config_value(general_configs, "oracle", default={}),
        k_bits=k_bits,
        methods=methods,
    )
    return dataclasses.replace(
        policy, threads=get_config_value(general_configs, "threads", default=None)
    )


def resolve_scheme(args: Namespace, general_configs: dict) -> SchemeConfig:
    """Builds the scheme from `--config` and the scheme flags. Flags take
    precedence over the document, the packaged radius configuration is used
    when neither names a radius assumption."""
    contents = load_configs(args.config) if args.config is not None else {}
    if "radius_assumption" not in contents and args.radius is None:
        contents = {
            **contents,
            "radius_assumption": get_config_value(general_configs, "radius", default={}),
        }
    overrides = {
        "snr_db": args.snr_db,
        "k_bits": args.bits,
        "increments": args.increments,
        "radius_assumption": args.radius,
    }
    return scheme_from_dict(contents, overrides)


def write_report(text: str, out: Optional[str] = None) -> None:
    """Writes a rendered report to `out`, or to stdout when None"""
    if out is None:
        print(text, end="")
        return

    if not is_report_destination(out):
        raise InvalidArgumentException(f"Cannot write a report to: {out}")

    out_path = pathlib.Path(out).absolute()
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w") as out_file:
        out_file.write(text)
    logging.info(f"Report written to {out_path}")


def render_json(report: dict | list) -> str:
    return json.dumps(report, indent=4) + "\n"


def render_csv(rows: list[dict]) -> str:
    return pd.DataFrame(rows).to_csv(index=False)


# ------------------------------
# bounds mode
# ------------------------------
def bounds_report(
    scheme: SchemeConfig,
    policy: SeriesPolicy,
    samples: int,
    seed: int,
    oracle_config: Optional[dict] = None,
) -> dict:
    """Certified series, oracle values and performance of one scheme

    Parameters
    ----------
    scheme : SchemeConfig
        scheme under analysis
    policy : SeriesPolicy
        bound methods and options
    samples : int
        Monte Carlo samples of the oracle, 0 disables it
    seed : int
        Monte Carlo seed
    oracle_config : Optional[dict], optional
        `oracle` section of the general configuration

    Returns
    -------
    dict
        report with keys scheme, capacity, radii_squared, series,
        performance and mc_performance

    Raises
    ------
    DegenerateSchemeError
        Raised if the upper bound of P_m is 1
    """
    oracle_config = oracle_config or {}
    sched = scheme.schedule
    radii = scheme.radii()
    capacity = scheme.channel.capacity
    k_bits = scheme.messages.k_bits

    # step 1: certified intervals
    logging.info(f"Bounding {sched.m} joint error probabilities")
    series = joint_series_bounds(sched, radii, policy.with_k_bits(k_bits))

    # step 2: quadrature oracle for the leading prefixes
    exact: list[Optional[float]] = [1.0] + [None] * sched.m
    tolerance = float(oracle_config.get("joint_tolerance", 1.0e-9))
    for i in range(1, min(sched.m, MAX_EXACT_TRANSMISSIONS) + 1):
        try:
            exact[i] = exact_joint_integral(sched.prefix(i), radii.prefix(i), tol=tolerance)
        except QuadratureConvergenceError as error:
            logging.warning(f"Quadrature oracle failed at i={i}: {error}")

    # step 3: Monte Carlo oracle
    estimates = []
    if samples > 0:
        estimates = mc_joint_series(
            sched,
            radii,
            samples,
            seed,
            chunk_size=int(oracle_config.get("chunk_size", 2**16)),
            threads=policy.threads,
        )

    rows = []
    for i, interval in enumerate(series):
        row = {"index": i, **interval.to_dict(), "exact": exact[i]}
        if estimates:
            mean = 1.0 if i == 0 else estimates[i - 1].mean
            std_error = 0.0 if i == 0 else estimates[i - 1].std_error
            row.update({"mc_mean": mean, "mc_std_error": std_error})
        rows.append(row)

    # step 4: latency and throughput
    performance = performance_interval(series, sched.increments, k_bits, capacity)
    mc_report = None
    if estimates:
        sigmas = float(oracle_config.get("sigmas", 3.0))
        try:
            mc = mc_performance(sched.increments, estimates, k_bits, sigmas)
            mc_report = {
                "latency": mc.latency,
                "throughput": mc.throughput,
                "latency_band": [mc.latency_band.lower, mc.latency_band.upper],
                "throughput_band": [mc.throughput_band.lower, mc.throughput_band.upper],
            }
        except DegenerateSchemeError as error:
            logging.warning(f"Monte Carlo performance unavailable: {error}")

    return {
        "scheme": scheme.to_dict(),
        "capacity": capacity,
        "radii_squared": list(radii.r_squared),
        "series": rows,
        "performance": performance.to_dict(),
        "mc_performance": mc_report,
    }


def bounds_exec(args: Namespace, general_configs: dict) -> None:
    """Executes the `bounds` mode"""
    scheme = resolve_scheme(args, general_configs)
    policy = resolve_policy(general_configs, scheme.messages.k_bits, args.methods)
    report = bounds_report(
        scheme,
        policy,
        samples=resolve_samples(args, general_configs),
        seed=resolve_seed(args, general_configs),
        oracle_config=get_config_value(general_configs, "oracle", default={}),
    )

    match args.format:
        case "json":
            write_report(render_json(report), args.out)
        case "csv":
            write_report(render_csv(report["series"]), args.out)


# ------------------------------
# curve mode
# ------------------------------
def _schedule_for(
    k_bits: int, settings: CurveSettings
) -> tuple[TransmissionSchedule, SeriesPolicy, list[str]]:
    """Schedule, series policy and flags of one curve row"""
    flags: list[str] = []
    match settings.schedule_kind:
        case "one_bit":
            return one_bit_scheme(k_bits), settings.fixed_policy, flags
        case "step":
            return fixed_step_scheme(k_bits, settings.step), settings.fixed_policy, flags
        case "optimize":
            result = optimize_increments(
                k_bits,
                settings.m,
                settings.channel,
                objective=OptimizationObjective.BOUND_LOWER,
                budget=settings.budget,
                radius=settings.radius,
                policy=settings.policy,
                rate_factor=settings.rate_factor,
                threads=settings.threads,
            )
            if result.budget_exhausted:
                flags.append("budget_exhausted")
            return result.schedule, settings.policy, flags
        case "uniform":
            schedule = uniform_scheme(k_bits, settings.m, settings.channel, settings.rate_factor)
            return schedule, settings.policy, flags
        case _:
            raise InvalidArgumentException(
                f"Unknown schedule kind: {settings.schedule_kind!r}"
            )


def curve_row(k_bits: int, settings: CurveSettings) -> CurveRow:
    """Latency and throughput intervals of one information bit count

    Raises
    ------
    DegenerateSchemeError
        Raised if the upper bound of P_m is 1
    """
    msgs = MessageSet(k_bits)
    sched, policy, flags = _schedule_for(msgs.k_bits, settings)
    radii = decoding_radii(settings.channel, msgs, sched, settings.radius)
    capacity = settings.channel.capacity

    series = joint_series_bounds(sched, radii, policy.with_k_bits(msgs.k_bits))
    performance = performance_interval(series, sched.increments, msgs.k_bits, capacity)
    if performance.vacuous:
        flags.append("vacuous")

    # point latency: quadrature for short schemes, Monte Carlo otherwise
    reference = math.nan
    try:
        if sched.m <= EXACT_CURVE_TRANSMISSIONS:
            points = [1.0] + [
                exact_joint_integral(sched.prefix(i), radii.prefix(i))
                for i in range(1, sched.m + 1)
            ]
            reference = expected_latency(points, sched.increments)
            flags.append("exact")
        elif settings.samples > 0:
            estimates = mc_joint_series(
                sched, radii, settings.samples, settings.seed, threads=settings.threads
            )
            points = [1.0] + [estimate.mean for estimate in estimates]
            reference = expected_latency(points, sched.increments)
            flags.append("mc")
    except DegenerateSchemeError:
        reference = math.inf
        flags.append("reference_degenerate")

    return CurveRow(
        k_bits=msgs.k_bits,
        m=sched.m,
        increments=";".join(str(increment) for increment in sched.increments),
        latency_lower=performance.latency.lower,
        latency_upper=performance.latency.upper,
        latency_exact_or_mc=reference,
        throughput_lower=performance.throughput.lower,
        throughput_upper=performance.throughput.upper,
        capacity=capacity,
        flags=";".join(flags),
    )


def curve_rows(bits_list: list[int], settings: CurveSettings) -> list[CurveRow]:
    """Rows for every information bit count, in input order"""
    workers = get_max_workers(settings.threads)
    logging.info(f"Computing {len(bits_list)} curve rows on {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda k: curve_row(k, settings), bits_list))


def curve_settings(args: Namespace, general_configs: dict) -> CurveSettings:
    """Curve options from the flags, `--config` and the general configuration"""
    contents = load_configs(args.config) if args.config is not None else {}

    snr_db = args.snr_db if args.snr_db is not None else contents.get("snr_db")
    if snr_db is None:
        raise InvalidArgumentException("curve mode requires --snr-db or snr_db in --config")

    radius = args.radius
    if radius is None:
        radius_config = contents.get(
            "radius_assumption", get_config_value(general_configs, "radius", default={})
        )
        radius = (
            RadiusAssumption.parse(radius_config)
            if isinstance(radius_config, str)
            else RadiusAssumption(**radius_config)
        )

    if args.optimize:
        schedule_kind = "optimize"
    elif args.one_bit:
        schedule_kind = "one_bit"
    elif args.step is not None:
        schedule_kind = "step"
    else:
        schedule_kind = "uniform"

    policy = resolve_policy(general_configs, None, args.methods)
    fixed_policy = policy if args.methods is not None else dataclasses.replace(
        FIXED_STEP_POLICY, threads=policy.threads
    )
    budget = args.budget
    if budget is None:
        budget = get_config_value(general_configs, "optimizer", "budget", default=300)

    return CurveSettings(
        channel=ChannelConfig(float(snr_db)),
        radius=radius,
        policy=policy,
        fixed_policy=fixed_policy,
        m=args.max_transmissions,
        schedule_kind=schedule_kind,
        step=args.step,
        budget=budget,
        samples=resolve_samples(args, general_configs),
        seed=resolve_seed(args, general_configs),
        rate_factor=float(
            get_config_value(
                general_configs, "optimizer", "initial_rate_factor", default=0.9
            )
        ),
        threads=policy.threads,
    )


def curve_exec(args: Namespace, general_configs: dict) -> None:
    """Executes the `curve` mode"""
    settings = curve_settings(args, general_configs)
    rows = [dataclasses.asdict(row) for row in curve_rows(args.bits_list, settings)]

    match args.format:
        case "csv":
            write_report(render_csv(rows), args.out)
        case "json":
            write_report(render_json(rows), args.out)


# ------------------------------
# simulate mode
# ------------------------------
def simulate_report(
    scheme: SchemeConfig,
    cycles: int,
    seed: int,
    samples: int = 0,
    threads: Optional[int] = None,
    max_rounds: int = 100_000,
    sigmas: float = 3.0,
) -> dict:
    """Decoding time simulation of one scheme, with the expected latency of a
    Monte Carlo series as reference when `samples` > 0"""
    sched = scheme.schedule
    radii = scheme.radii()

    logging.info(f"Simulating {cycles} messages")
    result = simulate_decoding_time(
        sched, radii, cycles, seed, threads=threads, max_rounds=max_rounds
    )
    reference = None
    if samples > 0:
        estimates = mc_joint_series(sched, radii, samples, seed, threads=threads)
        mc = mc_performance(sched.increments, estimates, scheme.messages.k_bits, sigmas)
        reference = {
            "latency": mc.latency,
            "latency_band": [mc.latency_band.lower, mc.latency_band.upper],
        }

    return {
        "scheme": scheme.to_dict(),
        "simulation": result.summary(),
        "expected_latency_mc": reference,
    }


def simulate_exec(args: Namespace, general_configs: dict) -> None:
    """Executes the `simulate` mode"""
    scheme = resolve_scheme(args, general_configs)
    cycles = args.cycles
    if cycles is None:
        cycles = get_config_value(general_configs, "simulation", "cycles", default=100_000)

    report = simulate_report(
        scheme,
        cycles=cycles,
        seed=resolve_seed(args, general_configs),
        samples=resolve_samples(args, general_configs),
        threads=get_config_value(general_configs, "threads", default=None),
        max_rounds=get_config_value(
            general_configs, "simulation", "max_rounds", default=100_000
        ),
        sigmas=float(get_config_value(general_configs, "oracle", "sigmas", default=3.0)),
    )

    match args.format:
        case "json":
            write_report(render_json(report), args.out)
        case "csv":
            simulation = report["simulation"]
            row = {
                key: value
                for key, value in simulation.items()
                if key not in ("percentiles", "tau_histogram")
            }
            row.update(simulation["percentiles"])
            if report["expected_latency_mc"] is not None:
                row["expected_latency_mc"] = report["expected_latency_mc"]["latency"]
            write_report(render_csv([row]), args.out)
