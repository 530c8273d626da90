"""
This module serves as a configuration file for pytest, providing a centralized
location to define fixtures, hooks, and other configuration settings that can be
shared across multiple test files within a pytest project. It allows users to
define reusable fixtures and configuration options, enhancing modularity and
maintainability in test code.
"""
import pathlib
import shutil

import numpy as np
import pytest

from rcsp.analysis.schedule_model import (
    ChannelConfig,
    MessageSet,
    TransmissionSchedule,
    optimistic_radii,
)

DATASETS_DIR = pathlib.Path(__file__).parent.parent / "datasets"


@pytest.fixture
def scheme_file_test(tmp_path: pytest.fixture, request: pytest.fixture):
    """
    Generates a path to a copy of the 2 dB scheme document

    Parameters
    ----------
    tmp_path : pytest.fixture
        temporary path generated by pytest fixures

    request : pytest.fixture
        provides access to information and resources related to the currently
        executing test

    Return
    ------
    pathlib.Path
        Path to the copied scheme document.

    Note
    ----
    Paths generated are teared down after the test is finished.
    """

    # creating temporary directory
    unit_test_name = request.node.name
    test_dir = tmp_path / f"unit-testing-{unit_test_name}"
    test_dir.mkdir()

    # copy the scheme documents into the testing directory
    for dataset in DATASETS_DIR.iterdir():
        shutil.copy(dataset, test_dir)

    # tear down of the directory after the test is done
    def cleanup():
        """removes testing directory after finishing"""
        shutil.rmtree(test_dir)

    request.addfinalizer(cleanup)

    # return path to the scheme document
    return test_dir / "scheme_2db.json"


@pytest.fixture
def two_db_channel() -> ChannelConfig:
    """2 dB AWGN channel, capacity 0.6851 bits per symbol"""
    return ChannelConfig(2.0)


@pytest.fixture
def two_db_scheme(two_db_channel):
    """k = 16, increments 32,8,8,8,8 at 2 dB with optimistic radii

    Return
    ------
    tuple[TransmissionSchedule, DecodingRadii]
        schedule and its squared radii
    """
    sched = TransmissionSchedule((32, 8, 8, 8, 8))
    radii = optimistic_radii(two_db_channel, MessageSet(16), sched)
    return sched, radii


@pytest.fixture
def random_instances():
    """Factory of seeded random schemes

    Return
    ------
    Callable[[int, tuple[int, ...]], list[tuple[TransmissionSchedule, DecodingRadii]]]
        returns `count` schemes with m drawn from `m_choices`, increments in
        [1, 64], SNR in [0, 6] dB and k in [8, 128]
    """

    def generate(count: int, m_choices: tuple[int, ...], seed: int = 7):
        rng = np.random.default_rng(seed)
        instances = []
        while len(instances) < count:
            m = int(rng.choice(m_choices))
            increments = tuple(int(value) for value in rng.integers(1, 65, size=m))
            channel = ChannelConfig(float(rng.uniform(0.0, 6.0)))
            k_bits = int(rng.integers(8, 129))
            sched = TransmissionSchedule(increments)
            instances.append((sched, optimistic_radii(channel, MessageSet(k_bits), sched)))
        return instances

    return generate
