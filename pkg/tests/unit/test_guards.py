"""
Testing Module for the guards package

Covers the numerical input guards, the extension guards used by the config
loader and the report destination guard used by `--out`.
"""
import math

import numpy as np
import pytest

from rcsp.common.errors import InvalidScheduleError
from rcsp.guards.ext_guards import has_json_ext, has_yaml_ext
from rcsp.guards.input_guards import (
    check_increments,
    check_k_bits,
    is_positive_int,
    is_probability,
)
from rcsp.guards.path_guards import is_report_destination, is_valid_path


@pytest.mark.positive
def test_positive_int():
    assert is_positive_int(3)
    assert is_positive_int(np.int64(7))
    assert not is_positive_int(0)
    assert not is_positive_int(True)
    assert not is_positive_int(2.0)


@pytest.mark.positive
def test_probability():
    assert is_probability(0)
    assert is_probability(0.25)
    assert is_probability(1.0)
    assert not is_probability(1.0 + 1e-9)
    assert not is_probability(math.nan)
    assert not is_probability(False)
    assert not is_probability("0.5")


@pytest.mark.positive
def test_check_increments():
    assert check_increments([32, 8, 8]) == (32, 8, 8)


@pytest.mark.negative
@pytest.mark.parametrize("increments", [[], [0], [32, -1], [32, 2.5]])
def test_invalid_increments(increments):
    with pytest.raises(InvalidScheduleError):
        check_increments(increments)


@pytest.mark.negative
def test_invalid_k_bits():
    with pytest.raises(InvalidScheduleError):
        check_k_bits(0)


@pytest.mark.positive
def test_extension_guards(tmp_path):
    json_file = tmp_path / "scheme.json"
    yaml_file = tmp_path / "scheme.yml"
    json_file.write_text("{}")
    yaml_file.write_text("{}")

    assert has_json_ext(json_file)
    assert not has_yaml_ext(json_file)
    assert has_yaml_ext(yaml_file)
    assert not has_json_ext(tmp_path / "missing.json")


@pytest.mark.positive
def test_report_destination(tmp_path):
    existing = tmp_path / "report.csv"
    existing.write_text("")

    assert is_valid_path(existing)
    assert is_report_destination(existing)
    assert is_report_destination(tmp_path / "nested" / "dir" / "report.csv")
    assert not is_report_destination(tmp_path)
    assert not is_report_destination(existing / "report.csv")
    assert not is_report_destination(None)
