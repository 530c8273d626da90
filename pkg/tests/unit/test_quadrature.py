"""
Testing Module for quadrature.py
"""
import logging
import math

import pytest

from rcsp.analysis.quadrature import adaptive_simpson
from rcsp.common.errors import QuadratureConvergenceError


@pytest.mark.positive
def test_polynomial_is_exact():
    result = adaptive_simpson(lambda t: 3.0 * t * t, 0.0, 2.0)
    assert result.value == pytest.approx(8.0, abs=1e-12)
    assert result.evaluations > 0


@pytest.mark.positive
def test_reversed_and_empty_intervals():
    assert adaptive_simpson(math.exp, 1.0, 1.0).value == 0.0
    forward = adaptive_simpson(math.exp, 0.0, 1.0).value
    backward = adaptive_simpson(math.exp, 1.0, 0.0).value
    assert backward == pytest.approx(-forward, abs=1e-14)
    assert forward == pytest.approx(math.e - 1.0, abs=1e-11)


@pytest.mark.positive
def test_breakpoints_split_kinks():
    """|t - 0.3| has a kink that a breakpoint removes"""
    result = adaptive_simpson(
        lambda t: abs(t - 0.3), 0.0, 1.0, abs_tol=1e-12, breakpoints=[0.3, 5.0]
    )
    assert result.value == pytest.approx(0.5 * 0.09 + 0.5 * 0.49, abs=1e-12)


@pytest.mark.positive
def test_smooth_ends_handles_endpoint_singularity():
    """t^(-1/2) on [0, 1] integrates to 2"""
    result = adaptive_simpson(
        lambda t: 1.0 / math.sqrt(t) if t > 0 else math.inf,
        0.0,
        1.0,
        abs_tol=1e-9,
        smooth_ends=True,
    )
    assert result.value == pytest.approx(2.0, abs=1e-7)


@pytest.mark.negative
def test_depth_exhaustion_reports_partial():
    with pytest.raises(QuadratureConvergenceError) as error:
        adaptive_simpson(lambda t: math.sin(1.0 / t), 1e-6, 1.0, abs_tol=1e-14, max_depth=6)
    assert math.isfinite(error.value.partial)


@pytest.mark.positive
def test_debug_record_is_formatted_lazily(caplog):
    """The summary record keeps its arguments unformatted until emitted"""
    with caplog.at_level(logging.DEBUG):
        adaptive_simpson(math.exp, 0.0, 1.0)

    records = [record for record in caplog.records if record.msg.startswith("Integrated")]
    assert len(records) == 1
    assert records[0].args[:2] == (0.0, 1.0)
    assert "pieces" in records[0].getMessage()
