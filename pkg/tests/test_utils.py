import logging

import pytest

from sda_toolkit.utils import format_ratio, from_yaml, log_errors, to_yaml


@pytest.mark.parametrize(
    "obj",
    [
        pytest.param({"k": 2, "violating": [1, 3]}, id="mapping"),
        pytest.param([{"degree": 1, "communities": 2}], id="list-of-mappings"),
        pytest.param({"ec_corr": None, "cc": 0.25}, id="null-and-float"),
    ],
)
def test_yaml_dump_and_load(obj):
    dumped = to_yaml(obj)
    assert "{" not in dumped
    assert from_yaml(dumped) == obj


def test_log_errors(caplog: pytest.LogCaptureFixture):
    logger = logging.getLogger("test")

    @log_errors(logger, "Computation failed", return_on_error=-1)
    def divide(a: int, b: int) -> float:
        return a / b

    assert divide(6, 3) == 2
    with caplog.at_level(logging.ERROR):
        assert divide(1, 0) == -1
    assert "Computation failed" in caplog.text
    assert "ZeroDivisionError" in caplog.text


@pytest.mark.parametrize(
    "value, expected",
    [
        pytest.param(0.0, "0.00%"),
        pytest.param(2 / 7, "28.57%"),
        pytest.param(1.0, "100.00%"),
    ],
)
def test_format_ratio(value: float, expected: str):
    assert format_ratio(value) == expected
