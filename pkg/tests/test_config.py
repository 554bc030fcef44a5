import logging

import pytest

from adc_toolkit.config import LimitsConfig, get_limits_config
from adc_toolkit.errors import AdcInputError


def test_defaults() -> None:
    assert get_limits_config() == LimitsConfig()


def test_reads_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("ADC_COEFF_CAP", "5")
    monkeypatch.setenv("ADC_JOBS", "4")
    monkeypatch.setenv("ADC_LOG_LEVEL", "debug")
    config = get_limits_config()
    assert config.coeff_cap == 5
    assert config.jobs == 4
    assert config.numeric_log_level == logging.DEBUG


@pytest.mark.parametrize(
    "variable, value",
    [("ADC_COEFF_CAP", "0"), ("ADC_TRUNC_CAP", "three"), ("ADC_LOG_LEVEL", "LOUD")],
)
def test_rejects_bad_values(monkeypatch: pytest.MonkeyPatch, variable: str, value: str) -> None:
    monkeypatch.setenv(variable, value)
    with pytest.raises(AdcInputError) as excinfo:
        get_limits_config()
    assert excinfo.value.field_path == variable
    assert str(excinfo.value).startswith(f"{variable}: ")
