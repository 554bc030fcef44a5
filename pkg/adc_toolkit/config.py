"""Configuration management for the ADC toolkit."""

import os
import logging
from dataclasses import dataclass
from dotenv import load_dotenv

from adc_toolkit.errors import AdcInputError

load_dotenv()


@dataclass(frozen=True)
class LimitsConfig:
    """Caps and defaults shared by the library and the CLI."""

    degree_cap: int = 6
    coeff_cap: int = 3
    trunc_cap: int = 6
    jobs: int = 1
    log_level: str = "WARNING"

    @property
    def numeric_log_level(self) -> int:
        """Get the logging module level for log_level."""
        return int(getattr(logging, self.log_level, logging.WARNING))


def _read_int(variable: str, default: int, minimum: int) -> int:
    raw = os.getenv(variable)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise AdcInputError(f"expected an integer, got {raw!r}", field_path=variable)
    if value < minimum:
        raise AdcInputError(f"must be >= {minimum}, got {value}", field_path=variable)
    return value


def get_limits_config() -> LimitsConfig:
    """Load caps from environment variables (and a .env file if present)."""
    log_level = os.getenv("ADC_LOG_LEVEL", "WARNING").strip().upper()
    if log_level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise AdcInputError(f"unknown log level {log_level!r}", field_path="ADC_LOG_LEVEL")
    return LimitsConfig(
        degree_cap=_read_int("ADC_DEGREE_CAP", 6, 0),
        coeff_cap=_read_int("ADC_COEFF_CAP", 3, 1),
        trunc_cap=_read_int("ADC_TRUNC_CAP", 6, 0),
        jobs=_read_int("ADC_JOBS", 1, 1),
        log_level=log_level,
    )
