import json
from pathlib import Path
from typing import Any, Callable, Iterator

import pytest

from adc_toolkit.complexes import build_complex
from adc_toolkit.models import AdcComplex

LIMIT_VARIABLES = ("ADC_DEGREE_CAP", "ADC_COEFF_CAP", "ADC_TRUNC_CAP", "ADC_JOBS", "ADC_LOG_LEVEL")


@pytest.fixture(autouse=True)
def clean_limits(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    for variable in LIMIT_VARIABLES:
        monkeypatch.delenv(variable, raising=False)
    yield


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], str]:
    def write(name: str, data: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data, ensure_ascii=False), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def globe() -> AdcComplex:
    """Two parallel edges x, y from a to b and a 2-cell z: x ⇒ y."""
    return build_complex(
        "globe",
        [["a", "b"], ["x", "y"], ["z"]],
        {"x": {"b": 1, "a": -1}, "y": {"b": 1, "a": -1}, "z": {"y": 1, "x": -1}},
        {"a": 1, "b": 1},
    )


@pytest.fixture
def loop() -> AdcComplex:
    """Edges a → b and b → a: unital but not strongly loop-free."""
    return build_complex(
        "loop",
        [["a", "b"], ["x", "y"]],
        {"x": {"b": 1, "a": -1}, "y": {"a": 1, "b": -1}},
        {"a": 1, "b": 1},
    )


@pytest.fixture
def heavy_point() -> AdcComplex:
    """A single vertex with augmentation 2, so its atom is not unital."""
    return build_complex("heavy", [["p"]], {}, {"p": 2})


@pytest.fixture
def broken() -> AdcComplex:
    """d(z) = x is not a cycle, so d∘d ≠ 0."""
    return build_complex(
        "broken",
        [["a", "b"], ["x"], ["z"]],
        {"x": {"b": 1, "a": -1}, "z": {"x": 1}},
        {"a": 1, "b": 1},
    )
