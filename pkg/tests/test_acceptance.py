import pytest

from adc_toolkit.acceptance import CRITERIA, run_acceptance
from adc_toolkit.errors import AdcInputError
from adc_toolkit.models import EnumerationBudget


@pytest.mark.parametrize("k", [3, 6])
def test_quick_criteria(k: int) -> None:
    verdict = run_acceptance([k])
    assert verdict.passed, verdict.witnesses
    assert verdict.exit_code == 0
    assert verdict.metadata["criteria"] == [k]


def test_checks_are_prefixed_by_criterion() -> None:
    verdict = run_acceptance([3])
    assert "03.retraction_identities" in verdict.checks
    assert all(name.startswith("03.") for name in verdict.checks)


def test_unknown_criterion() -> None:
    with pytest.raises(AdcInputError) as excinfo:
        run_acceptance([12])
    assert excinfo.value.field_path == "criteria"


@pytest.mark.slow
def test_full_battery() -> None:
    verdict = run_acceptance(budget=EnumerationBudget(3))
    assert verdict.passed, verdict.witnesses
    assert verdict.metadata["criteria"] == sorted(CRITERIA)
