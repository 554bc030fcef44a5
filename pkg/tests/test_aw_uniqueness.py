import pytest

from adc_toolkit.aw_uniqueness import aw_uniqueness_oracle
from adc_toolkit.errors import CapExceededError


def test_level_zero_is_forced_by_the_constant_condition() -> None:
    result = aw_uniqueness_oracle(0)
    assert result.report.ok
    assert result.families_per_level == {0: 1}


def test_level_one_alone_leaves_two_families() -> None:
    result = aw_uniqueness_oracle(1)
    assert result.families_per_level[1] == 2
    assert len(result.level_one_candidates) == 2
    assert result.report.failed_checks() == ["unique_level_1"]


def test_level_two_eliminates_the_alternative() -> None:
    result = aw_uniqueness_oracle(2)
    assert result.report.ok, result.report.violations[:3]
    assert result.families_per_level == {0: 1, 1: 2, 2: 1}
    assert result.report.checks["alternative_eliminated"]
    assert result.to_dict()["families_per_level"] == {"0": 1, "1": 2, "2": 1}


@pytest.mark.parametrize("n_max", [-1, 3])
def test_search_level_is_bounded(n_max: int) -> None:
    with pytest.raises(CapExceededError):
        aw_uniqueness_oracle(n_max)
