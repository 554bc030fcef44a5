from typing import Any, Callable

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import (
    COEFFICIENT_GUARD,
    ChainElement,
    SimplexMap,
    ValidationReport,
    Verdict,
    final_inclusion,
    initial_inclusion,
)


@st.composite
def simplex_maps(draw: Callable[..., Any], source: int, target: int) -> SimplexMap:
    values = draw(st.lists(st.integers(0, target), min_size=source + 1, max_size=source + 1))
    return SimplexMap(source, target, tuple(sorted(values)))


@st.composite
def composable_triples(draw: Callable[..., Any]) -> tuple:
    a, b, c, d = (draw(st.integers(0, 4)) for _ in range(4))
    return draw(simplex_maps(a, b)), draw(simplex_maps(b, c)), draw(simplex_maps(c, d))


chains = st.dictionaries(st.sampled_from(["a", "b", "c", "d"]), st.integers(-5, 5)).map(
    lambda coefficients: ChainElement.of(1, coefficients)
)


class TestChainElement:
    def test_of_sums_repeated_ids_and_drops_zeros(self) -> None:
        x = ChainElement.of(0, [("a", 2), ("b", 1), ("a", -2)])
        assert x.terms == (("b", 1),)

    def test_degree_mismatch_is_an_input_error(self) -> None:
        with pytest.raises(AdcInputError):
            ChainElement.generator(0, "a") + ChainElement.generator(1, "x")

    def test_guard_rejects_huge_coefficients(self) -> None:
        with pytest.raises(CapExceededError):
            ChainElement.of(0, {"a": COEFFICIENT_GUARD})

    def test_positivity(self) -> None:
        assert ChainElement.of(0, {"a": 2, "b": 1}).is_positive()
        assert not ChainElement.of(0, {"a": 2, "b": -1}).is_positive()

    @given(chains, chains)
    def test_addition_commutes(self, x: ChainElement, y: ChainElement) -> None:
        assert x + y == y + x

    @given(chains)
    def test_subtracting_itself_is_zero(self, x: ChainElement) -> None:
        assert (x - x).is_zero()


class TestSimplexMap:
    def test_rejects_non_monotone_values(self) -> None:
        with pytest.raises(AdcInputError):
            SimplexMap(1, 1, (1, 0))

    def test_face_and_degeneracy(self) -> None:
        assert SimplexMap.face(2, 1).values == (0, 2)
        assert SimplexMap.degeneracy(1, 0).values == (0, 0, 1)

    def test_all_maps_count(self) -> None:
        # monotone maps [2] -> [2]
        assert len(SimplexMap.all_maps(2, 2)) == 10

    def test_inclusions_concatenate_to_the_identity(self) -> None:
        assert initial_inclusion(1, 2).values + final_inclusion(1, 2).values == tuple(range(5))

    @given(composable_triples())
    def test_composition_is_associative(self, triple: tuple) -> None:
        f, g, h = triple
        assert h.compose(g.compose(f)) == h.compose(g).compose(f)

    @given(st.integers(0, 4).flatmap(lambda m: st.integers(0, 4).flatmap(lambda n: simplex_maps(m, n))))
    def test_dual_is_an_involution(self, f: SimplexMap) -> None:
        assert f.dual().dual() == f

    @given(st.integers(0, 3).flatmap(lambda m: st.integers(0, 3).flatmap(lambda n: simplex_maps(m, n))))
    def test_identity_is_neutral(self, f: SimplexMap) -> None:
        assert f.compose(SimplexMap.identity(f.source_dim)) == f
        assert SimplexMap.identity(f.target_dim).compose(f) == f

    def test_concat_of_identities(self) -> None:
        assert SimplexMap.identity(1).concat(SimplexMap.identity(0)) == SimplexMap.identity(2)


class TestReports:
    def test_fail_marks_check_and_keeps_witness(self) -> None:
        report = ValidationReport("thing")
        report.passed("d_squared")
        report.fail("d_squared", "z", "d(d(z)) = a")
        assert not report.ok
        assert report.failed_checks() == ["d_squared"]
        assert str(report.witness("d_squared")) == "d_squared at z (d(d(z)) = a)"

    def test_extend_prefixes_checks(self) -> None:
        inner = ValidationReport("inner")
        inner.fail("positive", "x")
        outer = ValidationReport("outer")
        outer.extend(inner, prefix="f.")
        assert outer.checks == {"f.positive": False}
        assert outer.violations[0].check == "f.positive"

    def test_verdict_exit_codes(self) -> None:
        verdict = Verdict("demo")
        verdict.record("a", True)
        assert verdict.exit_code == 0
        verdict.record("b", False, "here")
        assert verdict.exit_code == 1
        assert verdict.witnesses == {"b": "here"}

    def test_verdict_absorbs_input_errors(self) -> None:
        report = ValidationReport("bad")
        report.input_error("unknown id")
        verdict = Verdict("demo")
        verdict.absorb(report)
        assert not verdict.passed
        assert verdict.witnesses["input"] == "unknown id"

    def test_verdict_dict_without_timing(self) -> None:
        verdict = Verdict("demo", timing_seconds=1.5)
        assert "timing_seconds" not in verdict.to_dict(include_timing=False)
        assert verdict.to_dict()["timing_seconds"] == 1.5
